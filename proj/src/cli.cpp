// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "icalloc/document.hpp"
#include "icalloc/errors.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/steiner.hpp"
#include "icalloc/sweep.hpp"
#include "icalloc/verify.hpp"

namespace icalloc::cli {

namespace {

using json = nlohmann::ordered_json;

// Writes to --out when given, else to the command's stdout stream.
int emit(const std::string& path, std::ostream& out, std::ostream& err,
         const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(out);
        return kOk;
    }
    std::ofstream file(path);
    if (!file) {
        err << "error: cannot open " << path << " for writing\n";
        return kIoError;
    }
    write(file);
    file.flush();
    if (!file) {
        err << "error: failed writing " << path << "\n";
        return kIoError;
    }
    return kOk;
}

void warn_regime(const ICParams& p, std::ostream& err) {
    if (!p.in_regime) {
        err << "warning: N=" << p.N << " exceeds the regime limit " << format_real(regime_limit(p.n, p.d))
            << " for n=" << p.n << ", d=" << p.d << "; the 4e bound is reported but not guaranteed\n";
    }
}

int document_exit(const AllocationDocument& doc) {
    if (!doc.verdict.ok) return kCheckFailed;
    if (doc.costs.in_regime && !doc.theorem1.pass) return kCheckFailed;
    return kOk;
}

struct ConstructArgs {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t N = 0;
    bool tuples = false;
    bool no_tuples = false;
    std::string out;
    std::string format = "json";
    std::vector<double> makespan;
};

TupleListing listing(bool always, bool never) {
    if (always) return TupleListing::Always;
    if (never) return TupleListing::Never;
    return TupleListing::Auto;
}

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
    Construction c = construct_ic(a.n, a.d, a.N);
    warn_regime(c.params, err);
    AllocationDocument doc = make_document(std::move(c.allocation), "ic", c.params);
    if (a.makespan.size() == 3) {
        doc.costs.makespan_estimate =
            makespan_estimate(doc.allocation, a.makespan[0], a.makespan[1], a.makespan[2]);
    }
    if (!doc.verdict.ok) err << "error: verification failed: " << doc.verdict.failure->message << "\n";

    const int written = emit(a.out, out, err, [&](std::ostream& os) {
        if (a.format == "csv") {
            write_worker_csv(os, doc);
        } else {
            os << to_json(doc, listing(a.tuples, a.no_tuples)).dump(2) << "\n";
        }
    });
    return written != kOk ? written : document_exit(doc);
}

int cmd_bounds(std::uint32_t n, std::uint32_t d, std::uint64_t N, std::ostream& out) {
    json j;
    j["n"] = n;
    j["d"] = d;
    j["N"] = N;
    j["lb_real"] = lower_bound_real(n, d, N);
    j["lb_packing"] = lower_bound_packing(n, d, N);
    j["theorem1_bound"] = theorem1_bound(n, d, N);
    j["regime_limit"] = regime_limit(n, d);
    j["in_regime"] = in_regime(n, d, N);
    out << j.dump(2) << "\n";
    return kOk;
}

struct SteinerArgs {
    std::string path;
    bool fano = false;
    bool to_allocation = false;
    bool tuples = false;
    std::string out;
};

int cmd_steiner(const SteinerArgs& a, std::ostream& out, std::ostream& err) {
    if (a.path.empty() == !a.fano) {
        err << "error: give either a block file or --fano\n";
        return kIoError;
    }
    const SteinerSystem sys = a.fano ? fano_plane() : load_steiner_file(a.path);
    const SteinerVerdict verdict = check_steiner(sys);
    const DivisibilityResult div = divisibility_conditions(sys.t, sys.k, sys.v);

    json j;
    j["valid"] = verdict.valid;
    j["t"] = sys.t;
    j["k"] = sys.k;
    j["v"] = sys.v;
    j["blocks"] = sys.blocks.size();
    j["divisibility_pass"] = div.pass;
    if (div.violated_at) j["divisibility_violated_at"] = *div.violated_at;
    if (verdict.counterexample) {
        j["counterexample"] = verdict.counterexample->to_vector();
        j["counterexample_coverage"] = verdict.counterexample_coverage;
        json un = json::array();
        for (const auto& s : verdict.uncovered) un.push_back(s.to_vector());
        json over = json::array();
        for (const auto& s : verdict.overcovered) over.push_back(s.to_vector());
        j["uncovered"] = std::move(un);
        j["overcovered"] = std::move(over);
        err << "invalid: t-subset " << to_string(*verdict.counterexample) << " is covered "
            << verdict.counterexample_coverage << " times\n";
    }

    int status = verdict.valid ? kOk : kCheckFailed;
    if (a.to_allocation && verdict.valid) {
        AllocationDocument doc = make_document(steiner_to_allocation(sys), "steiner");
        doc.steiner = SteinerSystem{sys.t, sys.k, sys.v, {}};
        j["allocation"] = to_json(doc, listing(a.tuples, false));
        if (document_exit(doc) != kOk) status = kCheckFailed;
    }
    const int written = emit(a.out, out, err, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    return written != kOk ? written : status;
}

struct SweepArgs {
    std::string n;
    std::string d;
    std::string N;
    bool in_regime_only = false;
    bool oracle = false;
    std::uint64_t oracle_budget = 2'000'000;
    std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    SweepSpec spec;
    spec.n = AxisSpec::parse(a.n, false);
    spec.d = AxisSpec::parse(a.d, false);
    spec.N = AxisSpec::parse(a.N, true);
    spec.in_regime_only = a.in_regime_only;
    spec.include_oracle = a.oracle;
    spec.oracle_budget = a.oracle_budget;

    const auto rows = run_sweep(spec);
    int status = kOk;
    for (const auto& r : rows) {
        if (!r.error.empty()) continue;
        if (!r.verify_ok || (r.in_regime && !r.theorem1_pass)) status = kCheckFailed;
    }
    const int written =
        emit(a.out, out, err, [&](std::ostream& os) { write_sweep_csv(os, rows, a.oracle); });
    return written != kOk ? written : status;
}

int cmd_compare(std::uint32_t n, std::uint32_t d, std::uint64_t N, std::uint64_t budget,
                std::ostream& out) {
    const CompareRecord rec = compare(n, d, N, budget);
    json j;
    j["n"] = rec.n;
    j["d"] = rec.d;
    j["N"] = rec.N;
    if (rec.pi_ic) {
        j["pi_ic"] = *rec.pi_ic;
    } else {
        j["pi_ic"] = nullptr;
        j["ic_error"] = rec.ic_error;
    }
    j["pi_star"] = rec.pi_star ? json(*rec.pi_star) : json(nullptr);
    j["oracle_status"] = to_string(rec.oracle_status);
    j["oracle_nodes"] = rec.oracle_nodes;
    j["lb_packing"] = rec.lb_packing;
    j["lb_real"] = rec.lb_real;
    j["ratio"] = rec.ratio ? json(*rec.ratio) : json(nullptr);
    out << j.dump(2) << "\n";
    return kOk;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot open " << path << "\n";
        return kIoError;
    }
    const AllocationDocument doc = parse_document(in);
    if (!doc.has_tuples) {
        err << "error: document carries no tuple lists; re-run construct with --tuples\n";
        return kIoError;
    }
    const Verdict v = verify_partition(doc.allocation);
    const CostReport report = cost_report(doc.allocation);
    json j;
    j["ok"] = v.ok;
    if (v.failure) {
        j["failure"] = v.failure->message;
        err << "verification failed: " << v.failure->message << "\n";
    }
    j["pi"] = report.pi;
    j["delta"] = report.delta.to_string();
    j["pi_matches_document"] = report.pi == doc.costs.pi;
    j["delta_matches_document"] = report.delta == doc.costs.delta;
    out << j.dump(2) << "\n";
    const bool consistent = report.pi == doc.costs.pi && report.delta == doc.costs.delta;
    return v.ok && consistent ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interweaved-clique task and file allocation"};
    app.name("icalloc");
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build, verify and cost an allocation");
    construct->add_option("n", ca.n, "number of files")->required();
    construct->add_option("d", ca.d, "subfunction degree")->required();
    construct->add_option("N", ca.N, "number of workers")->required();
    construct->add_flag("--tuples", ca.tuples, "always include full tuple lists");
    construct->add_flag("--no-tuples", ca.no_tuples, "never include tuple lists");
    construct->add_option("--out", ca.out, "output file (default stdout)");
    construct->add_option("--format", ca.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    construct->add_option("--makespan", ca.makespan, "file size, link rate, task time")
        ->expected(3);

    std::uint32_t bn = 0, bd = 0;
    std::uint64_t bN = 0;
    auto* bounds = app.add_subcommand("bounds", "Lower bounds and the 4e bound");
    bounds->add_option("n", bn)->required();
    bounds->add_option("d", bd)->required();
    bounds->add_option("N", bN)->required();

    SteinerArgs sa;
    auto* steiner = app.add_subcommand("steiner", "Validate a Steiner block file");
    steiner->add_option("path", sa.path, "block file");
    steiner->add_flag("--fano", sa.fano, "use the built-in Fano plane");
    steiner->add_flag("--to-allocation", sa.to_allocation, "emit the derived allocation");
    steiner->add_flag("--tuples", sa.tuples, "always include full tuple lists");
    steiner->add_option("--out", sa.out, "output file (default stdout)");

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "CSV sweep over an (n, d, N) grid");
    sweep->add_option("--n", wa.n, "file counts, e.g. 20:60:10")->required();
    sweep->add_option("--d", wa.d, "degrees, e.g. 2,3")->required();
    sweep->add_option("--N", wa.N, "worker counts; R = regime limit")->required();
    sweep->add_flag("--in-regime-only", wa.in_regime_only, "skip points outside the regime");
    sweep->add_flag("--oracle", wa.oracle, "append exact pi_star for n <= 12");
    sweep->add_option("--oracle-budget", wa.oracle_budget, "oracle node budget per point");
    sweep->add_option("--out", wa.out, "output file (default stdout)");

    std::uint32_t cn = 0, cd = 0;
    std::uint64_t cN = 0;
    std::uint64_t budget = 2'000'000;
    auto* cmp = app.add_subcommand("compare", "IC design versus the exact optimum");
    cmp->add_option("n", cn)->required();
    cmp->add_option("d", cd)->required();
    cmp->add_option("N", cN)->required();
    cmp->add_option("--oracle-budget", budget, "oracle node budget")->check(CLI::PositiveNumber);

    std::string doc_path;
    auto* verify = app.add_subcommand("verify", "Re-verify a saved allocation document");
    verify->add_option("document", doc_path)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kIoError;
    }

    try {
        if (*construct) return cmd_construct(ca, out, err);
        if (*bounds) return cmd_bounds(bn, bd, bN, out);
        if (*steiner) return cmd_steiner(sa, out, err);
        if (*sweep) return cmd_sweep(wa, out, err);
        if (*cmp) return cmd_compare(cn, cd, cN, budget, out);
        if (*verify) return cmd_verify(doc_path, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return *steiner || *verify || *sweep ? kIoError : kInfeasible;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kIoError;
}

}  // namespace icalloc::cli

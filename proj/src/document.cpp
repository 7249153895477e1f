// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/document.hpp"

#include <istream>
#include <ostream>

#include "icalloc/errors.hpp"

namespace icalloc {

using json = nlohmann::ordered_json;

AllocationDocument make_document(Allocation alloc, std::string source, std::optional<ICParams> ic) {
    AllocationDocument doc;
    doc.source = std::move(source);
    doc.ic = std::move(ic);
    doc.verdict = verify_partition(alloc);
    doc.costs = cost_report(alloc);
    doc.theorem1 = theorem1_check(doc.costs);
    doc.tuple_counts = doc.costs.per_worker_tasks;
    doc.allocation = std::move(alloc);
    doc.has_tuples = true;
    return doc;
}

namespace {

json params_json(const AllocationDocument& doc) {
    const Allocation& a = doc.allocation;
    json p;
    p["n"] = a.n;
    p["d"] = a.d;
    p["N"] = a.workers();
    if (doc.ic) {
        const ICParams& ic = *doc.ic;
        p["f"] = ic.f;
        p["Nprime"] = ic.n_prime;
        p["case"] = to_string(ic.kind);
        if (ic.kind == CaseKind::Divisible) {
            p["s"] = ic.s;
        } else {
            p["s0"] = ic.s0;
        }
        p["g"] = ic.g;
        p["excluded"] = ic.excluded();
        p["in_regime"] = ic.in_regime;
    }
    if (doc.steiner) {
        p["t"] = doc.steiner->t;
        p["k"] = doc.steiner->k;
        p["v"] = doc.steiner->v;
    }
    return p;
}

json verdict_json(const Verdict& v) {
    json j;
    j["ok"] = v.ok;
    if (v.failure) {
        json f;
        f["kind"] = to_string(v.failure->kind);
        if (v.failure->tuple) f["tuple"] = v.failure->tuple->to_vector();
        f["workers"] = v.failure->workers;
        f["message"] = v.failure->message;
        j["failure"] = std::move(f);
    }
    return j;
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(0, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace

json to_json(const AllocationDocument& doc, TupleListing tuples) {
    const Allocation& a = doc.allocation;
    bool with_tuples = doc.has_tuples;
    if (tuples == TupleListing::Never) with_tuples = false;
    if (tuples == TupleListing::Auto && a.total_tuples() > kInlineTupleLimit) with_tuples = false;

    json j;
    j["source"] = doc.source;
    j["ok"] = doc.verdict.ok;
    j["params"] = params_json(doc);

    json groups = json::array();
    for (std::size_t b = 0; b < a.workers(); ++b) {
        json g;
        g["worker"] = b + 1;
        g["files"] = a.file_sets[b];
        g["tuple_count"] = b < doc.tuple_counts.size() ? doc.tuple_counts[b] : a.groups[b].size();
        if (with_tuples) {
            json list = json::array();
            for (const auto& t : a.groups[b]) list.push_back(t.to_vector());
            g["tuples"] = std::move(list);
        }
        groups.push_back(std::move(g));
    }
    j["groups"] = std::move(groups);

    const CostReport& c = doc.costs;
    json costs;
    costs["pi"] = c.pi;
    costs["delta"] = c.delta.to_string();
    costs["delta_float"] = c.delta.to_double();
    costs["lb_real"] = c.lb_real;
    costs["lb_packing"] = c.lb_packing;
    costs["ratio_real"] = c.ratio_real;
    costs["theorem1_bound"] = c.theorem1_bound;
    costs["in_regime"] = c.in_regime;
    costs["theorem1_pass"] = doc.theorem1.pass;
    if (c.makespan_estimate) costs["makespan_estimate"] = *c.makespan_estimate;
    j["costs"] = std::move(costs);
    j["verify"] = verdict_json(doc.verdict);
    return j;
}

AllocationDocument document_from_json(const json& j) {
    AllocationDocument doc;
    doc.source = field<std::string>(j, "source");
    const json& p = j.contains("params") ? j.at("params") : json();
    const auto n = field<std::uint32_t>(p, "n");
    const auto d = field<std::uint32_t>(p, "d");
    const auto N = field<std::uint64_t>(p, "N");

    if (p.contains("f")) {
        ICParams ic;
        ic.n = n;
        ic.d = d;
        ic.N = N;
        ic.f = field<std::uint32_t>(p, "f");
        ic.n_prime = field<std::uint64_t>(p, "Nprime");
        const auto kind = field<std::string>(p, "case");
        if (kind == "divisible") {
            ic.kind = CaseKind::Divisible;
            ic.s = field<std::uint32_t>(p, "s");
        } else if (kind == "general") {
            ic.kind = CaseKind::General;
            ic.s0 = field<std::uint32_t>(p, "s0");
        } else {
            throw ParseError(0, "unknown case '" + kind + "'");
        }
        ic.g = field<std::uint32_t>(p, "g");
        ic.in_regime = field<bool>(p, "in_regime");
        doc.ic = ic;
    }
    if (p.contains("t")) {
        SteinerSystem s;
        s.t = field<std::uint32_t>(p, "t");
        s.k = field<std::uint32_t>(p, "k");
        s.v = field<std::uint32_t>(p, "v");
        doc.steiner = s;
    }

    const json& groups = j.contains("groups") ? j.at("groups") : json();
    if (!groups.is_array()) throw ParseError(0, "missing 'groups' array");
    if (groups.size() != N) throw ParseError(0, "params.N disagrees with the number of groups");

    doc.allocation.n = n;
    doc.allocation.d = d;
    doc.has_tuples = true;
    for (std::size_t b = 0; b < groups.size(); ++b) {
        const json& g = groups[b];
        if (field<std::uint64_t>(g, "worker") != b + 1) {
            throw ParseError(0, "groups must be listed by worker id starting at 1");
        }
        doc.allocation.file_sets.push_back(field<FileSet>(g, "files"));
        doc.tuple_counts.push_back(field<std::uint64_t>(g, "tuple_count"));
        TupleGroup tg;
        if (g.contains("tuples")) {
            for (const auto& t : g.at("tuples")) {
                try {
                    tg.emplace_back(std::span<const FileIndex>(t.get<std::vector<FileIndex>>()));
                } catch (const nlohmann::json::exception& e) {
                    throw ParseError(0, std::string("bad tuple: ") + e.what());
                } catch (const InputError& e) {
                    throw ParseError(0, std::string("bad tuple: ") + e.what());
                }
            }
        } else {
            doc.has_tuples = false;
        }
        doc.allocation.groups.push_back(std::move(tg));
    }

    const json& c = j.contains("costs") ? j.at("costs") : json();
    doc.costs.n = n;
    doc.costs.d = d;
    doc.costs.N = N;
    for (const auto& fs : doc.allocation.file_sets) doc.costs.per_worker_files.push_back(fs.size());
    doc.costs.per_worker_tasks = doc.tuple_counts;
    doc.costs.pi = field<std::uint64_t>(c, "pi");
    try {
        doc.costs.delta = Rational::parse(field<std::string>(c, "delta"));
    } catch (const InputError& e) {
        throw ParseError(0, e.what());
    }
    doc.costs.lb_real = field<double>(c, "lb_real");
    doc.costs.lb_packing = field<std::uint32_t>(c, "lb_packing");
    doc.costs.ratio_real = field<double>(c, "ratio_real");
    doc.costs.theorem1_bound = field<double>(c, "theorem1_bound");
    doc.costs.in_regime = field<bool>(c, "in_regime");
    if (c.contains("makespan_estimate")) doc.costs.makespan_estimate = field<double>(c, "makespan_estimate");
    doc.theorem1 = {field<bool>(c, "theorem1_pass"), doc.costs.in_regime, doc.costs.theorem1_bound,
                    doc.costs.pi};

    const json& v = j.contains("verify") ? j.at("verify") : json();
    doc.verdict.ok = field<bool>(v, "ok");
    if (!doc.verdict.ok && v.contains("failure")) {
        PartitionFailure f{FailureKind::ShapeMismatch, std::nullopt, {}, ""};
        f.message = field<std::string>(v.at("failure"), "message");
        doc.verdict.failure = f;
    }
    return doc;
}

AllocationDocument parse_document(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    return document_from_json(j);
}

void write_worker_csv(std::ostream& out, const AllocationDocument& doc) {
    const Allocation& a = doc.allocation;
    out << "worker,file_count,tuple_count,files\n";
    for (std::size_t b = 0; b < a.workers(); ++b) {
        out << b + 1 << ',' << a.file_sets[b].size() << ','
            << (b < doc.tuple_counts.size() ? doc.tuple_counts[b] : a.groups[b].size()) << ',';
        for (std::size_t i = 0; i < a.file_sets[b].size(); ++i) {
            if (i) out << ' ';
            out << a.file_sets[b][i];
        }
        out << '\n';
    }
}

}  // namespace icalloc

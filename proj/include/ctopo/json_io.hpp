#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ctopo/complex.hpp"
#include "ctopo/concurrence.hpp"
#include "ctopo/errors.hpp"
#include "ctopo/homology.hpp"
#include "ctopo/pipeline.hpp"
#include "ctopo/synthetic.hpp"

namespace ctopo {

using Json = nlohmann::ordered_json;

// ---- complexes --------------------------------------------------------------

/// {"vertices": [names], "facets": [[names]]}, names sorted within a facet.
inline Json complex_to_json(const SimplicialComplex& x) {
    Json vertices = Json::array();
    for (VertexId v : x.vertices()) vertices.push_back(x.label(v));
    return Json{{"vertices", std::move(vertices)}, {"facets", x.labeled_facets()}};
}

struct ParsedComplex {
    SimplicialComplex complex;
    std::size_t listed_facets = 0;
    /// Listed facets that were not maximal (or were repeated) and were
    /// absorbed by the closure.
    std::size_t absorbed = 0;
    std::map<std::string, VertexId> ids;
};

/// Vertices are numbered in listing order inside namespace `ns`. A listed
/// vertex that appears in no facet becomes an isolated point.
inline ParsedComplex complex_from_json(const Json& j, Namespace ns = Namespace::A) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("facets") || !j["vertices"].is_array() ||
        !j["facets"].is_array())
        throw SpecError("complex JSON needs array members \"vertices\" and \"facets\"");

    ParsedComplex out;
    VertexLabels labels;
    for (const auto& name : j["vertices"]) {
        if (!name.is_string()) throw SpecError("vertex names must be strings");
        const auto s = name.get<std::string>();
        const VertexId id(ns, static_cast<std::uint32_t>(out.ids.size()));
        if (!out.ids.emplace(s, id).second) throw SpecError("vertex '" + s + "' listed twice");
        labels.emplace(id, s);
    }

    std::vector<Simplex> generators;
    std::vector<char> used(out.ids.size(), 0);
    for (const auto& facet : j["facets"]) {
        if (!facet.is_array() || facet.empty()) throw SpecError("each facet must be a non-empty array");
        std::vector<VertexId> vs;
        for (const auto& name : facet) {
            if (!name.is_string()) throw SpecError("vertex names must be strings");
            auto it = out.ids.find(name.get<std::string>());
            if (it == out.ids.end())
                throw SpecError("facet uses undeclared vertex '" + name.get<std::string>() + "'");
            vs.push_back(it->second);
            used[it->second.index] = 1;
        }
        generators.emplace_back(std::move(vs));
    }
    out.listed_facets = generators.size();
    for (const auto& [name, id] : out.ids)
        if (!used[id.index]) generators.push_back(Simplex{id});

    out.complex = SimplicialComplex::closure(generators, std::move(labels));
    const std::size_t isolated = generators.size() - out.listed_facets;
    out.absorbed = out.listed_facets + isolated - out.complex.facets().size();
    return out;
}

// ---- persistence --------------------------------------------------------------

inline Json intervals_to_json(const PersistenceIntervals& intervals,
                              const std::function<std::string(VertexId)>& name,
                              bool with_representatives) {
    Json out = Json::array();
    for (const auto& iv : intervals) {
        Json e{{"dim", iv.dim}, {"birth", iv.birth}};
        if (iv.death) e["death"] = *iv.death;
        else e["death"] = "inf";
        if (with_representatives && iv.representative) {
            Json rep = Json::array();
            for (const Simplex& s : *iv.representative) {
                Json names = Json::array();
                for (VertexId v : s) names.push_back(name(v));
                rep.push_back(std::move(names));
            }
            e["representative"] = std::move(rep);
        }
        out.push_back(std::move(e));
    }
    return out;
}

// ---- pattern table --------------------------------------------------------------

/// {"A|B": count, ...}; names sorted within a key, all-zero rows under "".
inline Json pattern_table_to_json(const PatternTable& t, const VertexLabels& labels) {
    std::map<std::string, std::size_t> sorted;
    for (const auto& [pattern, count] : t.entries) {
        std::vector<std::string> names;
        for (VertexId v : pattern) names.push_back(labels.contains(v) ? labels.at(v) : default_label(v));
        std::sort(names.begin(), names.end());
        std::string key;
        for (std::size_t i = 0; i < names.size(); ++i) key += (i ? "|" : "") + names[i];
        sorted[key] += count;
    }
    if (t.zero_rows) sorted[""] = t.zero_rows;
    Json out = Json::object();
    for (const auto& [k, v] : sorted) out[k] = v;
    return out;
}

// ---- independence report ------------------------------------------------------

inline Json betti_to_json(const std::optional<BettiVector>& b) {
    if (!b) return nullptr;
    return b->per_dim;
}

inline Json frame_to_json(const FrameReport& r, const VertexLabels& labels, bool with_representatives) {
    auto name = [&](VertexId v) { return labels.contains(v) ? labels.at(v) : default_label(v); };
    Json j{{"frame", r.frame}, {"status", to_string(r.status)}};
    if (!r.message.empty()) j["message"] = r.message;
    j["empty_a"] = r.empty_a;
    j["empty_b"] = r.empty_b;
    j["betti_m"] = betti_to_json(r.betti_m);
    j["betti_k"] = betti_to_json(r.betti_k);
    j["betti_l"] = betti_to_json(r.betti_l);
    j["betti_join"] = betti_to_json(r.betti_join);
    j["kunneth_join_prediction_reduced"] = betti_to_json(r.kunneth_prediction);
    j["kunneth_agrees"] = r.kunneth_agrees;
    j["inclusion_ranks"] = r.inclusion_ranks;
    j["lifespan2_classes"] = intervals_to_json(r.lifespan2_classes, name, with_representatives);
    j["containment"] = {{"k_l_in_m", r.containment.k_l_in_m},
                        {"k_facets_mixed", r.containment.k_facets_mixed},
                        {"l_facets_mixed", r.containment.l_facets_mixed}};
    j["facets_m"] = r.facets_m;
    j["facets_join"] = r.facets_join;
    j["facet_ratio"] = r.facet_ratio;
    return j;
}

inline Json report_to_json(const IndependenceReport& r, bool with_representatives = false) {
    Json frames = Json::array();
    for (const auto& f : r.frames) frames.push_back(frame_to_json(f, r.labels, with_representatives));
    Json lifespans = Json::object();
    for (const auto& [dim, runs] : r.frequency_lifespans) {
        Json list = Json::array();
        for (const auto& [lo, hi] : runs) list.push_back({lo, hi});
        lifespans[std::to_string(dim)] = std::move(list);
    }
    return Json{{"grouping", {{"group_a", r.grouping.group_a}, {"group_b", r.grouping.group_b}}},
                {"frames", std::move(frames)},
                {"frequency_lifespans", std::move(lifespans)},
                {"summary",
                 {{"T", r.summary.T},
                  {"n", r.summary.n},
                  {"n_analyzed", r.summary.n_analyzed},
                  {"zero_rows", r.summary.zero_rows},
                  {"max_frame", r.summary.max_frame}}}};
}

// ---- generator specs -----------------------------------------------------------

namespace detail {

inline GroupSpec group_from_json(const Json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("names") || !j.contains("patterns"))
        throw SpecError(what + " needs \"names\" and \"patterns\"");
    GroupSpec g;
    try {
        g.names = j["names"].get<std::vector<std::string>>();
        for (const auto& p : j["patterns"])
            g.patterns.push_back({p.at("bits").get<std::string>(), p.at("p").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(what + ": " + e.what());
    }
    return g;
}

inline Json group_to_json(const GroupSpec& g) {
    Json patterns = Json::array();
    for (const auto& p : g.patterns) patterns.push_back({{"bits", p.bits}, {"p", p.p}});
    return Json{{"names", g.names}, {"patterns", std::move(patterns)}};
}

}  // namespace detail

/// {"groupA": {names, patterns: [{bits, p}]}, "groupB": {...}, "joint"?: [{a, b, p}]}.
/// Validated before returning.
inline JointSpec joint_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("groupA") || !j.contains("groupB"))
        throw SpecError("spec needs \"groupA\" and \"groupB\"");
    JointSpec s{detail::group_from_json(j["groupA"], "groupA"), detail::group_from_json(j["groupB"], "groupB"),
                std::nullopt};
    if (j.contains("joint")) {
        std::vector<JointPattern> joint;
        try {
            for (const auto& e : j["joint"])
                joint.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("p").get<double>()});
        } catch (const nlohmann::json::exception& e) {
            throw SpecError(std::string("joint: ") + e.what());
        }
        s.joint = std::move(joint);
    }
    s.validate();
    return s;
}

inline Json joint_spec_to_json(const JointSpec& s) {
    Json j{{"groupA", detail::group_to_json(s.a)}, {"groupB", detail::group_to_json(s.b)}};
    if (s.joint) {
        Json joint = Json::array();
        for (const auto& e : *s.joint) joint.push_back({{"a", e.bits_a}, {"b", e.bits_b}, {"p", e.p}});
        j["joint"] = std::move(joint);
    }
    return j;
}

}  // namespace ctopo

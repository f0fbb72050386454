#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ctopo/errors.hpp"
#include "ctopo/simplex.hpp"

namespace ctopo {

inline constexpr std::size_t default_simplex_budget = std::size_t{1} << 20;

using VertexLabels = std::map<VertexId, std::string>;

/// Finite abstract simplicial complex. Immutable after construction; every
/// constructor produces a downward-closed set of non-empty simplices and
/// derives the facet list from it.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Smallest downward-closed complex containing every input simplex.
    /// Inputs need not be maximal. Throws MalformedSimplex for an empty
    /// input simplex and BudgetExceeded past `budget` simplices.
    static SimplicialComplex closure(std::span<const Simplex> generators,
                                     VertexLabels labels = {},
                                     std::size_t budget = default_simplex_budget) {
        std::unordered_set<Simplex, SimplexHash> seen;
        std::vector<Simplex> stack;
        for (const Simplex& g : generators) {
            if (g.empty()) throw MalformedSimplex("empty simplex cannot generate a complex");
            if (seen.insert(g).second) stack.push_back(g);
            while (!stack.empty()) {
                Simplex s = std::move(stack.back());
                stack.pop_back();
                for (Simplex& f : s.boundary_faces()) {
                    if (seen.contains(f)) continue;
                    seen.insert(f);
                    stack.push_back(std::move(f));
                }
                if (seen.size() > budget)
                    throw BudgetExceeded("closure exceeds simplex budget of " +
                                         std::to_string(budget));
            }
        }
        return SimplicialComplex(std::vector<Simplex>(seen.begin(), seen.end()), std::move(labels));
    }

    static SimplicialComplex closure(std::initializer_list<Simplex> generators,
                                     VertexLabels labels = {}) {
        return closure(std::span<const Simplex>(generators.begin(), generators.size()),
                       std::move(labels));
    }

    bool empty() const noexcept { return simplices_.empty(); }
    std::size_t size() const noexcept { return simplices_.size(); }
    int dimension() const noexcept {
        return simplices_.empty() ? -1 : simplices_.back().dim();
    }

    /// All simplices, sorted by (dimension, lexicographic vertex list).
    const std::vector<Simplex>& simplices() const noexcept { return simplices_; }

    std::span<const Simplex> simplices_of_dim(int d) const {
        if (d < 0 || d > dimension()) return {};
        return std::span<const Simplex>(simplices_).subspan(
            dim_offset_[d], dim_offset_[d + 1] - dim_offset_[d]);
    }

    std::size_t count(int d) const { return simplices_of_dim(d).size(); }

    /// Maximal simplices in lexicographic order.
    const std::vector<Simplex>& facets() const noexcept { return facets_; }

    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }

    bool contains(const Simplex& s) const { return index_.contains(s); }

    /// Position of `s` in simplices_of_dim(s.dim()).
    std::optional<std::size_t> index_in_dim(const Simplex& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second - dim_offset_[s.dim()];
    }

    const VertexLabels& labels() const noexcept { return labels_; }

    std::string label(VertexId v) const {
        auto it = labels_.find(v);
        return it == labels_.end() ? default_label(v) : it->second;
    }

    std::vector<std::string> labeled(const Simplex& s) const {
        std::vector<std::string> out;
        out.reserve(s.size());
        for (VertexId v : s) out.push_back(label(v));
        return out;
    }

    /// Facets as sorted name lists, sorted. Compares complexes whose vertex
    /// ids differ but whose labels agree.
    std::vector<std::vector<std::string>> labeled_facets() const {
        std::vector<std::vector<std::string>> out;
        for (const Simplex& f : facets_) {
            auto names = labeled(f);
            std::sort(names.begin(), names.end());
            out.push_back(std::move(names));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// First simplex of this complex (in dim-lex order) missing from `other`.
    std::optional<Simplex> first_missing_from(const SimplicialComplex& other) const {
        for (const Simplex& s : simplices_)
            if (!other.contains(s)) return s;
        return std::nullopt;
    }

    bool is_subcomplex_of(const SimplicialComplex& other) const {
        return !first_missing_from(other).has_value();
    }

    std::set<Namespace> namespaces() const {
        std::set<Namespace> out;
        for (VertexId v : vertices_) out.insert(v.ns);
        return out;
    }

    friend bool operator==(const SimplicialComplex& l, const SimplicialComplex& r) {
        return l.facets_ == r.facets_;
    }

private:
    SimplicialComplex(std::vector<Simplex> closed, VertexLabels labels)
        : simplices_(std::move(closed)) {
        std::sort(simplices_.begin(), simplices_.end(), Simplex::dim_lex_less);
        index_.reserve(simplices_.size());
        for (std::size_t i = 0; i < simplices_.size(); ++i) index_.emplace(simplices_[i], i);

        const int top = dimension();
        dim_offset_.assign(static_cast<std::size_t>(top + 2), 0);
        for (const Simplex& s : simplices_) ++dim_offset_[s.dim() + 1];
        for (int d = 0; d <= top; ++d) dim_offset_[d + 1] += dim_offset_[d];

        std::vector<char> covered(simplices_.size(), 0);
        for (const Simplex& s : simplices_)
            for (const Simplex& f : s.boundary_faces()) covered[index_.at(f)] = 1;
        for (std::size_t i = 0; i < simplices_.size(); ++i)
            if (!covered[i]) facets_.push_back(simplices_[i]);
        std::sort(facets_.begin(), facets_.end());

        for (const Simplex& s : simplices_of_dim(0)) vertices_.push_back(s[0]);
        for (VertexId v : vertices_) {
            auto it = labels.find(v);
            if (it != labels.end()) labels_.emplace(v, std::move(it->second));
        }
    }

    friend SimplicialComplex join(const SimplicialComplex&, const SimplicialComplex&, std::size_t);

    std::vector<Simplex> simplices_;
    std::vector<std::size_t> dim_offset_;
    std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
    std::vector<Simplex> facets_;
    std::vector<VertexId> vertices_;
    VertexLabels labels_;
};

/// { σ ∩ S : σ ∈ X, σ ∩ S ≠ ∅ }. Empty when S misses every vertex of X.
inline SimplicialComplex project(const SimplicialComplex& x, std::span<const VertexId> keep) {
    std::vector<VertexId> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const Simplex s = Simplex::from_sorted(std::move(sorted));

    std::vector<Simplex> generators;
    for (const Simplex& f : x.facets()) {
        Simplex cut = f.intersect(s);
        if (!cut.empty()) generators.push_back(std::move(cut));
    }
    return SimplicialComplex::closure(generators, x.labels());
}

/// Vertices of X lying in namespace `ns`.
inline std::vector<VertexId> vertices_in(const SimplicialComplex& x, Namespace ns) {
    std::vector<VertexId> out;
    for (VertexId v : x.vertices())
        if (v.ns == ns) out.push_back(v);
    return out;
}

/// K ∗ L: all σ ∪ τ with σ ∈ K ∪ {∅}, τ ∈ L ∪ {∅}, minus the empty simplex.
/// The inputs must use disjoint vertex namespaces.
inline SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l,
                              std::size_t budget = default_simplex_budget) {
    for (Namespace ns : k.namespaces())
        if (l.namespaces().contains(ns))
            throw DisjointnessError(std::string("join inputs share vertex namespace '") +
                                    namespace_prefix(ns) + "'");

    const std::size_t total = (k.size() + 1) * (l.size() + 1) - 1;
    if (total > budget)
        throw BudgetExceeded("join would hold " + std::to_string(total) +
                             " simplices, budget is " + std::to_string(budget));

    std::vector<Simplex> all;
    all.reserve(total);
    all.insert(all.end(), k.simplices().begin(), k.simplices().end());
    all.insert(all.end(), l.simplices().begin(), l.simplices().end());
    for (const Simplex& s : k.simplices())
        for (const Simplex& t : l.simplices()) all.push_back(s.join(t));

    VertexLabels labels = k.labels();
    labels.insert(l.labels().begin(), l.labels().end());
    return SimplicialComplex(std::move(all), std::move(labels));
}

namespace detail {

inline std::unordered_map<VertexId, std::size_t, VertexHash> order_positions(
    const SimplicialComplex& x, std::span<const VertexId> order) {
    std::unordered_map<VertexId, std::size_t, VertexHash> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
    if (pos.size() != order.size() || pos.size() != x.vertices().size())
        throw std::invalid_argument("vertex order must list each vertex of the complex once");
    for (VertexId v : x.vertices())
        if (!pos.contains(v))
            throw std::invalid_argument("vertex order is missing " + x.label(v));
    return pos;
}

// Appends every monotone lattice path from (0,0) to (a,b) as a simplex of
// product vertices.
inline void staircase(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                      std::size_t width, std::size_t i, std::size_t j,
                      std::vector<VertexId>& path, std::vector<Simplex>& out) {
    path.push_back(VertexId(Namespace::Product,
                            static_cast<std::uint32_t>(rows[i] * width + cols[j])));
    if (i + 1 == rows.size() && j + 1 == cols.size()) {
        std::vector<VertexId> sorted = path;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(Simplex::from_sorted(std::move(sorted)));
    } else {
        if (i + 1 < rows.size()) staircase(rows, cols, width, i + 1, j, path, out);
        if (j + 1 < cols.size()) staircase(rows, cols, width, i, j + 1, path, out);
    }
    path.pop_back();
}

}  // namespace detail

/// Staircase triangulation of |K| × |L|. For each facet pair σ × τ the top
/// cells are the maximal chains of the grid σ⁽⁰⁾ × τ⁽⁰⁾ under the
/// componentwise order induced by `order_k` and `order_l`. Product vertex
/// (u, v) gets id pos(u) · |L⁽⁰⁾| + pos(v).
inline SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l,
                                         std::span<const VertexId> order_k,
                                         std::span<const VertexId> order_l,
                                         std::size_t budget = default_simplex_budget) {
    const auto pos_k = detail::order_positions(k, order_k);
    const auto pos_l = detail::order_positions(l, order_l);
    const std::size_t width = order_l.size();

    auto positions = [](const Simplex& s, const auto& pos) {
        std::vector<std::size_t> out;
        for (VertexId v : s) out.push_back(pos.at(v));
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<Simplex> cells;
    std::vector<VertexId> path;
    for (const Simplex& s : k.facets()) {
        const auto rows = positions(s, pos_k);
        for (const Simplex& t : l.facets()) {
            detail::staircase(rows, positions(t, pos_l), width, 0, 0, path, cells);
            if (cells.size() > budget)
                throw BudgetExceeded("product triangulation exceeds simplex budget");
        }
    }

    VertexLabels labels;
    for (std::size_t i = 0; i < order_k.size(); ++i)
        for (std::size_t j = 0; j < order_l.size(); ++j)
            labels.emplace(VertexId(Namespace::Product, static_cast<std::uint32_t>(i * width + j)),
                           "(" + k.label(order_k[i]) + "," + l.label(order_l[j]) + ")");
    return SimplicialComplex::closure(cells, std::move(labels), budget);
}

/// Product triangulation with both vertex orders ascending by VertexId.
inline SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l,
                                         std::size_t budget = default_simplex_budget) {
    return product_complex(k, l, k.vertices(), l.vertices(), budget);
}

inline long long euler_characteristic(const SimplicialComplex& x) {
    long long chi = 0;
    for (int d = 0; d <= x.dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(x.count(d));
    return chi;
}

}  // namespace ctopo

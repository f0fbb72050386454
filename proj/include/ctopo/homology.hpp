#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctopo/complex.hpp"
#include "ctopo/errors.hpp"
#include "ctopo/gf2.hpp"
#include "ctopo/simplex.hpp"

namespace ctopo {

inline std::string format_simplex(const Simplex& s,
                                  const std::function<std::string(VertexId)>& name = default_label) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += name(s[i]);
    }
    return out + "}";
}

inline std::string format_simplex(const Simplex& s, const SimplicialComplex& x) {
    return format_simplex(s, [&](VertexId v) { return x.label(v); });
}

/// Z/2 Betti numbers indexed by dimension. Equality ignores trailing zeros,
/// so (1,0,0) == (1).
struct BettiVector {
    std::vector<std::int64_t> per_dim;
    bool reduced = false;

    std::int64_t operator[](std::size_t d) const { return d < per_dim.size() ? per_dim[d] : 0; }
    std::size_t size() const noexcept { return per_dim.size(); }

    BettiVector as_reduced() const {
        if (reduced) return *this;
        if (per_dim.empty() || per_dim[0] < 1)
            throw std::invalid_argument("reduced Betti numbers need a non-empty complex");
        BettiVector out{per_dim, true};
        out.per_dim[0] -= 1;
        return out;
    }

    BettiVector as_unreduced() const {
        if (!reduced) return *this;
        BettiVector out{per_dim, false};
        if (out.per_dim.empty()) out.per_dim.push_back(0);
        out.per_dim[0] += 1;
        return out;
    }

    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (std::size_t d = 0; d < per_dim.size(); ++d) chi += (d % 2 ? -1 : 1) * per_dim[d];
        return chi + (reduced ? 1 : 0);
    }

    friend bool operator==(const BettiVector& l, const BettiVector& r) {
        if (l.reduced != r.reduced) return false;
        const std::size_t n = std::max(l.size(), r.size());
        for (std::size_t d = 0; d < n; ++d)
            if (l[d] != r[d]) return false;
        return true;
    }
};

inline std::string to_string(const BettiVector& b) {
    std::string out;
    for (std::size_t d = 0; d < b.size(); ++d) {
        if (d) out += ' ';
        out += std::to_string(b.per_dim[d]);
    }
    return out;
}

/// Matrix of ∂_d from d-simplices to (d-1)-simplices, both indexed in
/// lexicographic order. Empty (zero columns) when X has no d-simplices;
/// ∂_0 has zero rows.
inline GF2Matrix boundary_matrix(const SimplicialComplex& x, int d) {
    if (d < 0) throw std::invalid_argument("boundary_matrix: negative dimension");
    const auto cells = x.simplices_of_dim(d);
    const std::size_t rows = d == 0 ? 0 : x.count(d - 1);
    std::vector<GF2Column> cols(cells.size());
    if (d > 0) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            for (const Simplex& f : cells[j].boundary_faces())
                cols[j].push_back(static_cast<std::uint32_t>(*x.index_in_dim(f)));
            std::sort(cols[j].begin(), cols[j].end());
        }
    }
    return GF2Matrix(rows, std::move(cols));
}

/// β_d = #d-simplices − rank ∂_d − rank ∂_{d+1}. Throws for reduced
/// homology of the empty complex.
inline BettiVector betti(const SimplicialComplex& x, bool reduced = false) {
    if (reduced && x.empty())
        throw std::invalid_argument("reduced homology of the empty complex is not defined here");
    const int top = x.dimension();
    std::vector<std::int64_t> rank(static_cast<std::size_t>(top + 2), 0);
    for (int d = 1; d <= top; ++d) rank[d] = static_cast<std::int64_t>(gf2_rank(boundary_matrix(x, d)));
    BettiVector out;
    for (int d = 0; d <= top; ++d)
        out.per_dim.push_back(static_cast<std::int64_t>(x.count(d)) - rank[d] - rank[d + 1]);
    return reduced ? out.as_reduced() : out;
}

struct FilteredSimplex {
    Simplex simplex;
    int level = 0;
};

/// Simplices in filtration order with their level labels.
class FiltrationOrder {
public:
    FiltrationOrder() = default;

    /// Takes the order as given; persistence() validates it.
    explicit FiltrationOrder(std::vector<FilteredSimplex> entries) : entries_(std::move(entries)) {}

    /// Every simplex of X, ordered by (level, dimension, lexicographic).
    static FiltrationOrder from_levels(const SimplicialComplex& x,
                                       const std::function<int(const Simplex&)>& level_of) {
        std::vector<FilteredSimplex> entries;
        entries.reserve(x.size());
        for (const Simplex& s : x.simplices()) entries.push_back({s, level_of(s)});
        std::stable_sort(entries.begin(), entries.end(),
                         [](const FilteredSimplex& l, const FilteredSimplex& r) {
                             return l.level < r.level;
                         });
        return FiltrationOrder(std::move(entries));
    }

    const std::vector<FilteredSimplex>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::vector<FilteredSimplex> entries_;
};

struct PersistenceInterval {
    int dim = 0;
    int birth = 0;
    std::optional<int> death;  // nullopt = never dies
    std::optional<std::vector<Simplex>> representative;

    bool essential() const noexcept { return !death.has_value(); }
};

using PersistenceIntervals = std::vector<PersistenceInterval>;

/// Z/2 persistence by standard column reduction. Intervals of zero length
/// (birth level == death level) are dropped. Representatives, when
/// requested, are the reduced column of the death simplex for finite
/// intervals and the recorded cycle of the birth simplex for essential ones.
inline PersistenceIntervals persistence(const FiltrationOrder& order,
                                        bool with_representatives = false) {
    const auto& entries = order.entries();
    std::unordered_map<Simplex, std::uint32_t, SimplexHash> position;
    position.reserve(entries.size());

    std::vector<GF2Column> cols(entries.size());
    for (std::size_t j = 0; j < entries.size(); ++j) {
        const FilteredSimplex& e = entries[j];
        if (e.simplex.empty()) throw MalformedSimplex("filtration contains the empty simplex");
        if (j > 0 && entries[j - 1].level > e.level)
            throw InvalidFiltration("levels decrease between " + format_simplex(entries[j - 1].simplex) +
                                    " and " + format_simplex(e.simplex));
        for (const Simplex& f : e.simplex.boundary_faces()) {
            auto it = position.find(f);
            if (it == position.end())
                throw InvalidFiltration("face " + format_simplex(f) + " does not precede " +
                                        format_simplex(e.simplex));
            cols[j].push_back(it->second);
        }
        std::sort(cols[j].begin(), cols[j].end());
        if (!position.emplace(e.simplex, static_cast<std::uint32_t>(j)).second)
            throw InvalidFiltration("simplex " + format_simplex(e.simplex) + " listed twice");
    }

    const ColumnReduction red(GF2Matrix(entries.size(), std::move(cols)), with_representatives);

    auto chain = [&](const GF2Column& c) {
        std::vector<Simplex> out;
        for (std::uint32_t i : c) out.push_back(entries[i].simplex);
        std::sort(out.begin(), out.end());
        return out;
    };

    PersistenceIntervals out;
    for (std::size_t j = 0; j < entries.size(); ++j) {
        const std::uint32_t low = red.low(j);
        if (low != no_pivot) {
            const FilteredSimplex& born = entries[low];
            if (born.level == entries[j].level) continue;
            PersistenceInterval iv{born.simplex.dim(), born.level, entries[j].level, std::nullopt};
            if (with_representatives) iv.representative = chain(red.reduced().columns[j]);
            out.push_back(std::move(iv));
        } else if (red.pivot_column(j) == no_pivot) {
            PersistenceInterval iv{entries[j].simplex.dim(), entries[j].level, std::nullopt, std::nullopt};
            if (with_representatives) iv.representative = chain(red.operations(j));
            out.push_back(std::move(iv));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const PersistenceInterval& l, const PersistenceInterval& r) {
        if (l.dim != r.dim) return l.dim < r.dim;
        if (l.birth != r.birth) return l.birth < r.birth;
        if (l.death.has_value() != r.death.has_value()) return l.death.has_value();
        return l.death.value_or(0) < r.death.value_or(0);
    });
    return out;
}

/// Rank of H_d(M) → H_d(W) for the inclusion M ⊆ W, per dimension d of W.
struct InclusionRank {
    std::vector<std::int64_t> ranks;
    /// Intervals born in M that never die in W, one per unit of rank.
    PersistenceIntervals surviving;

    std::int64_t operator[](std::size_t d) const { return d < ranks.size() ? ranks[d] : 0; }
};

/// Two-level filtration: M at level 1, W \ M at level 2.
inline InclusionRank inclusion_rank(const SimplicialComplex& m, const SimplicialComplex& w,
                                    bool with_representatives = false) {
    if (auto missing = m.first_missing_from(w))
        throw ContainmentError("simplex " + format_simplex(*missing, m) +
                               " of the subcomplex is missing from the ambient complex");

    const auto order = FiltrationOrder::from_levels(
        w, [&](const Simplex& s) { return m.contains(s) ? 1 : 2; });

    InclusionRank out;
    out.ranks.assign(static_cast<std::size_t>(std::max(w.dimension() + 1, 0)), 0);
    for (PersistenceInterval& iv : persistence(order, with_representatives)) {
        if (iv.birth == 1 && iv.essential()) {
            ++out.ranks[iv.dim];
            out.surviving.push_back(std::move(iv));
        }
    }
    return out;
}

}  // namespace ctopo

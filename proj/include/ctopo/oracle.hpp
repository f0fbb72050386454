#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ctopo/complex.hpp"
#include "ctopo/homology.hpp"
#include "ctopo/kunneth.hpp"
#include "ctopo/random.hpp"

namespace ctopo {

inline constexpr std::size_t max_oracle_vertices = 8;

/// Closure of 1..2n random generators of size 1..min(n,4) over n ≤ max_vertices
/// vertices in namespace `ns`. Never empty.
inline SimplicialComplex random_complex(Rng& rng, std::size_t max_vertices, Namespace ns) {
    const std::size_t n = 1 + rng.below(max_vertices);
    const std::size_t gens = 1 + rng.below(2 * n);
    std::vector<Simplex> generators;
    std::vector<std::uint32_t> pool(n);
    for (std::size_t g = 0; g < gens; ++g) {
        std::iota(pool.begin(), pool.end(), 0u);
        const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 4));
        std::vector<VertexId> vs;
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(pool[i], pool[i + rng.below(n - i)]);
            vs.emplace_back(ns, pool[i]);
        }
        generators.emplace_back(std::move(vs));
    }
    return SimplicialComplex::closure(generators);
}

struct OracleFailure {
    std::string identity;
    std::string detail;
    SimplicialComplex k;
    SimplicialComplex l;
};

/// Removes the last facet of X but keeps its boundary, so the Euler
/// characteristic moves by one. Used as a negative control.
inline SimplicialComplex drop_last_facet(const SimplicialComplex& x) {
    std::vector<Simplex> kept(x.facets().begin(), x.facets().end() - 1);
    for (Simplex& f : x.facets().back().boundary_faces()) kept.push_back(std::move(f));
    if (kept.empty()) throw std::invalid_argument("cannot drop the only vertex of a complex");
    return SimplicialComplex::closure(kept, x.labels());
}

/// Checks, for one pair of non-empty complexes in disjoint namespaces:
///   join Betti numbers against the Künneth-type join prediction,
///   product Betti numbers against the field Künneth convolution,
///   β̃_{p+1}(K∗L) = β̃_p(|K|×|L|) − β̃_p(K) − β̃_p(L),
///   β_{p+1}(K∗L) ≤ β_p(|K|×|L|),
///   rank(H_d(K) → H_d(K∗L)) = [d = 0], and the same for L,
///   Euler characteristic of the join against its Betti numbers.
/// With `mutate_join` one facet of the join is removed first, which must
/// make at least one identity fail.
inline std::optional<OracleFailure> check_join_identities(const SimplicialComplex& k,
                                                              const SimplicialComplex& l,
                                                              bool mutate_join = false) {
    SimplicialComplex w = join(k, l);
    if (mutate_join) w = drop_last_facet(w);
    const SimplicialComplex prod = product_complex(k, l);

    const BettiVector bk = betti(k), bl = betti(l), bw = betti(w), bp = betti(prod);
    const BettiVector rk = bk.as_reduced(), rl = bl.as_reduced(), rw = bw.as_reduced(), rp = bp.as_reduced();

    auto fail = [&](std::string identity, std::string detail) {
        return OracleFailure{std::move(identity), std::move(detail), k, l};
    };

    const BettiVector join_pred = kunneth_join_prediction(bk, bl);
    if (rw != join_pred)
        return fail("join_kunneth", "reduced join betti (" + to_string(rw) + ") != prediction (" +
                                        to_string(join_pred) + ")");

    const BettiVector prod_pred = kunneth_product_prediction(bk, bl);
    if (bp != prod_pred)
        return fail("product_kunneth",
                    "product betti (" + to_string(bp) + ") != prediction (" + to_string(prod_pred) + ")");

    const std::size_t top = std::max({rw.size(), rp.size() + 1, rk.size() + 1, rl.size() + 1});
    for (std::size_t p = 0; p + 1 < top; ++p) {
        if (rw[p + 1] != rp[p] - rk[p] - rl[p])
            return fail("exact_sequence", "p=" + std::to_string(p) + ": " + std::to_string(rw[p + 1]) +
                                              " != " + std::to_string(rp[p]) + " - " + std::to_string(rk[p]) +
                                              " - " + std::to_string(rl[p]));
        if (bw[p + 1] > bp[p])
            return fail("join_injects_into_product", "p=" + std::to_string(p) + ": beta_{p+1}(join)=" +
                                                         std::to_string(bw[p + 1]) + " > beta_p(product)=" +
                                                         std::to_string(bp[p]));
    }

    for (const SimplicialComplex* side : {&k, &l}) {
        if (!side->is_subcomplex_of(w)) return fail("cone_vanishing", "factor is not a subcomplex of the join");
        const InclusionRank inc = inclusion_rank(*side, w);
        for (int d = 0; d <= w.dimension(); ++d)
            if (inc[d] != (d == 0 ? 1 : 0))
                return fail("cone_vanishing", "rank of inclusion in dim " + std::to_string(d) + " is " +
                                                  std::to_string(inc[d]));
    }

    if (euler_characteristic(w) != bw.euler_characteristic())
        return fail("euler", "join Euler characteristic disagrees with its Betti numbers");
    return std::nullopt;
}

struct OracleSummary {
    std::size_t trials = 0;
    std::optional<OracleFailure> failure;
};

/// Runs the identity suite on `trials` random pairs (K in namespace A, L in
/// namespace B, each with at most `max_vertices` vertices). Stops at the
/// first failing pair.
inline OracleSummary run_oracle(std::size_t trials, std::size_t max_vertices, std::uint64_t seed,
                                bool mutate_join = false) {
    if (trials < 1) throw std::invalid_argument("oracle needs at least one trial");
    if (max_vertices < 1 || max_vertices > max_oracle_vertices)
        throw BudgetExceeded("max vertices per side must be in 1.." + std::to_string(max_oracle_vertices));
    Rng rng(seed);
    OracleSummary out;
    for (std::size_t t = 0; t < trials; ++t) {
        const SimplicialComplex k = random_complex(rng, max_vertices, Namespace::A);
        const SimplicialComplex l = random_complex(rng, max_vertices, Namespace::B);
        ++out.trials;
        if (auto f = check_join_identities(k, l, mutate_join)) {
            out.failure = std::move(f);
            break;
        }
    }
    return out;
}

}  // namespace ctopo

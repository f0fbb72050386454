#include <gtest/gtest.h>

#include <algorithm>

#include "ctopo/complex.hpp"
#include "ctopo/gf2.hpp"
#include "ctopo/homology.hpp"
#include "ctopo/kunneth.hpp"
#include "ctopo/oracle.hpp"
#include "support/dense_oracle.hpp"
#include "support/fixtures.hpp"

using namespace ctopo;
using namespace ctopo::test;

TEST(GF2Matrix, ValidatesIndices) {
    EXPECT_THROW(GF2Matrix(2, {{0, 2}}), std::out_of_range);
    EXPECT_THROW(GF2Matrix(3, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(GF2Matrix(3, {{2, 1}}), std::invalid_argument);
}

TEST(GF2Rank, Examples) {
    EXPECT_EQ(gf2_rank(GF2Matrix::identity(3)), 3u);
    EXPECT_EQ(gf2_rank(GF2Matrix::zero(4, 5)), 0u);
    // ab + bc = ac, so only two independent columns.
    EXPECT_EQ(gf2_rank(boundary_matrix(hollow_triangle(), 1)), 2u);
    EXPECT_EQ(gf2_rank(GF2Matrix(2, {{0, 1}, {0, 1}, {1}})), 2u);
}

TEST(GF2Rank, RecordsColumnOperations) {
    const GF2Matrix d(3, {{0, 1}, {1, 2}, {0, 2}});
    const ColumnReduction red(d, true);
    EXPECT_EQ(red.rank(), 2u);
    EXPECT_EQ(red.low(2), no_pivot);
    // R = D V: column 2 of V is a cycle of D.
    EXPECT_TRUE(multiply(d, GF2Matrix(3, {red.operations(2)})).is_zero());
}

TEST(BoundaryMatrix, Examples) {
    const auto b1 = boundary_matrix(hollow_triangle(), 1);
    EXPECT_EQ(b1.n_rows, 3u);
    EXPECT_EQ(b1.n_cols(), 3u);
    for (const auto& col : b1.columns) EXPECT_EQ(col.size(), 2u);

    const auto b2 = boundary_matrix(full_triangle(), 2);
    EXPECT_EQ(b2.n_cols(), 1u);
    EXPECT_EQ(b2.columns[0].size(), 3u);

    EXPECT_EQ(boundary_matrix(full_triangle(), 0).n_rows, 0u);
    EXPECT_EQ(boundary_matrix(full_triangle(), 5).n_cols(), 0u);
}

TEST(BoundaryMatrix, BoundaryOfBoundaryVanishes) {
    Rng rng(11);
    std::vector<SimplicialComplex> corpus{full_triangle(), sphere_boundary(5),
                                          join(hollow_triangle(Namespace::A), hollow_triangle(Namespace::B))};
    for (int i = 0; i < 40; ++i) corpus.push_back(random_complex(rng, 7, Namespace::A));
    for (const auto& x : corpus)
        for (int d = 2; d <= x.dimension(); ++d)
            EXPECT_TRUE(multiply(boundary_matrix(x, d - 1), boundary_matrix(x, d)).is_zero());
}

TEST(Betti, Examples) {
    EXPECT_EQ(betti(hollow_triangle()), (BettiVector{{1, 1}}));
    EXPECT_EQ(betti(join(hollow_triangle(Namespace::A), hollow_triangle(Namespace::B))),
              (BettiVector{{1, 0, 0, 1}}));
    EXPECT_EQ(betti(product_complex(hollow_triangle(Namespace::A), hollow_triangle(Namespace::B))),
              (BettiVector{{1, 2, 1}}));
    EXPECT_EQ(betti(sphere_boundary(4), true), (BettiVector{{0, 0, 1}, true}));
}

TEST(Betti, ReducedOfEmptyThrows) {
    EXPECT_THROW(betti(SimplicialComplex{}, true), std::invalid_argument);
    EXPECT_EQ(betti(SimplicialComplex{}).size(), 0u);
}

TEST(Betti, EqualityIgnoresTrailingZeros) {
    EXPECT_EQ((BettiVector{{1, 0, 0}}), (BettiVector{{1}}));
    EXPECT_NE((BettiVector{{1}}), (BettiVector{{1}, true}));
    EXPECT_NE((BettiVector{{1, 1}}), (BettiVector{{1}}));
}

TEST(Betti, MatchesDenseOracleAndEuler) {
    Rng rng(5);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        const auto k = random_complex(rng, 5, Namespace::A);
        const auto l = random_complex(rng, 4, Namespace::B);
        for (const auto& x : {k, join(k, l), product_complex(k, l)}) {
            if (x.size() > 500) continue;
            const BettiVector b = betti(x);
            EXPECT_EQ(b.per_dim, dense_betti(x));
            EXPECT_EQ(b.euler_characteristic(), euler_characteristic(x));
            ++checked;
        }
    }
    EXPECT_GT(checked, 300);
}

TEST(Persistence, ConeFill) {
    const VertexId a = va(0), b = va(1), c = va(2);
    const auto x = full_triangle();
    const auto order = FiltrationOrder::from_levels(x, [](const Simplex& s) { return s.dim() == 2 ? 2 : 1; });
    const auto iv = persistence(order, true);
    ASSERT_EQ(iv.size(), 2u);
    EXPECT_EQ(iv[0].dim, 0);
    EXPECT_EQ(iv[0].birth, 1);
    EXPECT_TRUE(iv[0].essential());
    EXPECT_EQ(iv[1].dim, 1);
    EXPECT_EQ(iv[1].birth, 1);
    EXPECT_EQ(iv[1].death, 2);
    ASSERT_TRUE(iv[1].representative);
    EXPECT_EQ(*iv[1].representative, (std::vector<Simplex>{Simplex{a, b}, Simplex{a, c}, Simplex{b, c}}));
}

TEST(Persistence, SingleLevelReproducesBetti) {
    Rng rng(8);
    for (int i = 0; i < 60; ++i) {
        const auto x = join(random_complex(rng, 4, Namespace::A), random_complex(rng, 4, Namespace::B));
        const auto iv = persistence(FiltrationOrder::from_levels(x, [](const Simplex&) { return 1; }));
        std::vector<std::int64_t> counts(static_cast<std::size_t>(x.dimension() + 1), 0);
        for (const auto& i : iv) {
            EXPECT_TRUE(i.essential());
            EXPECT_EQ(i.birth, 1);
            ++counts[i.dim];
        }
        EXPECT_EQ(BettiVector{counts}, betti(x));
    }
}

TEST(Persistence, EssentialRepresentativesAreCycles) {
    const auto w = join(hollow_triangle(Namespace::A), hollow_triangle(Namespace::B));
    const auto iv = persistence(FiltrationOrder::from_levels(w, [](const Simplex&) { return 1; }), true);
    ASSERT_EQ(iv.size(), 2u);
    ASSERT_TRUE(iv[1].representative);
    const auto& rep = *iv[1].representative;
    EXPECT_EQ(rep.size(), 9u);  // the sum of all nine tetrahedra
    std::map<Simplex, int> parity;
    for (const Simplex& s : rep)
        for (const Simplex& f : s.boundary_faces()) parity[f] ^= 1;
    for (const auto& [f, p] : parity) EXPECT_EQ(p, 0) << format_simplex(f);
}

TEST(Persistence, RejectsInvalidOrders) {
    const VertexId a = va(0), b = va(1);
    EXPECT_THROW(persistence(FiltrationOrder({{Simplex{a, b}, 1}, {Simplex{a}, 1}, {Simplex{b}, 1}})),
                 InvalidFiltration);
    EXPECT_THROW(persistence(FiltrationOrder({{Simplex{a}, 2}, {Simplex{b}, 1}})), InvalidFiltration);
    EXPECT_THROW(persistence(FiltrationOrder({{Simplex{a}, 1}, {Simplex{a}, 1}})), InvalidFiltration);
    try {
        persistence(FiltrationOrder({{Simplex{a}, 1}, {Simplex{a, b}, 1}}));
        FAIL();
    } catch (const InvalidFiltration& e) {
        EXPECT_NE(std::string(e.what()).find("{a1} does not precede {a0,a1}"), std::string::npos) << e.what();
    }
}

TEST(Persistence, RemovingOneJoinFacetKillsTopClass) {
    const auto w = join(hollow_triangle(Namespace::A), hollow_triangle(Namespace::B));
    const Simplex last = w.facets().back();
    const auto iv = persistence(FiltrationOrder::from_levels(w, [&](const Simplex& s) { return s == last ? 2 : 1; }));
    std::vector<PersistenceInterval> dim3;
    for (const auto& i : iv)
        if (i.dim == 3) dim3.push_back(i);
    ASSERT_EQ(dim3.size(), 1u);
    EXPECT_EQ(dim3[0].birth, 2);
    EXPECT_TRUE(dim3[0].essential());
}

TEST(InclusionRank, IdentityInclusion) {
    const auto inc = inclusion_rank(edge(), edge());
    EXPECT_EQ(inc.ranks, (std::vector<std::int64_t>{1, 0}));
}

TEST(InclusionRank, ConeKillsCircle) {
    const auto m = hollow_triangle(Namespace::A);
    const auto inc = inclusion_rank(m, join(m, point(Namespace::B)));
    EXPECT_EQ(inc[0], 1);
    EXPECT_EQ(inc[1], 0);
}

TEST(InclusionRank, ThreeSphereSurvivesIntoItself) {
    const auto w = join(hollow_triangle(Namespace::A), hollow_triangle(Namespace::B));
    const auto inc = inclusion_rank(w, w, true);
    EXPECT_EQ(inc.ranks, (std::vector<std::int64_t>{1, 0, 0, 1}));
    ASSERT_EQ(inc.surviving.size(), 2u);
    EXPECT_TRUE(inc.surviving[1].representative.has_value());
}

TEST(InclusionRank, RequiresContainment) {
    try {
        inclusion_rank(full_triangle(), hollow_triangle());
        FAIL();
    } catch (const ContainmentError& e) {
        EXPECT_NE(std::string(e.what()).find("{a0,a1,a2}"), std::string::npos) << e.what();
    }
}

TEST(InclusionRank, BoundedByBothBettiVectorsAndConeVanishes) {
    Rng rng(21);
    for (int i = 0; i < 80; ++i) {
        const auto k = random_complex(rng, 5, Namespace::A);
        const auto l = random_complex(rng, 5, Namespace::B);
        const auto w = join(k, l);
        // A random subcomplex of the join: drop each facet with probability 1/2.
        std::vector<Simplex> kept;
        for (const Simplex& f : w.facets())
            if (rng.coin()) kept.push_back(f);
        if (kept.empty()) kept.push_back(w.facets().front());
        const auto m = SimplicialComplex::closure(kept);
        const auto inc = inclusion_rank(m, w);
        const auto bm = betti(m), bw = betti(w);
        for (int d = 0; d <= w.dimension(); ++d) EXPECT_LE(inc[d], std::min(bm[d], bw[d]));

        const auto cone = inclusion_rank(k, w);
        for (int d = 0; d <= w.dimension(); ++d) EXPECT_EQ(cone[d], d == 0 ? 1 : 0);
    }
}

TEST(JoinIdentities, HoldOnRandomCorpus) {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto k = random_complex(rng, 6, Namespace::A);
        const auto l = random_complex(rng, 6, Namespace::B);
        const auto failure = check_join_identities(k, l);
        EXPECT_FALSE(failure) << failure->identity << ": " << failure->detail;
    }
}

TEST(JoinIdentities, MutationIsDetected) {
    const auto failure = check_join_identities(hollow_triangle(Namespace::A), two_points(Namespace::B), true);
    ASSERT_TRUE(failure);
    EXPECT_EQ(failure->identity, "join_kunneth");
}

TEST(JoinIdentities, EveryMutantIsDetected) {
    Rng rng(31);
    for (int i = 0; i < 60; ++i) {
        const auto k = random_complex(rng, 5, Namespace::A);
        const auto l = random_complex(rng, 5, Namespace::B);
        EXPECT_TRUE(check_join_identities(k, l, true).has_value());
    }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "ctopo/concurrence.hpp"
#include "ctopo/homology.hpp"
#include "ctopo/random.hpp"
#include "support/fixtures.hpp"

using namespace ctopo;
using namespace ctopo::test;

namespace {

BinaryDataset parse(const std::string& text) {
    std::istringstream in(text);
    return ingest_csv(in);
}

BinaryDataset random_dataset(Rng& rng, std::size_t n, std::size_t T) {
    BinaryDataset d;
    for (std::size_t c = 0; c < n; ++c) d.names.push_back("V" + std::to_string(c + 1));
    // Skewed densities so that frames above 1 carry structure.
    std::vector<double> density(n);
    for (auto& p : density) p = 0.2 + 0.6 * rng.uniform();
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<std::uint8_t> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = rng.uniform() < density[c];
        d.rows.push_back(std::move(row));
    }
    return d;
}

// count(σ) by scanning rows.
std::size_t brute_count(const BinaryDataset& d, const std::vector<std::size_t>& cols) {
    std::size_t n = 0;
    for (const auto& row : d.rows)
        n += std::all_of(cols.begin(), cols.end(), [&](std::size_t c) { return row[c] == 1; });
    return n;
}

}  // namespace

TEST(IngestCsv, ParsesHeaderAndRows) {
    const auto d = parse("A,B\n1,0\n0,1");
    EXPECT_EQ(d.n(), 2u);
    EXPECT_EQ(d.T(), 2u);
    EXPECT_EQ(d.names, (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(d.rows[1], (std::vector<std::uint8_t>{0, 1}));
    EXPECT_NO_THROW(d.validate());
}

TEST(IngestCsv, ToleratesCrlfAndBlankLines) {
    const auto d = parse("A, B\r\n\r\n1, 1\r\n");
    EXPECT_EQ(d.names, (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(d.T(), 1u);
}

TEST(IngestCsv, NonBinaryCellIsLocated) {
    try {
        parse("A,B\n1,0\n0,2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.column(), 2u);
        EXPECT_NE(std::string(e.what()).find("'2'"), std::string::npos);
    }
}

TEST(IngestCsv, ValidationErrors) {
    EXPECT_THROW(parse("A,B\n"), ParseError);
    try {
        parse("A,B\n");
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("T >= 1"), std::string::npos);
    }
    EXPECT_THROW(parse("A,B\n1\n"), ParseError);
    EXPECT_THROW(parse("A,A\n1,0\n"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
}

TEST(WriteCsv, RoundTrips) {
    const auto d = dataset({"x", "y", "z"}, {"101", "000"});
    std::ostringstream out;
    write_csv(d, out);
    EXPECT_EQ(out.str(), "x,y,z\n1,0,1\n0,0,0\n");
    EXPECT_EQ(parse(out.str()), d);
}

TEST(Support, Examples) {
    const std::vector<std::uint8_t> r1{1, 0, 1}, r0{0, 0, 0}, r7{1, 1, 1};
    EXPECT_EQ(support(r1), (Simplex{va(0), va(2)}));
    EXPECT_FALSE(support(r0).has_value());
    EXPECT_EQ(support(r7), (Simplex{va(0), va(1), va(2)}));
}

TEST(PatternTable, Examples) {
    const auto t = pattern_table(dataset({"V1", "V2", "V3"}, {"110", "110", "011"}));
    EXPECT_EQ(t.entries.size(), 2u);
    EXPECT_EQ(t.entries.at(Simplex{va(0), va(1)}), 2u);
    EXPECT_EQ(t.entries.at(Simplex{va(1), va(2)}), 1u);
    EXPECT_EQ(t.zero_rows, 0u);

    const auto z = pattern_table(dataset({"V1", "V2"}, {"00", "00", "00"}));
    EXPECT_TRUE(z.entries.empty());
    EXPECT_EQ(z.zero_rows, 3u);
    EXPECT_EQ(z.total(), 3u);

    const auto s3 = pattern_table(exhaustive_s3_dataset());
    EXPECT_EQ(s3.entries.size(), 9u);
    for (const auto& [p, m] : s3.entries) EXPECT_EQ(m, 1u);
}

TEST(ConcurrenceFrame, HandEnumeratedFrames) {
    const auto d = dataset({"V1", "V2", "V3"}, {"110", "110", "011"});
    EXPECT_EQ(max_frame(d), 3u);

    const auto f1 = concurrence_frame(d, 1);
    EXPECT_EQ(f1.labeled_facets(), (std::vector<std::vector<std::string>>{{"V1", "V2"}, {"V2", "V3"}}));
    const auto f2 = concurrence_frame(d, 2);
    EXPECT_EQ(f2.labeled_facets(), (std::vector<std::vector<std::string>>{{"V1", "V2"}}));
    const auto f3 = concurrence_frame(d, 3);
    EXPECT_EQ(f3.labeled_facets(), (std::vector<std::vector<std::string>>{{"V2"}}));
    EXPECT_TRUE(concurrence_frame(d, 4).empty());
    EXPECT_THROW(concurrence_frame(d, 0), std::invalid_argument);

    const FilteredConcurrence fc(d);
    EXPECT_EQ(fc.count(Simplex{va(1)}), 3u);
    EXPECT_EQ(fc.count(Simplex{va(0)}), 2u);
    EXPECT_EQ(fc.count(Simplex{va(0), va(1)}), 2u);
    EXPECT_EQ(fc.count(Simplex{va(0), va(2)}), 0u);
}

TEST(MaxFrame, Examples) {
    EXPECT_EQ(max_frame(dataset({"a", "b", "c"}, {"111"})), 1u);
    EXPECT_EQ(max_frame(dataset({"a", "b"}, {"00", "00"})), 0u);
    EXPECT_EQ(FilteredConcurrence(dataset({"a", "b"}, {"00", "00"})).max_frame(), 0u);
}

TEST(ConcurrenceFrame, ExhaustiveCycleDatasetIsHollowTriangle) {
    const auto d = dataset({"V1", "V2", "V3"}, {"110", "011", "101"});
    const auto m = concurrence_frame(d, 1);
    EXPECT_EQ(m.size(), 6u);
    EXPECT_EQ(betti(m), (BettiVector{{1, 1}}));
}

TEST(ConcurrenceFrame, CandidateCapIsEnforced) {
    Rng rng(4);
    const auto d = random_dataset(rng, 16, 60);
    EXPECT_THROW(FilteredConcurrence(d, {}, 10), BudgetExceeded);
}

class RandomDatasets : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomDatasets, FiltrationProperties) {
    Rng rng(GetParam());
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng.below(11);
        const auto d = random_dataset(rng, n, 1 + rng.below(60));
        const FilteredConcurrence fc(d);
        EXPECT_EQ(fc.max_frame(), max_frame(d));

        // Frame 1 facets are the maximal observed supports.
        std::vector<Simplex> observed;
        for (const auto& [p, m] : fc.patterns().entries) observed.push_back(p);
        if (!observed.empty()) EXPECT_EQ(fc.frame(1), SimplicialComplex::closure(observed));

        SimplicialComplex previous = fc.frame(1);
        for (std::size_t f = 1; f <= fc.max_frame() + 1; ++f) {
            const auto m = fc.frame(f);
            EXPECT_TRUE(m.is_subcomplex_of(previous)) << "frame " << f;
            for (const Simplex& s : m.simplices()) EXPECT_GE(fc.count(s), f);
            // Every face of a facet with one more vertex that is not in M_f has count < f.
            for (const Simplex& s : m.facets())
                for (VertexId v : fc.vertices()) {
                    if (s.contains(v)) continue;
                    std::vector<VertexId> bigger = s.vertices();
                    bigger.push_back(v);
                    EXPECT_LT(fc.count(Simplex(bigger)), f);
                }
            previous = m;
        }
        EXPECT_TRUE(fc.frame(fc.max_frame() + 1).empty());
    }
}

TEST_P(RandomDatasets, CountMatchesRowScanUpToDimThree) {
    Rng rng(GetParam() + 100);
    const std::size_t n = 3 + rng.below(10);
    const auto d = random_dataset(rng, n, 1 + rng.below(80));
    const FilteredConcurrence fc(d);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (std::popcount(mask) > 4) continue;
        std::vector<std::size_t> cols;
        std::vector<VertexId> vs;
        for (std::uint32_t c = 0; c < n; ++c)
            if (mask >> c & 1) {
                cols.push_back(c);
                vs.push_back(va(c));
            }
        ASSERT_EQ(fc.count(Simplex(vs)), brute_count(d, cols));
    }
}

TEST_P(RandomDatasets, ProjectionCommutesWithRestriction) {
    Rng rng(GetParam() + 200);
    const std::size_t n = 3 + rng.below(8);
    const auto d = random_dataset(rng, n, 1 + rng.below(50));
    const FilteredConcurrence full(d);

    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    for (std::size_t i = 0; i < n; ++i) std::swap(cols[i], cols[i + rng.below(n - i)]);
    cols.resize(1 + rng.below(n));
    std::vector<std::string> names;
    std::vector<VertexId> keep;
    for (std::size_t c : cols) {
        names.push_back(d.names[c]);
        keep.push_back(va(static_cast<std::uint32_t>(c)));
    }
    const FilteredConcurrence restricted(restrict_columns(d, names));
    for (std::size_t f = 1; f <= full.max_frame(); ++f)
        EXPECT_EQ(restricted.frame(f).labeled_facets(), project(full.frame(f), keep).labeled_facets())
            << "frame " << f;
}

TEST_P(RandomDatasets, ColumnPermutationOnlyRelabels) {
    Rng rng(GetParam() + 300);
    const std::size_t n = 3 + rng.below(8);
    const auto d = random_dataset(rng, n, 1 + rng.below(50));
    std::vector<std::string> names = d.names;
    std::reverse(names.begin(), names.end());
    std::swap(names.front(), names[names.size() / 2]);
    const auto permuted = restrict_columns(d, names);
    const FilteredConcurrence a(d), b(permuted);
    ASSERT_EQ(a.max_frame(), b.max_frame());
    for (std::size_t f = 1; f <= a.max_frame(); ++f) {
        const auto ma = a.frame(f), mb = b.frame(f);
        EXPECT_EQ(ma.labeled_facets(), mb.labeled_facets());
        EXPECT_EQ(betti(ma), betti(mb));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomDatasets, ::testing::Values(1u, 2u, 3u, 4u, 5u));

TEST(Restrict, MissingVariableIsNamed) {
    const auto d = dataset({"a", "b"}, {"10"});
    const std::vector<std::string> want{"a", "zz"};
    try {
        restrict_columns(d, want);
        FAIL();
    } catch (const SpecError& e) {
        EXPECT_NE(std::string(e.what()).find("'zz'"), std::string::npos);
    }
}

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctopo/concurrence.hpp"
#include "ctopo/errors.hpp"
#include "ctopo/random.hpp"

namespace ctopo {

inline constexpr double probability_tolerance = 1e-9;

struct WeightedPattern {
    std::string bits;  // one '0'/'1' per group variable
    double p = 0.0;
};

/// Distribution of one variable group over a finite list of support patterns.
struct GroupSpec {
    std::vector<std::string> names;
    std::vector<WeightedPattern> patterns;

    void validate(const std::string& what = "group") const {
        if (names.empty()) throw SpecError(what + ": no variable names");
        std::set<std::string> seen_names;
        for (const auto& n : names)
            if (!seen_names.insert(n).second) throw SpecError(what + ": duplicate name '" + n + "'");
        if (patterns.empty()) throw SpecError(what + ": no patterns");
        std::set<std::string> seen;
        double total = 0.0;
        for (const auto& wp : patterns) {
            if (wp.bits.size() != names.size())
                throw SpecError(what + ": pattern '" + wp.bits + "' should have " +
                                std::to_string(names.size()) + " bits");
            if (wp.bits.find_first_not_of("01") != std::string::npos)
                throw SpecError(what + ": pattern '" + wp.bits + "' is not binary");
            if (!seen.insert(wp.bits).second)
                throw SpecError(what + ": pattern '" + wp.bits + "' listed twice");
            if (!(wp.p > 0.0)) throw SpecError(what + ": pattern '" + wp.bits + "' has non-positive probability");
            total += wp.p;
        }
        if (std::abs(total - 1.0) > probability_tolerance)
            throw SpecError(what + ": probabilities sum to " + std::to_string(total) + ", not 1");
    }

    std::optional<double> probability(const std::string& bits) const {
        for (const auto& wp : patterns)
            if (wp.bits == bits) return wp.p;
        return std::nullopt;
    }
};

struct JointPattern {
    std::string bits_a;
    std::string bits_b;
    double p = 0.0;
};

/// Two groups, either independent or with an explicit joint distribution
/// over pattern pairs whose marginals must match the groups.
struct JointSpec {
    GroupSpec a;
    GroupSpec b;
    std::optional<std::vector<JointPattern>> joint;

    bool independent() const noexcept { return !joint.has_value(); }

    void validate() const {
        a.validate("groupA");
        b.validate("groupB");
        for (const auto& n : a.names)
            for (const auto& m : b.names)
                if (n == m) throw SpecError("variable '" + n + "' appears in both groups");
        if (!joint) return;
        if (joint->empty()) throw SpecError("joint: no entries");

        std::set<std::pair<std::string, std::string>> seen;
        std::map<std::string, double> marg_a, marg_b;
        double total = 0.0;
        for (const auto& jp : *joint) {
            if (!seen.insert({jp.bits_a, jp.bits_b}).second)
                throw SpecError("joint: pair (" + jp.bits_a + ", " + jp.bits_b + ") listed twice");
            if (!(jp.p > 0.0)) throw SpecError("joint: non-positive probability");
            if (!a.probability(jp.bits_a))
                throw SpecError("joint marginal mismatch: '" + jp.bits_a + "' is not a groupA pattern");
            if (!b.probability(jp.bits_b))
                throw SpecError("joint marginal mismatch: '" + jp.bits_b + "' is not a groupB pattern");
            marg_a[jp.bits_a] += jp.p;
            marg_b[jp.bits_b] += jp.p;
            total += jp.p;
        }
        if (std::abs(total - 1.0) > probability_tolerance)
            throw SpecError("joint: probabilities sum to " + std::to_string(total) + ", not 1");
        auto check = [](const GroupSpec& g, std::map<std::string, double>& marg, const char* side) {
            for (const auto& wp : g.patterns)
                if (std::abs(marg[wp.bits] - wp.p) > probability_tolerance)
                    throw SpecError(std::string("joint marginal mismatch: ") + side + " pattern '" + wp.bits +
                                    "' has marginal " + std::to_string(marg[wp.bits]) + ", expected " +
                                    std::to_string(wp.p));
        };
        check(a, marg_a, "groupA");
        check(b, marg_b, "groupB");
    }
};

/// Uniform distribution over the k supports that omit exactly one variable.
/// Exhaustive sampling yields the boundary of a (k-1)-simplex, a (k-2)-sphere.
inline GroupSpec cycle_pattern_spec(std::size_t k, std::vector<std::string> names) {
    if (k < 3) throw SpecError("cycle patterns need k >= 3");
    if (names.size() != k) throw SpecError("cycle patterns need exactly k names");
    GroupSpec g;
    g.names = std::move(names);
    for (std::size_t i = 0; i < k; ++i) {
        std::string bits(k, '1');
        bits[(i + k - 1) % k] = '0';
        g.patterns.push_back({bits, 1.0 / static_cast<double>(k)});
    }
    return g;
}

inline std::vector<std::string> numbered_names(const std::string& prefix, std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

/// Pairs pattern i of `a` with pattern i of `b`; both must list the same
/// number of patterns with matching probabilities.
inline JointSpec diagonal_coupling(GroupSpec a, GroupSpec b) {
    if (a.patterns.size() != b.patterns.size())
        throw SpecError("diagonal coupling needs equally many patterns on both sides");
    JointSpec j{std::move(a), std::move(b), std::vector<JointPattern>{}};
    for (std::size_t i = 0; i < j.a.patterns.size(); ++i)
        j.joint->push_back({j.a.patterns[i].bits, j.b.patterns[i].bits, j.a.patterns[i].p});
    return j;
}

/// The product distribution written out as an explicit joint.
inline JointSpec product_coupling(GroupSpec a, GroupSpec b) {
    JointSpec j{std::move(a), std::move(b), std::vector<JointPattern>{}};
    for (const auto& pa : j.a.patterns)
        for (const auto& pb : j.b.patterns) j.joint->push_back({pa.bits, pb.bits, pa.p * pb.p});
    return j;
}

namespace detail {

template <class Weighted, class P>
std::size_t draw(Rng& rng, const std::vector<Weighted>& items, P prob) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        acc += prob(items[i]);
        if (u < acc) return i;
    }
    return items.size() - 1;
}

inline void append_bits(std::vector<std::uint8_t>& row, const std::string& bits) {
    for (char c : bits) row.push_back(c == '1' ? 1 : 0);
}

inline BinaryDataset empty_dataset(const GroupSpec& a, const GroupSpec& b, std::size_t T) {
    if (T < 1) throw SpecError("T >= 1 required");
    BinaryDataset d;
    d.names = a.names;
    d.names.insert(d.names.end(), b.names.begin(), b.names.end());
    d.rows.reserve(T);
    return d;
}

}  // namespace detail

/// T i.i.d. rows; each draws a group-A pattern, then a group-B pattern, from
/// one Rng stream seeded with `seed`.
inline BinaryDataset sample_independent(const GroupSpec& a, const GroupSpec& b, std::size_t T,
                                        std::uint64_t seed) {
    JointSpec{a, b, std::nullopt}.validate();
    BinaryDataset d = detail::empty_dataset(a, b, T);
    Rng rng(seed);
    auto p = [](const WeightedPattern& w) { return w.p; };
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<std::uint8_t> row;
        detail::append_bits(row, a.patterns[detail::draw(rng, a.patterns, p)].bits);
        detail::append_bits(row, b.patterns[detail::draw(rng, b.patterns, p)].bits);
        d.rows.push_back(std::move(row));
    }
    return d;
}

/// T i.i.d. rows drawn from the explicit joint, one draw per row.
inline BinaryDataset sample_coupled(const JointSpec& j, std::size_t T, std::uint64_t seed) {
    if (!j.joint) throw SpecError("sample_coupled needs an explicit joint distribution");
    j.validate();
    BinaryDataset d = detail::empty_dataset(j.a, j.b, T);
    Rng rng(seed);
    for (std::size_t t = 0; t < T; ++t) {
        const auto& jp = (*j.joint)[detail::draw(rng, *j.joint, [](const JointPattern& x) { return x.p; })];
        std::vector<std::uint8_t> row;
        detail::append_bits(row, jp.bits_a);
        detail::append_bits(row, jp.bits_b);
        d.rows.push_back(std::move(row));
    }
    return d;
}

inline BinaryDataset sample(const JointSpec& j, std::size_t T, std::uint64_t seed) {
    return j.independent() ? sample_independent(j.a, j.b, T, seed) : sample_coupled(j, T, seed);
}

}  // namespace ctopo

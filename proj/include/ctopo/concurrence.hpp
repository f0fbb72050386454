#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ctopo/complex.hpp"
#include "ctopo/errors.hpp"
#include "ctopo/simplex.hpp"

namespace ctopo {

/// T observations of n binary variables.
struct BinaryDataset {
    std::vector<std::string> names;
    std::vector<std::vector<std::uint8_t>> rows;

    std::size_t n() const noexcept { return names.size(); }
    std::size_t T() const noexcept { return rows.size(); }

    std::optional<std::size_t> column(const std::string& name) const {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names.begin());
    }

    std::size_t column_sum(std::size_t c) const {
        std::size_t s = 0;
        for (const auto& r : rows) s += r[c];
        return s;
    }

    /// Throws SpecError on ragged rows, non-binary entries, duplicate names
    /// or an empty body.
    void validate() const {
        std::set<std::string> seen;
        for (const std::string& name : names)
            if (!seen.insert(name).second) throw SpecError("duplicate variable name '" + name + "'");
        if (rows.empty()) throw SpecError("T >= 1 required: dataset has no observations");
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (rows[t].size() != names.size())
                throw SpecError("observation " + std::to_string(t + 1) + " has " +
                                std::to_string(rows[t].size()) + " values, expected " +
                                std::to_string(names.size()));
            for (std::uint8_t v : rows[t])
                if (v > 1) throw SpecError("observation " + std::to_string(t + 1) + " is not binary");
        }
    }

    friend bool operator==(const BinaryDataset&, const BinaryDataset&) = default;
};

namespace detail {

inline std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace detail

/// Header row of variable names followed by rows of 0/1 cells. Blank lines
/// are ignored. Locations in errors are 1-based file lines and columns.
inline BinaryDataset ingest_csv(std::istream& in) {
    BinaryDataset d;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (!have_header) {
            std::set<std::string> seen;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].empty()) throw ParseError(line_no, c + 1, "empty variable name");
                if (!seen.insert(cells[c]).second)
                    throw ParseError(line_no, c + 1, "duplicate variable name '" + cells[c] + "'");
            }
            d.names = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != d.n())
            throw ParseError(line_no, 0, "ragged row: expected " + std::to_string(d.n()) +
                                             " cells, found " + std::to_string(cells.size()));
        std::vector<std::uint8_t> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c] == "0") row[c] = 0;
            else if (cells[c] == "1") row[c] = 1;
            else throw ParseError(line_no, c + 1, "non-binary value '" + cells[c] + "'");
        }
        d.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError(0, 0, "missing header row");
    if (d.rows.empty()) throw ParseError(0, 0, "T >= 1 required: no observation rows");
    return d;
}

inline void write_csv(const BinaryDataset& d, std::ostream& out) {
    for (std::size_t c = 0; c < d.n(); ++c) out << (c ? "," : "") << d.names[c];
    out << '\n';
    for (const auto& row : d.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << int(row[c]);
        out << '\n';
    }
}

/// Keeps the named columns, in the given order. Throws SpecError naming the
/// first variable that is absent.
inline BinaryDataset restrict_columns(const BinaryDataset& d, std::span<const std::string> keep) {
    std::vector<std::size_t> cols;
    for (const std::string& name : keep) {
        auto c = d.column(name);
        if (!c) throw SpecError("variable '" + name + "' is not in the dataset");
        cols.push_back(*c);
    }
    BinaryDataset out;
    out.names.assign(keep.begin(), keep.end());
    out.rows.reserve(d.T());
    for (const auto& row : d.rows) {
        std::vector<std::uint8_t> r;
        r.reserve(cols.size());
        for (std::size_t c : cols) r.push_back(row[c]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

/// Vertex of column c: (ns[c], c), or (A, c) when no namespaces are given.
inline std::vector<VertexId> column_vertices(std::size_t n, std::span<const Namespace> ns = {}) {
    if (!ns.empty() && ns.size() != n)
        throw std::invalid_argument("one namespace per column required");
    std::vector<VertexId> out;
    for (std::size_t c = 0; c < n; ++c)
        out.emplace_back(ns.empty() ? Namespace::A : ns[c], static_cast<std::uint32_t>(c));
    return out;
}

/// Variables equal to 1 in `row`; nullopt for the all-zero row.
inline std::optional<Simplex> support(std::span<const std::uint8_t> row,
                                      std::span<const VertexId> vertex_of_column) {
    std::vector<VertexId> on;
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c]) on.push_back(vertex_of_column[c]);
    if (on.empty()) return std::nullopt;
    return Simplex(std::move(on));
}

inline std::optional<Simplex> support(std::span<const std::uint8_t> row) {
    return support(row, column_vertices(row.size()));
}

/// Distinct observed supports with multiplicities. All-zero rows support no
/// simplex and are only counted.
struct PatternTable {
    std::map<Simplex, std::size_t> entries;
    std::size_t zero_rows = 0;

    std::size_t total() const {
        std::size_t t = zero_rows;
        for (const auto& [p, m] : entries) t += m;
        return t;
    }
};

inline PatternTable pattern_table(const BinaryDataset& d, std::span<const VertexId> vertex_of_column) {
    PatternTable out;
    for (const auto& row : d.rows) {
        if (auto s = support(row, vertex_of_column)) ++out.entries[*s];
        else ++out.zero_rows;
    }
    return out;
}

inline PatternTable pattern_table(const BinaryDataset& d) {
    return pattern_table(d, column_vertices(d.n()));
}

inline constexpr std::size_t default_candidate_cap = std::size_t{1} << 20;

/// The descending frequency filtration of the concurrence complex:
/// σ ∈ M_f iff σ ≠ ∅ and at least f observations have every variable of σ
/// equal to 1.
///
/// Frames are built from intersection-closed candidates: the maximal
/// simplices of M_f are intersections of observed supports, so only those
/// intersections are enumerated. Limited to 64 variables.
class FilteredConcurrence {
public:
    explicit FilteredConcurrence(const BinaryDataset& d, std::span<const Namespace> column_ns = {},
                                 std::size_t candidate_cap = default_candidate_cap)
        : vertices_(column_vertices(d.n(), column_ns)), table_(pattern_table(d, vertices_)) {
        if (d.n() > 64) throw std::invalid_argument("concurrence complexes support at most 64 variables");
        for (std::size_t c = 0; c < d.n(); ++c) labels_.emplace(vertices_[c], d.names[c]);

        std::unordered_map<Mask, std::size_t> mult;
        for (const auto& row : d.rows) {
            Mask m = 0;
            for (std::size_t c = 0; c < row.size(); ++c)
                if (row[c]) m |= Mask{1} << c;
            if (m) ++mult[m];
        }
        for (const auto& [m, k] : mult) patterns_.push_back({m, k});
        std::sort(patterns_.begin(), patterns_.end());

        std::unordered_set<Mask> seen;
        std::vector<Mask> frontier;
        for (const auto& [m, k] : patterns_)
            if (seen.insert(m).second) frontier.push_back(m);
        while (!frontier.empty()) {
            std::vector<Mask> next;
            for (Mask c : frontier)
                for (const auto& [p, k] : patterns_) {
                    const Mask x = c & p;
                    if (x && seen.insert(x).second) next.push_back(x);
                }
            if (seen.size() > candidate_cap)
                throw BudgetExceeded("more than " + std::to_string(candidate_cap) +
                                     " candidate simplices in the concurrence filtration");
            frontier = std::move(next);
        }
        for (Mask m : seen) candidates_.push_back({m, count_mask(m)});
        // Larger supports first so that maximality is a single forward pass.
        std::sort(candidates_.begin(), candidates_.end(), [](const Candidate& l, const Candidate& r) {
            const int pl = std::popcount(l.mask), pr = std::popcount(r.mask);
            return pl != pr ? pl > pr : l.mask < r.mask;
        });

        for (std::size_t c = 0; c < d.n(); ++c)
            max_frame_ = std::max(max_frame_, count_mask(Mask{1} << c));
    }

    /// Largest f with a non-empty frame (the largest column sum).
    std::size_t max_frame() const noexcept { return max_frame_; }

    const PatternTable& patterns() const noexcept { return table_; }
    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    const VertexLabels& labels() const noexcept { return labels_; }

    /// Number of observations whose support contains σ.
    std::size_t count(const Simplex& s) const {
        Mask m = 0;
        for (VertexId v : s) {
            auto it = std::find(vertices_.begin(), vertices_.end(), v);
            if (it == vertices_.end()) return 0;
            m |= Mask{1} << (it - vertices_.begin());
        }
        return count_mask(m);
    }

    /// M_f. Empty when f > max_frame(); throws std::invalid_argument for f < 1.
    SimplicialComplex frame(std::size_t f, std::size_t budget = default_simplex_budget) const {
        if (f < 1) throw std::invalid_argument("frame index must be >= 1");
        std::vector<Mask> maximal;
        for (const Candidate& c : candidates_) {
            if (c.count < f) continue;
            const bool covered = std::any_of(maximal.begin(), maximal.end(),
                                             [&](Mask m) { return (c.mask & m) == c.mask; });
            if (!covered) maximal.push_back(c.mask);
        }
        std::vector<Simplex> facets;
        for (Mask m : maximal) {
            std::vector<VertexId> vs;
            for (std::size_t c = 0; c < vertices_.size(); ++c)
                if (m >> c & 1) vs.push_back(vertices_[c]);
            facets.emplace_back(std::move(vs));
        }
        return SimplicialComplex::closure(facets, labels_, budget);
    }

private:
    using Mask = std::uint64_t;
    struct Candidate {
        Mask mask;
        std::size_t count;
    };

    std::size_t count_mask(Mask m) const {
        std::size_t total = 0;
        for (const auto& [p, k] : patterns_)
            if ((p & m) == m) total += k;
        return total;
    }

    std::vector<VertexId> vertices_;
    PatternTable table_;
    VertexLabels labels_;
    std::vector<std::pair<Mask, std::size_t>> patterns_;
    std::vector<Candidate> candidates_;
    std::size_t max_frame_ = 0;
};

inline SimplicialComplex concurrence_frame(const BinaryDataset& d, std::size_t f) {
    return FilteredConcurrence(d).frame(f);
}

inline std::size_t max_frame(const BinaryDataset& d) {
    std::size_t best = 0;
    for (std::size_t c = 0; c < d.n(); ++c) best = std::max(best, d.column_sum(c));
    return best;
}

}  // namespace ctopo

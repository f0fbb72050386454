#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctopo/complex.hpp"
#include "ctopo/concurrence.hpp"

namespace ctopo::test {

inline VertexId va(std::uint32_t i) { return VertexId(Namespace::A, i); }
inline VertexId vb(std::uint32_t i) { return VertexId(Namespace::B, i); }

inline VertexId vertex(Namespace ns, std::uint32_t i) { return VertexId(ns, i); }

inline SimplicialComplex point(Namespace ns = Namespace::A) {
    return SimplicialComplex::closure({Simplex{vertex(ns, 0)}});
}

inline SimplicialComplex two_points(Namespace ns = Namespace::A) {
    return SimplicialComplex::closure({Simplex{vertex(ns, 0)}, Simplex{vertex(ns, 1)}});
}

inline SimplicialComplex edge(Namespace ns = Namespace::A) {
    return SimplicialComplex::closure({Simplex{vertex(ns, 0), vertex(ns, 1)}});
}

inline SimplicialComplex hollow_triangle(Namespace ns = Namespace::A) {
    const VertexId a = vertex(ns, 0), b = vertex(ns, 1), c = vertex(ns, 2);
    return SimplicialComplex::closure({Simplex{a, b}, Simplex{b, c}, Simplex{c, a}});
}

inline SimplicialComplex full_triangle(Namespace ns = Namespace::A) {
    return SimplicialComplex::closure({Simplex{vertex(ns, 0), vertex(ns, 1), vertex(ns, 2)}});
}

/// Boundary of the (k-1)-simplex on k vertices.
inline SimplicialComplex sphere_boundary(std::uint32_t k, Namespace ns = Namespace::A) {
    std::vector<Simplex> facets;
    for (std::uint32_t skip = 0; skip < k; ++skip) {
        std::vector<VertexId> vs;
        for (std::uint32_t i = 0; i < k; ++i)
            if (i != skip) vs.push_back(vertex(ns, i));
        facets.emplace_back(std::move(vs));
    }
    return SimplicialComplex::closure(facets);
}

inline BinaryDataset dataset(std::vector<std::string> names, const std::vector<std::string>& rows) {
    BinaryDataset d;
    d.names = std::move(names);
    for (const auto& r : rows) {
        std::vector<std::uint8_t> row;
        for (char c : r) row.push_back(c == '1');
        d.rows.push_back(std::move(row));
    }
    return d;
}

/// The nine concatenations {110,011,101} x {110,011,101} on A1..A3, b1..b3.
inline BinaryDataset exhaustive_s3_dataset() {
    std::vector<std::string> rows;
    for (const char* a : {"110", "011", "101"})
        for (const char* b : {"110", "011", "101"}) rows.push_back(std::string(a) + b);
    return dataset({"A1", "A2", "A3", "b1", "b2", "b3"}, rows);
}

}  // namespace ctopo::test

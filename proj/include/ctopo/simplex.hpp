#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "ctopo/errors.hpp"

namespace ctopo {

/// Vertex namespaces. Two complexes can only be joined when they share none.
enum class Namespace : std::uint8_t {
    A = 0,        // first variable group (and the default for standalone complexes)
    B = 1,        // second variable group
    Product = 2,  // synthetic (u, v) vertices of a product triangulation
};

inline char namespace_prefix(Namespace ns) {
    switch (ns) {
        case Namespace::A: return 'a';
        case Namespace::B: return 'b';
        case Namespace::Product: return 'p';
    }
    return '?';
}

struct VertexId {
    Namespace ns = Namespace::A;
    std::uint32_t index = 0;

    constexpr VertexId() = default;
    constexpr VertexId(Namespace n, std::uint32_t i) : ns(n), index(i) {}

    constexpr std::uint64_t key() const noexcept {
        return (std::uint64_t(ns) << 32) | index;
    }

    friend constexpr bool operator==(VertexId, VertexId) = default;
    friend constexpr std::strong_ordering operator<=>(VertexId l, VertexId r) {
        return l.key() <=> r.key();
    }
};

inline std::string default_label(VertexId v) {
    return namespace_prefix(v.ns) + std::to_string(v.index);
}

/// A finite set of vertices, kept strictly sorted. The empty simplex is
/// representable so that joins can use it transiently; complexes never
/// store it.
class Simplex {
public:
    Simplex() = default;

    /// Sorts the input; throws MalformedSimplex on a repeated vertex.
    explicit Simplex(std::vector<VertexId> vertices) : v_(std::move(vertices)) {
        std::sort(v_.begin(), v_.end());
        if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
            throw MalformedSimplex("simplex lists vertex " +
                                   default_label(*std::adjacent_find(v_.begin(), v_.end())) +
                                   " more than once");
    }

    Simplex(std::initializer_list<VertexId> vertices)
        : Simplex(std::vector<VertexId>(vertices)) {}

    /// Caller guarantees strict ascending order.
    static Simplex from_sorted(std::vector<VertexId> vertices) {
        Simplex s;
        s.v_ = std::move(vertices);
        return s;
    }

    const std::vector<VertexId>& vertices() const noexcept { return v_; }
    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }
    int dim() const noexcept { return static_cast<int>(v_.size()) - 1; }

    auto begin() const noexcept { return v_.begin(); }
    auto end() const noexcept { return v_.end(); }
    VertexId operator[](std::size_t i) const { return v_[i]; }

    bool contains(VertexId v) const { return std::binary_search(v_.begin(), v_.end(), v); }

    bool is_face_of(const Simplex& other) const {
        return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
    }

    /// Codimension-one faces, the i-th omitting vertex i. Each is sorted.
    std::vector<Simplex> boundary_faces() const {
        std::vector<Simplex> out;
        if (v_.size() < 2) return out;
        out.reserve(v_.size());
        for (std::size_t skip = 0; skip < v_.size(); ++skip) {
            std::vector<VertexId> f;
            f.reserve(v_.size() - 1);
            for (std::size_t i = 0; i < v_.size(); ++i)
                if (i != skip) f.push_back(v_[i]);
            out.push_back(from_sorted(std::move(f)));
        }
        return out;
    }

    Simplex intersect(const Simplex& other) const {
        std::vector<VertexId> out;
        std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                              std::back_inserter(out));
        return from_sorted(std::move(out));
    }

    /// σ ∗ τ. Throws DisjointnessError if the two share a vertex.
    Simplex join(const Simplex& other) const {
        std::vector<VertexId> out;
        out.reserve(v_.size() + other.v_.size());
        std::merge(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                   std::back_inserter(out));
        if (std::adjacent_find(out.begin(), out.end()) != out.end())
            throw DisjointnessError("cannot join simplices sharing a vertex");
        return from_sorted(std::move(out));
    }

    /// Filtration tie-break order: dimension first, then lexicographic.
    static bool dim_lex_less(const Simplex& l, const Simplex& r) {
        if (l.size() != r.size()) return l.size() < r.size();
        return l.v_ < r.v_;
    }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex& l, const Simplex& r) { return l.v_ <=> r.v_; }

private:
    std::vector<VertexId> v_;
};

struct VertexHash {
    std::size_t operator()(VertexId v) const noexcept { return std::hash<std::uint64_t>{}(v.key()); }
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (VertexId v : s) {
            h ^= v.key() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace ctopo

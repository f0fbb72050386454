#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ctopo/complex.hpp"
#include "ctopo/concurrence.hpp"
#include "ctopo/errors.hpp"
#include "ctopo/homology.hpp"
#include "ctopo/kunneth.hpp"

namespace ctopo {

/// Two disjoint, non-empty lists of variable names. Variables outside both
/// lists are dropped before analysis.
struct Grouping {
    std::vector<std::string> group_a;
    std::vector<std::string> group_b;

    void validate() const {
        if (group_a.empty() || group_b.empty()) throw SpecError("both variable groups must be non-empty");
        std::set<std::string> a;
        for (const auto& name : group_a)
            if (!a.insert(name).second) throw SpecError("variable '" + name + "' listed twice in group A");
        std::set<std::string> b;
        for (const auto& name : group_b) {
            if (!b.insert(name).second) throw SpecError("variable '" + name + "' listed twice in group B");
            if (a.contains(name)) throw SpecError("variable '" + name + "' is in both groups");
        }
    }

    std::vector<std::string> scope() const {
        std::vector<std::string> out = group_a;
        out.insert(out.end(), group_b.begin(), group_b.end());
        return out;
    }
};

enum class FrameStatus {
    ok,
    empty_frame,  // f beyond the largest column sum: M_f is empty
    empty_side,   // M_f non-empty but K_f or L_f empty; no join formed
    error,        // analysis of this frame failed (e.g. simplex budget)
};

inline const char* to_string(FrameStatus s) {
    switch (s) {
        case FrameStatus::ok: return "ok";
        case FrameStatus::empty_frame: return "empty_frame";
        case FrameStatus::empty_side: return "empty_side";
        case FrameStatus::error: return "error";
    }
    return "?";
}

struct ContainmentFlags {
    bool k_l_in_m = false;        // K ∪ L ⊆ M_f
    bool k_facets_mixed = false;  // every facet of K lies in a simplex of M_f meeting group B
    bool l_facets_mixed = false;  // every facet of L lies in a simplex of M_f meeting group A
};

struct FrameReport {
    std::size_t frame = 0;
    FrameStatus status = FrameStatus::ok;
    std::string message;
    bool empty_a = false;
    bool empty_b = false;

    std::optional<BettiVector> betti_m, betti_k, betti_l, betti_join;
    /// Reduced prediction for the join from betti_k and betti_l alone.
    std::optional<BettiVector> kunneth_prediction;
    bool kunneth_agrees = false;

    /// Rank of H_d(M_f) → H_d(K_f ∗ L_f).
    std::vector<std::int64_t> inclusion_ranks;
    /// Classes born in M_f that survive into the join.
    PersistenceIntervals lifespan2_classes;

    ContainmentFlags containment;
    std::size_t facets_m = 0;
    std::size_t facets_join = 0;
    double facet_ratio = 0.0;

    std::int64_t rank(std::size_t d) const { return d < inclusion_ranks.size() ? inclusion_ranks[d] : 0; }
};

struct DatasetSummary {
    std::size_t T = 0;
    std::size_t n = 0;           // variables in the input
    std::size_t n_analyzed = 0;  // variables kept by the grouping
    std::size_t zero_rows = 0;   // all-zero rows after restriction
    std::size_t max_frame = 0;
};

/// Closed range of frames [first, last].
using FrameRun = std::pair<std::size_t, std::size_t>;

struct IndependenceReport {
    Grouping grouping;
    std::vector<FrameReport> frames;  // descending in f
    std::map<std::size_t, std::vector<FrameRun>> frequency_lifespans;
    DatasetSummary summary;
    VertexLabels labels;
};

/// Frames to analyze. `all` means 1..max_frame.
struct FrameRange {
    std::size_t first = 1;
    std::size_t last = 1;
    bool all = true;

    static FrameRange everything() { return {}; }
    static FrameRange between(std::size_t lo, std::size_t hi) { return {lo, hi, false}; }

    /// "all", "k" or "lo..hi".
    static FrameRange parse(const std::string& text) {
        if (text == "all") return everything();
        auto number = [&](const std::string& s) -> std::size_t {
            if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
                throw SpecError("bad frame range '" + text + "'");
            return std::stoull(s);
        };
        const auto dots = text.find("..");
        const std::size_t lo = number(text.substr(0, dots));
        const std::size_t hi = dots == std::string::npos ? lo : number(text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw SpecError("bad frame range '" + text + "'");
        return between(lo, hi);
    }
};

/// Assembles maximal runs of consecutive frames with positive rank, per
/// dimension. Every dimension seen in any frame gets an entry.
inline std::map<std::size_t, std::vector<FrameRun>> frequency_lifespans(
    const std::vector<FrameReport>& frames) {
    std::vector<const FrameReport*> asc;
    for (const auto& f : frames) asc.push_back(&f);
    std::sort(asc.begin(), asc.end(), [](auto* l, auto* r) { return l->frame < r->frame; });

    std::size_t dims = 0;
    for (auto* f : asc) dims = std::max(dims, f->inclusion_ranks.size());

    std::map<std::size_t, std::vector<FrameRun>> out;
    for (std::size_t d = 0; d < dims; ++d) {
        auto& runs = out[d];
        for (auto* f : asc) {
            if (f->rank(d) <= 0) continue;
            if (!runs.empty() && runs.back().second + 1 == f->frame) runs.back().second = f->frame;
            else runs.emplace_back(f->frame, f->frame);
        }
    }
    return out;
}

/// Restricts a dataset to a grouping and evaluates the two-level
/// filtration M_f ↪ K_f ∗ L_f frame by frame.
class IndependenceAnalyzer {
public:
    IndependenceAnalyzer(const BinaryDataset& d, Grouping g)
        : grouping_(std::move(g)), input_n_(d.n()) {
        grouping_.validate();
        data_ = restrict_columns(d, grouping_.scope());
        std::vector<Namespace> ns(grouping_.group_a.size(), Namespace::A);
        ns.resize(data_.n(), Namespace::B);
        concurrence_.emplace(data_, ns);
        side_a_ = column_vertices(data_.n(), ns);
        side_b_.assign(side_a_.begin() + static_cast<std::ptrdiff_t>(grouping_.group_a.size()), side_a_.end());
        side_a_.resize(grouping_.group_a.size());
    }

    const BinaryDataset& restricted() const noexcept { return data_; }
    const FilteredConcurrence& filtration() const noexcept { return *concurrence_; }
    std::size_t max_frame() const noexcept { return concurrence_->max_frame(); }

    FrameReport frame_report(std::size_t f, bool with_representatives = false) const {
        if (f < 1) throw std::invalid_argument("frame index must be >= 1");
        FrameReport r;
        r.frame = f;
        try {
            fill(r, with_representatives);
        } catch (const std::exception& e) {
            r.status = FrameStatus::error;
            r.message = e.what();
        }
        return r;
    }

    IndependenceReport analyze(FrameRange range = FrameRange::everything(),
                               bool with_representatives = false, unsigned threads = 0) const {
        const std::size_t lo = range.all ? 1 : range.first;
        const std::size_t hi = range.all ? max_frame() : range.last;

        IndependenceReport report;
        report.grouping = grouping_;
        report.labels = concurrence_->labels();
        report.summary = {data_.T(), input_n_, data_.n(), concurrence_->patterns().zero_rows, max_frame()};
        if (hi < lo) return report;

        const std::size_t count = hi - lo + 1;
        report.frames.resize(count);
        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

        // Slot i holds frame hi - i, so the output is descending regardless
        // of which worker finished first.
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < count; i = next++)
                report.frames[i] = frame_report(hi - i, with_representatives);
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        }
        report.frequency_lifespans = frequency_lifespans(report.frames);
        return report;
    }

private:
    void fill(FrameReport& r, bool with_representatives) const {
        const SimplicialComplex m = concurrence_->frame(r.frame);
        if (m.empty()) {
            r.status = FrameStatus::empty_frame;
            r.empty_a = r.empty_b = true;
            return;
        }
        const SimplicialComplex k = project(m, side_a_);
        const SimplicialComplex l = project(m, side_b_);
        r.betti_m = betti(m);
        r.facets_m = m.facets().size();
        r.empty_a = k.empty();
        r.empty_b = l.empty();
        if (!k.empty()) r.betti_k = betti(k);
        if (!l.empty()) r.betti_l = betti(l);
        if (k.empty() || l.empty()) {
            r.status = FrameStatus::empty_side;
            return;
        }

        const SimplicialComplex w = join(k, l);
        r.betti_join = betti(w);
        r.kunneth_prediction = kunneth_join_prediction(*r.betti_k, *r.betti_l);
        r.kunneth_agrees = r.betti_join->as_reduced() == *r.kunneth_prediction;

        InclusionRank inc = inclusion_rank(m, w, with_representatives);
        r.inclusion_ranks = std::move(inc.ranks);
        r.lifespan2_classes = std::move(inc.surviving);

        r.containment.k_l_in_m = k.is_subcomplex_of(m) && l.is_subcomplex_of(m);
        std::vector<Simplex> mixed;
        for (const Simplex& f : m.facets()) {
            const bool has_a = std::any_of(f.begin(), f.end(), [](VertexId v) { return v.ns == Namespace::A; });
            const bool has_b = std::any_of(f.begin(), f.end(), [](VertexId v) { return v.ns == Namespace::B; });
            if (has_a && has_b) mixed.push_back(f);
        }
        auto all_mixed = [&](const SimplicialComplex& side) {
            return std::all_of(side.facets().begin(), side.facets().end(), [&](const Simplex& s) {
                return std::any_of(mixed.begin(), mixed.end(), [&](const Simplex& f) { return s.is_face_of(f); });
            });
        };
        r.containment.k_facets_mixed = all_mixed(k);
        r.containment.l_facets_mixed = all_mixed(l);

        r.facets_join = w.facets().size();
        r.facet_ratio = static_cast<double>(r.facets_m) / static_cast<double>(r.facets_join);
        r.status = FrameStatus::ok;
    }

    Grouping grouping_;
    std::size_t input_n_ = 0;
    BinaryDataset data_;
    std::optional<FilteredConcurrence> concurrence_;
    std::vector<VertexId> side_a_;
    std::vector<VertexId> side_b_;
};

inline FrameReport analyze_frame(const BinaryDataset& d, const Grouping& g, std::size_t f,
                                 bool with_representatives = false) {
    return IndependenceAnalyzer(d, g).frame_report(f, with_representatives);
}

inline IndependenceReport analyze(const BinaryDataset& d, const Grouping& g,
                                  FrameRange range = FrameRange::everything(),
                                  bool with_representatives = false) {
    return IndependenceAnalyzer(d, g).analyze(range, with_representatives);
}

}  // namespace ctopo

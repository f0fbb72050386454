#pragma once

#include <cstdint>
#include <vector>

#include "ctopo/homology.hpp"

namespace ctopo {

/// Field Künneth over Z/2: β_D(|K|×|L|) = Σ_{p+q=D} β_p(K)·β_q(L).
/// Inputs are taken as unreduced.
inline BettiVector kunneth_product_prediction(const BettiVector& k, const BettiVector& l) {
    const BettiVector bk = k.as_unreduced();
    const BettiVector bl = l.as_unreduced();
    BettiVector out;
    if (bk.size() == 0 || bl.size() == 0) return out;
    out.per_dim.assign(bk.size() + bl.size() - 1, 0);
    for (std::size_t p = 0; p < bk.size(); ++p)
        for (std::size_t q = 0; q < bl.size(); ++q) out.per_dim[p + q] += bk[p] * bl[q];
    return out;
}

/// Reduced Betti numbers of K ∗ L for non-empty K, L:
/// β̃_{D+1}(K∗L) = Σ_{p+q=D} β̃_p(K)·β̃_q(L), and β̃_0 = 0 since the join
/// is path connected.
inline BettiVector kunneth_join_prediction(const BettiVector& k, const BettiVector& l) {
    const BettiVector bk = k.as_reduced();
    const BettiVector bl = l.as_reduced();
    BettiVector out;
    out.reduced = true;
    out.per_dim.assign(bk.size() + bl.size(), 0);
    for (std::size_t p = 0; p < bk.size(); ++p)
        for (std::size_t q = 0; q < bl.size(); ++q) out.per_dim[p + q + 1] += bk[p] * bl[q];
    return out;
}

}  // namespace ctopo

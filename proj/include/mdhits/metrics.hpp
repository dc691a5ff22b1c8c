#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mdhits/tensor.hpp"

namespace mdhits {

/// Component ids ordered by descending score. Ties are broken by ascending
/// id, so every ranking derived from the same scores is deterministic.
struct RankedList {
    std::vector<Index> ids;
    std::vector<double> scores;  // scores[r] is the score of ids[r]

    Index size() const noexcept { return static_cast<Index>(ids.size()); }
};

/// Full ranking of all components.
RankedList rank_all(std::span<const double> scores);

/// The k highest-scored ids under the tie policy, 1 <= k <= length.
RankedList top_k(std::span<const double> scores, Index k);

/// Depth-averaged normalized symmetric difference of two top-k lists:
/// (1/k) * sum_{i=1..k} |L1_i delta L2_i| / (2i), in [0, 1]. Zero for
/// identical prefixes, one for disjoint ones. Agreement is usually reported
/// as 1 - isim.
double intersection_similarity(const RankedList& a, const RankedList& b, Index k);

/// Tie-corrected Kendall correlation (tau-b) of two score vectors over the
/// same ids. Returns NaN when either vector is constant (undefined). Exact
/// zero scores are routine ties here, hence tau-b rather than tau-a.
double kendall_tau(std::span<const double> scores1, std::span<const double> scores2);

/// Baseline degrees of the aggregate network: out-degree = mode-1 marginals,
/// in-degree = mode-2 marginals.
std::pair<std::vector<double>, std::vector<double>> aggregate_degree(const SparseTensor& tensor);

}  // namespace mdhits

#include "mdhits/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace mdhits {

RankedList rank_all(std::span<const double> scores) {
    RankedList out;
    out.ids.resize(scores.size());
    std::iota(out.ids.begin(), out.ids.end(), Index{0});
    std::sort(out.ids.begin(), out.ids.end(), [&](Index a, Index b) {
        const double sa = scores[static_cast<std::size_t>(a)];
        const double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });
    out.scores.reserve(scores.size());
    for (Index id : out.ids) out.scores.push_back(scores[static_cast<std::size_t>(id)]);
    return out;
}

RankedList top_k(std::span<const double> scores, Index k) {
    if (k < 1 || k > static_cast<Index>(scores.size())) {
        throw InvalidArgument("top_k: k=" + std::to_string(k) + " out of range for " +
                              std::to_string(scores.size()) + " scores");
    }
    RankedList full = rank_all(scores);
    full.ids.resize(static_cast<std::size_t>(k));
    full.scores.resize(static_cast<std::size_t>(k));
    return full;
}

double intersection_similarity(const RankedList& a, const RankedList& b, Index k) {
    if (k < 1 || k > a.size() || k > b.size()) {
        throw InvalidArgument("intersection_similarity: k=" + std::to_string(k) +
                              " out of range for lists of sizes " + std::to_string(a.size()) +
                              " and " + std::to_string(b.size()));
    }
    // Incremental symmetric-difference count over the growing prefixes.
    std::unordered_set<Index> in_a;
    std::unordered_set<Index> in_b;
    in_a.reserve(static_cast<std::size_t>(k) * 2);
    in_b.reserve(static_cast<std::size_t>(k) * 2);
    Index sym_diff = 0;
    double total = 0.0;
    for (Index i = 0; i < k; ++i) {
        const Index ai = a.ids[static_cast<std::size_t>(i)];
        const Index bi = b.ids[static_cast<std::size_t>(i)];
        in_a.insert(ai);
        sym_diff += in_b.count(ai) ? -1 : 1;
        in_b.insert(bi);
        sym_diff += in_a.count(bi) ? -1 : 1;
        total += static_cast<double>(sym_diff) / (2.0 * static_cast<double>(i + 1));
    }
    return total / static_cast<double>(k);
}

namespace {

// Pairs (i, j) with i < j and strictly descending b, counted by merge sort.
std::uint64_t count_inversions(std::vector<double>& b, std::vector<double>& buffer,
                               std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t count =
        count_inversions(b, buffer, lo, mid) + count_inversions(b, buffer, mid, hi);
    std::size_t i = lo;
    std::size_t j = mid;
    std::size_t out = lo;
    while (i < mid && j < hi) {
        if (b[j] < b[i]) {
            count += mid - i;
            buffer[out++] = b[j++];
        } else {
            buffer[out++] = b[i++];
        }
    }
    while (i < mid) buffer[out++] = b[i++];
    while (j < hi) buffer[out++] = b[j++];
    std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo),
              buffer.begin() + static_cast<std::ptrdiff_t>(hi),
              b.begin() + static_cast<std::ptrdiff_t>(lo));
    return count;
}

std::uint64_t tie_pairs(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::uint64_t pairs = 0;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        if (i < values.size() && values[i] == values[i - 1]) {
            ++run;
        } else {
            pairs += static_cast<std::uint64_t>(run) * (run - 1) / 2;
            run = 1;
        }
    }
    return pairs;
}

}  // namespace

double kendall_tau(std::span<const double> scores1, std::span<const double> scores2) {
    if (scores1.size() != scores2.size()) {
        throw InvalidArgument("kendall_tau: length mismatch, " + std::to_string(scores1.size()) +
                              " vs " + std::to_string(scores2.size()));
    }
    const std::size_t n = scores1.size();
    if (n < 2) throw InvalidArgument("kendall_tau: need at least 2 scores");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores1[a] != scores1[b]) return scores1[a] < scores1[b];
        return scores2[a] < scores2[b];
    });

    const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const std::uint64_t n1 = tie_pairs({scores1.begin(), scores1.end()});
    const std::uint64_t n2 = tie_pairs({scores2.begin(), scores2.end()});
    if (n0 == n1 || n0 == n2) return std::numeric_limits<double>::quiet_NaN();

    // Pairs tied in both vectors.
    std::uint64_t n3 = 0;
    {
        std::size_t run = 1;
        auto same = [&](std::size_t i) {
            return scores1[order[i]] == scores1[order[i - 1]] &&
                   scores2[order[i]] == scores2[order[i - 1]];
        };
        for (std::size_t i = 1; i <= n; ++i) {
            if (i < n && same(i)) {
                ++run;
            } else {
                n3 += static_cast<std::uint64_t>(run) * (run - 1) / 2;
                run = 1;
            }
        }
    }

    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = scores2[order[i]];
    std::vector<double> buffer(n);
    const std::uint64_t swaps = count_inversions(b, buffer, 0, n);

    const double concordant_minus_discordant =
        static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
        static_cast<double>(n3) - 2.0 * static_cast<double>(swaps);
    // sqrt of the product, not a product of roots: identical inputs must give
    // exactly 1.
    const double denom =
        std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
    return concordant_minus_discordant / denom;
}

std::pair<std::vector<double>, std::vector<double>> aggregate_degree(const SparseTensor& tensor) {
    if (tensor.shape().size(0) != tensor.shape().size(1)) {
        throw InvalidArgument("aggregate_degree: node modes have different sizes");
    }
    return {tensor.mode_marginal(0), tensor.mode_marginal(1)};
}

}  // namespace mdhits

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mdhits/errors.hpp"

namespace mdhits {

using Index = std::int64_t;

/// Dimensions of an order-m tensor, m >= 2. For the temporal-multilayer
/// profile m = 5 and the modes are (source node, target node, source layer,
/// target layer, time), with matching node and layer sizes.
class TensorShape {
public:
    TensorShape() = default;
    explicit TensorShape(std::vector<Index> mode_sizes);

    Index order() const noexcept { return static_cast<Index>(mode_sizes_.size()); }
    Index size(Index mode) const;
    const std::vector<Index>& sizes() const noexcept { return mode_sizes_; }

    /// m == 5 with equal node modes and equal layer modes.
    bool is_temporal_multilayer() const noexcept;

    bool operator==(const TensorShape&) const = default;

private:
    std::vector<Index> mode_sizes_;
};

/// One coordinate entry: m zero-based indices and a positive weight.
struct EdgeRecord {
    std::vector<Index> index;
    double weight = 0.0;
};

/// Active/inactive partition of one mode. An index is inactive when its
/// unfolding sum (the mode marginal) is zero; such components receive exact
/// zero scores.
struct SupportSlice {
    Index mode = 0;
    std::vector<Index> inactive;  // ascending
    std::vector<Index> active;    // ascending
    std::vector<char> mask;       // mask[i] != 0 iff i is active

    bool is_active(Index i) const { return mask[static_cast<std::size_t>(i)] != 0; }
};

struct ContractOptions {
    int threads = 1;          // <= 0: all hardware threads
    bool compensated = false; // Kahan accumulation, for summation stress tests
};

/// Immutable sparse nonnegative tensor in coordinate format.
///
/// Entries are unique, strictly positive, and sorted lexicographically by
/// index tuple, which fixes the accumulation order of every contraction.
/// A per-mode grouping of entry positions supports one pass per mode, and
/// per-mode marginals cache the unfolding sums.
class SparseTensor {
public:
    SparseTensor() = default;

    /// Builds the canonical form: validates bounds and weights, sorts, and
    /// merges duplicate index tuples by summing their weights. An empty
    /// record list yields the zero tensor, which solvers refuse.
    static SparseTensor from_edge_list(std::span<const EdgeRecord> records, TensorShape shape);

    const TensorShape& shape() const noexcept { return shape_; }
    Index order() const noexcept { return shape_.order(); }
    Index nnz() const noexcept { return static_cast<Index>(weights_.size()); }
    bool is_zero() const noexcept { return weights_.empty(); }

    std::span<const Index> entry_index(Index pos) const;
    double entry_weight(Index pos) const { return weights_[static_cast<std::size_t>(pos)]; }
    std::vector<EdgeRecord> entries() const;

    /// Unfolding sums: mode_marginal(s)[i] = sum of weights of all entries
    /// whose mode-s index is i.
    const std::vector<double>& mode_marginal(Index mode) const;

    /// Partition of mode s into inactive indices (zero marginal) and their
    /// complement.
    SupportSlice mode_support(Index mode) const;

    /// One-mode contraction: out[i] = sum over entries with mode-s index i of
    /// weight * prod_{t != s} vectors[t][index_t]. vectors must hold one
    /// vector per mode; slot s is ignored. Output vanishes on the inactive
    /// set of mode s.
    std::vector<double> contract(Index mode, std::span<const std::vector<double>> vectors,
                                 const ContractOptions& options = {}) const;

    /// Full contraction against one vector per mode: sum of
    /// weight * prod_t vectors[t][index_t] over all entries.
    double full_contraction(std::span<const std::vector<double>> vectors) const;

    bool operator==(const SparseTensor&) const = default;

private:
    void build_index();

    TensorShape shape_;
    std::vector<Index> coords_;    // nnz * m, entry-major
    std::vector<double> weights_;  // nnz

    // group_pos_[s] lists entry positions sorted by their mode-s index;
    // group_ptr_[s][i] .. group_ptr_[s][i+1] delimit index value i.
    std::vector<std::vector<Index>> group_ptr_;
    std::vector<std::vector<Index>> group_pos_;
    std::vector<std::vector<double>> marginals_;
};

/// Support of every mode of one tensor.
class SupportSet {
public:
    SupportSet() = default;
    explicit SupportSet(const SparseTensor& tensor);

    Index order() const noexcept { return static_cast<Index>(slices_.size()); }
    const SupportSlice& slice(Index mode) const;

private:
    std::vector<SupportSlice> slices_;
};

}  // namespace mdhits

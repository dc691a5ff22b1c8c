#pragma once

// Shared test networks and random-input helpers. Edges are written 1-based,
// matching the figures they come from, and converted here.

#include <initializer_list>
#include <vector>

#include "mdhits/mapcore.hpp"
#include "mdhits/parallel.hpp"
#include "mdhits/tensor.hpp"

namespace mdhits::testing {

inline EdgeRecord rec1(std::initializer_list<Index> one_based, double w = 1.0) {
    EdgeRecord r;
    for (Index v : one_based) r.index.push_back(v - 1);
    r.weight = w;
    return r;
}

// Six nodes, 1 -> {2,3,4,5} -> 6. Node 1 never receives, node 6 never emits,
// so linear HITS is start-dependent on it.
inline SparseTensor curse_graph() {
    std::vector<EdgeRecord> edges;
    for (Index j : {2, 3, 4, 5}) edges.push_back(rec1({1, j}));
    for (Index i : {2, 3, 4, 5}) edges.push_back(rec1({i, 6}));
    return SparseTensor::from_edge_list(edges, TensorShape({6, 6}));
}

// The same graph embedded as a temporal multilayer with one layer and one
// time stamp.
inline SparseTensor curse_graph_5mode() {
    std::vector<EdgeRecord> edges;
    for (Index j : {2, 3, 4, 5}) edges.push_back(rec1({1, j, 1, 1, 1}));
    for (Index i : {2, 3, 4, 5}) edges.push_back(rec1({i, 6, 1, 1, 1}));
    return SparseTensor::from_edge_list(edges, TensorShape({6, 6, 1, 1, 1}));
}

// Four nodes on three layers, ten edges, one time stamp.
inline SparseTensor multilayer_fixture() {
    std::vector<EdgeRecord> edges = {
        rec1({2, 1, 1, 1, 1}), rec1({4, 1, 1, 1, 1}), rec1({1, 2, 2, 1, 1}),
        rec1({1, 4, 2, 1, 1}), rec1({1, 3, 2, 2, 1}), rec1({2, 4, 2, 2, 1}),
        rec1({3, 1, 2, 3, 1}), rec1({3, 2, 2, 3, 1}), rec1({2, 3, 3, 3, 1}),
        rec1({4, 2, 3, 3, 1}),
    };
    return SparseTensor::from_edge_list(edges, TensorShape({4, 4, 3, 3, 1}));
}

// Aggregate of the multilayer fixture: symmetric edges 1-2, 1-3, 1-4, 2-3,
// 2-4, each direction with weight 1.
inline SparseTensor aggregate_fixture() {
    std::vector<EdgeRecord> edges;
    for (auto [i, j] : {std::pair<Index, Index>{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}) {
        edges.push_back(rec1({i, j}));
        edges.push_back(rec1({j, i}));
    }
    return SparseTensor::from_edge_list(edges, TensorShape({4, 4}));
}

inline SparseTensor star_graph() {
    std::vector<EdgeRecord> edges = {rec1({1, 2}), rec1({1, 3})};
    return SparseTensor::from_edge_list(edges, TensorShape({3, 3}));
}

// Distinct random index tuples with weights in (0.5, 1.5].
inline SparseTensor random_tensor(const TensorShape& shape, Index nnz, std::uint64_t seed) {
    detail::SplitMix64 rng(seed);
    std::vector<EdgeRecord> records;
    records.reserve(static_cast<std::size_t>(nnz));
    std::vector<std::vector<Index>> seen;
    while (static_cast<Index>(records.size()) < nnz) {
        EdgeRecord r;
        for (Index t = 0; t < shape.order(); ++t) r.index.push_back(rng.next_below(shape.size(t)));
        bool duplicate = false;
        for (const auto& ix : seen) duplicate |= ix == r.index;
        if (duplicate) continue;
        seen.push_back(r.index);
        r.weight = 0.5 + rng.next_unit();
        records.push_back(std::move(r));
    }
    return SparseTensor::from_edge_list(records, shape);
}

// Strictly positive on active indices, exact zero on inactive ones.
inline CentralityTuple random_conforming(const SparseTensor& tensor, std::uint64_t seed,
                                         bool normalized = true) {
    detail::SplitMix64 rng(seed);
    CentralityTuple x;
    for (Index s = 0; s < tensor.order(); ++s) {
        SupportSlice sup = tensor.mode_support(s);
        std::vector<double> slice(sup.mask.size(), 0.0);
        for (Index i : sup.active) {
            slice[static_cast<std::size_t>(i)] = 0.05 + 0.95 * rng.next_unit();
        }
        x.slices.push_back(std::move(slice));
    }
    return normalized ? normalize_G(x) : x;
}

inline std::vector<double> random_positive_vector(std::size_t n, std::uint64_t seed) {
    detail::SplitMix64 rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.next_unit();
    return v;
}

}  // namespace mdhits::testing

#include "mdhits/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mdhits/parallel.hpp"

namespace mdhits {

TensorShape::TensorShape(std::vector<Index> mode_sizes) : mode_sizes_(std::move(mode_sizes)) {
    if (mode_sizes_.size() < 2) {
        throw InvalidArgument("shape: order must be at least 2, got " +
                              std::to_string(mode_sizes_.size()));
    }
    for (std::size_t s = 0; s < mode_sizes_.size(); ++s) {
        if (mode_sizes_[s] < 1) {
            throw InvalidArgument("shape: mode " + std::to_string(s) + " has nonpositive size " +
                                  std::to_string(mode_sizes_[s]));
        }
    }
}

Index TensorShape::size(Index mode) const {
    if (mode < 0 || mode >= order()) {
        throw InvalidArgument("shape: mode " + std::to_string(mode) + " out of range for order " +
                              std::to_string(order()));
    }
    return mode_sizes_[static_cast<std::size_t>(mode)];
}

bool TensorShape::is_temporal_multilayer() const noexcept {
    return order() == 5 && mode_sizes_[0] == mode_sizes_[1] && mode_sizes_[2] == mode_sizes_[3];
}

SparseTensor SparseTensor::from_edge_list(std::span<const EdgeRecord> records, TensorShape shape) {
    const Index m = shape.order();
    for (std::size_t r = 0; r < records.size(); ++r) {
        const EdgeRecord& rec = records[r];
        if (static_cast<Index>(rec.index.size()) != m) {
            throw InvalidArgument("record " + std::to_string(r) + ": expected " +
                                  std::to_string(m) + " indices, got " +
                                  std::to_string(rec.index.size()));
        }
        for (Index t = 0; t < m; ++t) {
            const Index v = rec.index[static_cast<std::size_t>(t)];
            if (v < 0 || v >= shape.size(t)) {
                throw InvalidArgument("record " + std::to_string(r) + ": index " +
                                      std::to_string(v) + " out of bounds for mode " +
                                      std::to_string(t) + " (size " +
                                      std::to_string(shape.size(t)) + ")");
            }
        }
        if (!(rec.weight > 0.0) || !std::isfinite(rec.weight)) {
            throw InvalidArgument("record " + std::to_string(r) +
                                  ": weight must be positive and finite");
        }
    }

    // Canonical order; stable so that duplicates are summed in input order.
    std::vector<std::size_t> perm(records.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return records[a].index < records[b].index;
    });

    SparseTensor out;
    out.shape_ = std::move(shape);
    out.coords_.reserve(records.size() * static_cast<std::size_t>(m));
    out.weights_.reserve(records.size());
    for (std::size_t p : perm) {
        const EdgeRecord& rec = records[p];
        if (!out.weights_.empty()) {
            std::span<const Index> last(out.coords_.data() + out.coords_.size() - m,
                                        static_cast<std::size_t>(m));
            if (std::equal(last.begin(), last.end(), rec.index.begin())) {
                out.weights_.back() += rec.weight;
                continue;
            }
        }
        out.coords_.insert(out.coords_.end(), rec.index.begin(), rec.index.end());
        out.weights_.push_back(rec.weight);
    }
    out.build_index();
    return out;
}

void SparseTensor::build_index() {
    const Index m = order();
    const Index n = nnz();
    group_ptr_.assign(static_cast<std::size_t>(m), {});
    group_pos_.assign(static_cast<std::size_t>(m), {});
    marginals_.assign(static_cast<std::size_t>(m), {});
    for (Index s = 0; s < m; ++s) {
        const Index ns = shape_.size(s);
        auto& ptr = group_ptr_[static_cast<std::size_t>(s)];
        auto& pos = group_pos_[static_cast<std::size_t>(s)];
        auto& marg = marginals_[static_cast<std::size_t>(s)];
        ptr.assign(static_cast<std::size_t>(ns) + 1, 0);
        pos.resize(static_cast<std::size_t>(n));
        marg.assign(static_cast<std::size_t>(ns), 0.0);
        for (Index p = 0; p < n; ++p) {
            const Index i = coords_[static_cast<std::size_t>(p * m + s)];
            ++ptr[static_cast<std::size_t>(i) + 1];
            marg[static_cast<std::size_t>(i)] += weights_[static_cast<std::size_t>(p)];
        }
        for (Index i = 0; i < ns; ++i) {
            ptr[static_cast<std::size_t>(i) + 1] += ptr[static_cast<std::size_t>(i)];
        }
        std::vector<Index> cursor(ptr.begin(), ptr.end() - 1);
        for (Index p = 0; p < n; ++p) {
            const Index i = coords_[static_cast<std::size_t>(p * m + s)];
            pos[static_cast<std::size_t>(cursor[static_cast<std::size_t>(i)]++)] = p;
        }
    }
}

std::span<const Index> SparseTensor::entry_index(Index pos) const {
    const Index m = order();
    return {coords_.data() + static_cast<std::size_t>(pos * m), static_cast<std::size_t>(m)};
}

std::vector<EdgeRecord> SparseTensor::entries() const {
    std::vector<EdgeRecord> out;
    out.reserve(static_cast<std::size_t>(nnz()));
    for (Index p = 0; p < nnz(); ++p) {
        auto ix = entry_index(p);
        out.push_back({{ix.begin(), ix.end()}, entry_weight(p)});
    }
    return out;
}

const std::vector<double>& SparseTensor::mode_marginal(Index mode) const {
    shape_.size(mode);  // bounds check
    return marginals_[static_cast<std::size_t>(mode)];
}

SupportSlice SparseTensor::mode_support(Index mode) const {
    const std::vector<double>& marg = mode_marginal(mode);
    SupportSlice slice;
    slice.mode = mode;
    slice.mask.resize(marg.size(), 0);
    for (std::size_t i = 0; i < marg.size(); ++i) {
        if (marg[i] > 0.0) {
            slice.mask[i] = 1;
            slice.active.push_back(static_cast<Index>(i));
        } else {
            slice.inactive.push_back(static_cast<Index>(i));
        }
    }
    return slice;
}

namespace {

// Accumulation order per output element is the canonical entry order in both
// paths below, so serial and row-partitioned results are bitwise identical.
void contract_rows(const std::vector<Index>& ptr, const std::vector<Index>& pos,
                   const Index* coords, const double* weights, Index m, Index s,
                   const std::vector<const double*>& vecs, bool compensated, Index row_begin,
                   Index row_end, double* out) {
    for (Index r = row_begin; r < row_end; ++r) {
        double acc = 0.0;
        double comp = 0.0;
        for (Index q = ptr[static_cast<std::size_t>(r)]; q < ptr[static_cast<std::size_t>(r) + 1];
             ++q) {
            const Index p = pos[static_cast<std::size_t>(q)];
            const Index* ix = coords + p * m;
            double v = weights[p];
            for (Index t = 0; t < s; ++t) v *= vecs[static_cast<std::size_t>(t)][ix[t]];
            for (Index t = s + 1; t < m; ++t) v *= vecs[static_cast<std::size_t>(t)][ix[t]];
            if (compensated) {
                const double y = v - comp;
                const double next = acc + y;
                comp = (next - acc) - y;
                acc = next;
            } else {
                acc += v;
            }
        }
        out[r] = acc;
    }
}

}  // namespace

std::vector<double> SparseTensor::contract(Index mode, std::span<const std::vector<double>> vectors,
                                           const ContractOptions& options) const {
    const Index m = order();
    shape_.size(mode);  // bounds check
    if (static_cast<Index>(vectors.size()) != m) {
        throw InvalidArgument("contract: expected " + std::to_string(m) + " vectors, got " +
                              std::to_string(vectors.size()));
    }
    std::vector<const double*> vecs(static_cast<std::size_t>(m), nullptr);
    for (Index t = 0; t < m; ++t) {
        if (t == mode) continue;
        const auto& x = vectors[static_cast<std::size_t>(t)];
        if (static_cast<Index>(x.size()) != shape_.size(t)) {
            throw InvalidArgument("contract: mode " + std::to_string(t) + " vector has length " +
                                  std::to_string(x.size()) + ", expected " +
                                  std::to_string(shape_.size(t)));
        }
        for (double v : x) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw InvalidArgument("contract: mode " + std::to_string(t) +
                                      " vector has a negative or non-finite entry");
            }
        }
        vecs[static_cast<std::size_t>(t)] = x.data();
    }

    const Index ns = shape_.size(mode);
    std::vector<double> out(static_cast<std::size_t>(ns), 0.0);
    const auto& ptr = group_ptr_[static_cast<std::size_t>(mode)];
    const auto& pos = group_pos_[static_cast<std::size_t>(mode)];
    detail::parallel_for(ns, options.threads, [&](Index begin, Index end) {
        contract_rows(ptr, pos, coords_.data(), weights_.data(), m, mode, vecs,
                      options.compensated, begin, end, out.data());
    });
    return out;
}

double SparseTensor::full_contraction(std::span<const std::vector<double>> vectors) const {
    const Index m = order();
    if (static_cast<Index>(vectors.size()) != m) {
        throw InvalidArgument("full_contraction: expected " + std::to_string(m) +
                              " vectors, got " + std::to_string(vectors.size()));
    }
    std::vector<const double*> vecs;
    vecs.reserve(static_cast<std::size_t>(m));
    for (Index t = 0; t < m; ++t) {
        const auto& x = vectors[static_cast<std::size_t>(t)];
        if (static_cast<Index>(x.size()) != shape_.size(t)) {
            throw InvalidArgument("full_contraction: mode " + std::to_string(t) +
                                  " vector has length " + std::to_string(x.size()) +
                                  ", expected " + std::to_string(shape_.size(t)));
        }
        vecs.push_back(x.data());
    }
    double acc = 0.0;
    const Index* ix = coords_.data();
    for (Index p = 0; p < nnz(); ++p, ix += m) {
        double v = weights_[static_cast<std::size_t>(p)];
        for (Index t = 0; t < m; ++t) v *= vecs[static_cast<std::size_t>(t)][ix[t]];
        acc += v;
    }
    return acc;
}

SupportSet::SupportSet(const SparseTensor& tensor) {
    slices_.reserve(static_cast<std::size_t>(tensor.order()));
    for (Index s = 0; s < tensor.order(); ++s) slices_.push_back(tensor.mode_support(s));
}

const SupportSlice& SupportSet::slice(Index mode) const {
    if (mode < 0 || mode >= order()) {
        throw InvalidArgument("support: mode " + std::to_string(mode) + " out of range");
    }
    return slices_[static_cast<std::size_t>(mode)];
}

}  // namespace mdhits

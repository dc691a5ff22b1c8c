#include "mdhits/mapcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mdhits {

CentralityTuple CentralityTuple::ones(const TensorShape& shape) {
    CentralityTuple x;
    x.slices.reserve(static_cast<std::size_t>(shape.order()));
    for (Index s = 0; s < shape.order(); ++s) {
        x.slices.emplace_back(static_cast<std::size_t>(shape.size(s)), 1.0);
    }
    return x;
}

bool is_normalized(const CentralityTuple& x) {
    for (const auto& slice : x.slices) {
        if (slice.empty()) return false;
        double max = 0.0;
        for (double v : slice) max = std::max(max, std::abs(v));
        if (max != 1.0) return false;
    }
    return true;
}

bool conforms_to(const CentralityTuple& x, const SupportSet& support) {
    if (x.order() != support.order()) return false;
    for (Index s = 0; s < x.order(); ++s) {
        const auto& slice = x.slices[static_cast<std::size_t>(s)];
        const SupportSlice& sup = support.slice(s);
        if (slice.size() != sup.mask.size()) return false;
        for (std::size_t i = 0; i < slice.size(); ++i) {
            if (sup.mask[i] ? !(slice[i] > 0.0) : slice[i] != 0.0) return false;
        }
    }
    return true;
}

CentralityTuple apply_F_alpha(const SparseTensor& tensor, const ExponentConfig& config,
                              const CentralityTuple& x, const ContractOptions& options) {
    const Index m = tensor.order();
    if (static_cast<Index>(config.alpha.size()) != m) {
        throw InvalidArgument("apply_F_alpha: config has " + std::to_string(config.alpha.size()) +
                              " exponents for an order-" + std::to_string(m) + " tensor");
    }
    if (x.order() != m) {
        throw InvalidArgument("apply_F_alpha: tuple has " + std::to_string(x.order()) +
                              " slices for an order-" + std::to_string(m) + " tensor");
    }
    CentralityTuple out;
    out.slices.resize(static_cast<std::size_t>(m));
    for (Index s = 0; s < m; ++s) {
        std::vector<double> slice = tensor.contract(s, x.slices, options);
        const double a = config.alpha[static_cast<std::size_t>(s)];
        for (double& v : slice) v = v > 0.0 ? std::pow(v, a) : 0.0;
        out.slices[static_cast<std::size_t>(s)] = std::move(slice);
    }
    return out;
}

CentralityTuple normalize_G(const CentralityTuple& y) {
    CentralityTuple out = y;
    for (Index s = 0; s < out.order(); ++s) {
        auto& slice = out.slices[static_cast<std::size_t>(s)];
        double max = 0.0;
        for (double v : slice) max = std::max(max, std::abs(v));
        if (max == 0.0) throw InactiveModeError(s);
        for (double& v : slice) v /= max;
    }
    return out;
}

double beta_norm(const CentralityTuple& x, std::span<const double> beta) {
    if (beta.size() != static_cast<std::size_t>(x.order())) {
        throw InvalidArgument("beta_norm: got " + std::to_string(beta.size()) +
                              " weights for " + std::to_string(x.order()) + " slices");
    }
    double norm = 0.0;
    for (Index s = 0; s < x.order(); ++s) {
        double max = 0.0;
        for (double v : x.slices[static_cast<std::size_t>(s)]) max = std::max(max, std::abs(v));
        norm += beta[static_cast<std::size_t>(s)] * max;
    }
    return norm;
}

double hilbert_distance(const CentralityTuple& x, const CentralityTuple& y,
                        std::span<const double> beta, const SupportSet& support) {
    if (x.order() != support.order() || y.order() != support.order() ||
        beta.size() != static_cast<std::size_t>(support.order())) {
        throw InvalidArgument("hilbert_distance: tuple/weight order mismatch");
    }
    if (!conforms_to(x, support) || !conforms_to(y, support)) {
        throw InvalidArgument(
            "hilbert_distance: input does not conform to the support (metric undefined)");
    }
    double dist = 0.0;
    for (Index s = 0; s < support.order(); ++s) {
        const auto& xs = x.slices[static_cast<std::size_t>(s)];
        const auto& ys = y.slices[static_cast<std::size_t>(s)];
        const SupportSlice& sup = support.slice(s);
        if (sup.active.empty()) continue;
        double up = -std::numeric_limits<double>::infinity();
        double down = -std::numeric_limits<double>::infinity();
        for (Index i : sup.active) {
            const double d = std::log(xs[static_cast<std::size_t>(i)]) -
                             std::log(ys[static_cast<std::size_t>(i)]);
            up = std::max(up, d);
            down = std::max(down, -d);
        }
        dist += beta[static_cast<std::size_t>(s)] * (up + down);
    }
    return dist;
}

}  // namespace mdhits

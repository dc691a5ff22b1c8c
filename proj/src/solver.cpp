#include "mdhits/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mdhits/parallel.hpp"

namespace mdhits {

namespace {

double slice_sup_norm(const std::vector<double>& v) {
    double max = 0.0;
    for (double x : v) max = std::max(max, std::abs(x));
    return max;
}

double relative_step(const CentralityTuple& next, const CentralityTuple& prev,
                     std::span<const double> beta) {
    double num = 0.0;
    double den = 0.0;
    for (Index s = 0; s < next.order(); ++s) {
        const auto& a = next.slices[static_cast<std::size_t>(s)];
        const auto& b = prev.slices[static_cast<std::size_t>(s)];
        double diff = 0.0;
        double max = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            diff = std::max(diff, std::abs(a[i] - b[i]));
            max = std::max(max, std::abs(a[i]));
        }
        num += beta[static_cast<std::size_t>(s)] * diff;
        den += beta[static_cast<std::size_t>(s)] * max;
    }
    return num / den;
}

// ||log(c1/c0)||_beta with the convention log(0) = 0 for entries where the
// ratio vanishes.
double log_ratio_norm(const CentralityTuple& c1, const CentralityTuple& c0,
                      std::span<const double> beta) {
    double norm = 0.0;
    for (Index s = 0; s < c1.order(); ++s) {
        const auto& a = c1.slices[static_cast<std::size_t>(s)];
        const auto& b = c0.slices[static_cast<std::size_t>(s)];
        double max = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double ratio = a[i] / b[i];
            if (ratio > 0.0) max = std::max(max, std::abs(std::log(ratio)));
        }
        norm += beta[static_cast<std::size_t>(s)] * max;
    }
    return norm;
}

CentralityTuple make_start(const TensorShape& shape, const SolverConfig& sc) {
    switch (sc.start) {
        case StartKind::ones:
            return CentralityTuple::ones(shape);
        case StartKind::custom: {
            const CentralityTuple& x = sc.initial_guess;
            if (x.order() != shape.order()) {
                throw InvalidArgument("solve: initial guess has " + std::to_string(x.order()) +
                                      " slices for an order-" + std::to_string(shape.order()) +
                                      " tensor");
            }
            for (Index s = 0; s < x.order(); ++s) {
                const auto& slice = x.slices[static_cast<std::size_t>(s)];
                if (static_cast<Index>(slice.size()) != shape.size(s)) {
                    throw InvalidArgument("solve: initial guess slice " + std::to_string(s) +
                                          " has wrong length");
                }
                for (double v : slice) {
                    if (!(v > 0.0) || !std::isfinite(v)) {
                        throw InvalidArgument("solve: initial guess must be strictly positive");
                    }
                }
            }
            return x;
        }
        case StartKind::random_positive: {
            detail::SplitMix64 rng(sc.seed);
            CentralityTuple x;
            x.slices.reserve(static_cast<std::size_t>(shape.order()));
            for (Index s = 0; s < shape.order(); ++s) {
                std::vector<double> slice(static_cast<std::size_t>(shape.size(s)));
                for (double& v : slice) v = rng.next_unit();
                x.slices.push_back(std::move(slice));
            }
            return x;
        }
    }
    throw InvalidArgument("solve: unknown start kind");
}

void validate_solver_config(const SolverConfig& sc) {
    if (!(sc.tolerance > 0.0)) throw InvalidArgument("solve: tolerance must be positive");
    if (sc.max_iterations < 1) throw InvalidArgument("solve: max_iterations must be at least 1");
}

}  // namespace

Solution solve(const SparseTensor& tensor, const ExponentConfig& config,
               const SolverConfig& solver_config) {
    if (tensor.is_zero()) {
        throw InvalidArgument("solve: zero tensor has no positive eigenvector");
    }
    if (static_cast<Index>(config.alpha.size()) != tensor.order()) {
        throw InvalidArgument("solve: config has " + std::to_string(config.alpha.size()) +
                              " exponents for an order-" + std::to_string(tensor.order()) +
                              " tensor");
    }
    if (!config.feasible()) {
        throw InfeasibleAlphaError(
            config.rho, "solve: infeasible alpha, rho=" + std::to_string(config.rho) +
                            " >= 1 (uniqueness not guaranteed)");
    }
    validate_solver_config(solver_config);

    const ContractOptions copts{solver_config.threads, solver_config.compensated};
    CentralityTuple c = make_start(tensor.shape(), solver_config);

    Solution out;
    out.alpha = config.alpha;
    out.rho = config.rho;
    out.beta = config.beta;

    double base = 0.0;  // ||log(c1/c0)||_beta, fixed at the first iteration
    int iterations = 0;
    bool converged = false;
    while (iterations < solver_config.max_iterations) {
        CentralityTuple next = normalize_G(apply_F_alpha(tensor, config, c, copts));
        const double step = relative_step(next, c, config.beta);
        if (iterations == 0) base = log_ratio_norm(next, c, config.beta);
        if (solver_config.record_trace) {
            out.trace.push_back(
                {iterations, step, 2.0 * std::pow(config.rho, iterations) * base});
        }
        c = std::move(next);
        ++iterations;
        if (step < solver_config.tolerance) {
            converged = true;
            break;
        }
    }

    out.iterations = iterations;
    out.converged = converged;
    auto [lambda, res] = residual(tensor, config, c);
    out.lambda = std::move(lambda);
    out.residual_norm = res;

    // sigma = A(c_1,...,c_m) / prod_s ||c_s||_{p_s} with p_s = (alpha_s+1)/alpha_s,
    // the eigenvalue of the l^{p}-rescaled representative.
    double scale = 1.0;
    for (Index s = 0; s < tensor.order(); ++s) {
        const double p = (config.alpha[static_cast<std::size_t>(s)] + 1.0) /
                         config.alpha[static_cast<std::size_t>(s)];
        double sum = 0.0;
        for (double v : c.slices[static_cast<std::size_t>(s)]) {
            if (v > 0.0) sum += std::pow(v, p);
        }
        scale *= std::pow(sum, 1.0 / p);
    }
    out.sigma = tensor.full_contraction(c.slices) / scale;
    out.c = std::move(c);
    return out;
}

std::pair<std::vector<double>, double> residual(const SparseTensor& tensor,
                                                const ExponentConfig& config,
                                                const CentralityTuple& c) {
    const SupportSet support(tensor);
    if (!conforms_to(c, support)) {
        throw InvalidArgument("residual: tuple does not conform to the tensor support");
    }
    for (Index s = 0; s < c.order(); ++s) {
        if (std::abs(slice_sup_norm(c.slices[static_cast<std::size_t>(s)]) - 1.0) > 1e-9) {
            throw InvalidArgument("residual: slice " + std::to_string(s) + " is not normalized");
        }
    }
    CentralityTuple raw = apply_F_alpha(tensor, config, c);
    std::vector<double> lambda(static_cast<std::size_t>(c.order()), 0.0);
    double res = 0.0;
    for (Index s = 0; s < c.order(); ++s) {
        const auto& fs = raw.slices[static_cast<std::size_t>(s)];
        const auto& cs = c.slices[static_cast<std::size_t>(s)];
        const double l = slice_sup_norm(fs);
        lambda[static_cast<std::size_t>(s)] = l;
        double diff = 0.0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            diff = std::max(diff, std::abs(fs[i] - l * cs[i]));
        }
        res += config.beta[static_cast<std::size_t>(s)] * diff;
    }
    return {std::move(lambda), res};
}

double sigma_consistency(const SparseTensor& tensor, const ExponentConfig& config,
                         const Solution& solution) {
    const Index m = tensor.order();
    CentralityTuple scaled = solution.c;
    for (Index s = 0; s < m; ++s) {
        const double a = config.alpha[static_cast<std::size_t>(s)];
        const double p = (a + 1.0) / a;
        auto& slice = scaled.slices[static_cast<std::size_t>(s)];
        double sum = 0.0;
        for (double v : slice) {
            if (v > 0.0) sum += std::pow(v, p);
        }
        const double norm = std::pow(sum, 1.0 / p);
        for (double& v : slice) v /= norm;
    }
    CentralityTuple raw = apply_F_alpha(tensor, config, scaled);
    std::vector<double> value(static_cast<std::size_t>(m), 0.0);
    double log_mean = 0.0;
    for (Index s = 0; s < m; ++s) {
        const double a = config.alpha[static_cast<std::size_t>(s)];
        const double lam = slice_sup_norm(raw.slices[static_cast<std::size_t>(s)]) /
                           slice_sup_norm(scaled.slices[static_cast<std::size_t>(s)]);
        value[static_cast<std::size_t>(s)] = std::pow(lam, 1.0 / a);
        log_mean += std::log(value[static_cast<std::size_t>(s)]);
    }
    const double mean = std::exp(log_mean / static_cast<double>(m));
    double dev = 0.0;
    for (double v : value) dev = std::max(dev, std::abs(v / mean - 1.0));
    return dev;
}

MonolayerHits monolayer_hits(const SparseTensor& adjacency, double alpha1, double alpha2,
                             const SolverConfig& solver_config) {
    if (adjacency.order() != 2) {
        throw InvalidArgument("monolayer_hits: adjacency must have order 2, got " +
                              std::to_string(adjacency.order()));
    }
    ExponentConfig config = ExponentConfig::from_alpha({alpha1, alpha2});
    if (!config.feasible()) {
        throw InfeasibleAlphaError(
            config.rho,
            "monolayer_hits: infeasible alpha, rho=" + std::to_string(config.rho) +
                " >= 1; the linear regime has no uniqueness guarantee, use classical_hits");
    }
    Solution s = solve(adjacency, config, solver_config);
    MonolayerHits out;
    out.hub = std::move(s.c.slices[0]);
    out.authority = std::move(s.c.slices[1]);
    out.lambda1 = s.lambda[0];
    out.lambda2 = s.lambda[1];
    out.sigma = s.sigma;
    out.iterations = s.iterations;
    out.converged = s.converged;
    out.trace = std::move(s.trace);
    return out;
}

ClassicalHits classical_hits(const SparseTensor& adjacency, const SolverConfig& solver_config) {
    if (adjacency.order() != 2) {
        throw InvalidArgument("classical_hits: adjacency must have order 2, got " +
                              std::to_string(adjacency.order()));
    }
    if (adjacency.is_zero()) {
        throw InvalidArgument("classical_hits: zero adjacency");
    }
    validate_solver_config(solver_config);

    CentralityTuple c = make_start(adjacency.shape(), solver_config);
    std::vector<double> h = std::move(c.slices[0]);
    std::vector<double> a = std::move(c.slices[1]);
    const ContractOptions copts{solver_config.threads, solver_config.compensated};

    ClassicalHits out;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::vector<std::vector<double>> work(2);
    while (out.iterations < solver_config.max_iterations) {
        work[1] = a;
        std::vector<double> h_next = adjacency.contract(0, work, copts);
        lambda1 = slice_sup_norm(h_next);
        for (double& v : h_next) v /= lambda1;
        work[0] = h_next;
        work[1].clear();
        std::vector<double> a_next = adjacency.contract(1, work, copts);
        lambda2 = slice_sup_norm(a_next);
        for (double& v : a_next) v /= lambda2;

        double delta = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) delta = std::max(delta, std::abs(h_next[i] - h[i]));
        for (std::size_t i = 0; i < a.size(); ++i) delta = std::max(delta, std::abs(a_next[i] - a[i]));
        h = std::move(h_next);
        a = std::move(a_next);
        ++out.iterations;
        if (delta < solver_config.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.hub = std::move(h);
    out.authority = std::move(a);
    out.lambda1 = lambda1;
    out.lambda2 = lambda2;
    out.sigma = std::sqrt(lambda1 * lambda2);
    return out;
}

}  // namespace mdhits

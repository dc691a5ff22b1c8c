#include "mdhits/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdhits {

namespace {

void validate_positive(std::span<const double> alpha, const char* who) {
    if (alpha.size() < 2) {
        throw InvalidArgument(std::string(who) + ": need at least 2 exponents, got " +
                              std::to_string(alpha.size()));
    }
    for (std::size_t s = 0; s < alpha.size(); ++s) {
        if (!(alpha[s] > 0.0) || !std::isfinite(alpha[s])) {
            throw InvalidArgument(std::string(who) + ": alpha[" + std::to_string(s) +
                                  "] must be positive and finite");
        }
    }
}

double secular(std::span<const double> alpha, double rho) {
    double g = -1.0;
    for (double a : alpha) g += a / (rho + a);
    return g;
}

double secular_derivative(std::span<const double> alpha, double rho) {
    double d = 0.0;
    for (double a : alpha) d -= a / ((rho + a) * (rho + a));
    return d;
}

}  // namespace

std::vector<std::vector<double>> build_weight_matrix(std::span<const double> alpha) {
    validate_positive(alpha, "build_weight_matrix");
    const std::size_t m = alpha.size();
    std::vector<std::vector<double>> mat(m, std::vector<double>(m, 0.0));
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t t = 0; t < m; ++t) {
            if (t != s) mat[s][t] = alpha[t];
        }
    }
    return mat;
}

PerronPair perron(std::span<const double> alpha) {
    validate_positive(alpha, "perron");
    const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);

    // g is strictly decreasing with g(0) = m - 1 > 0 and g(total) < 0, so the
    // bracket always contains exactly one root. Newton with bisection
    // safeguard, tolerance 1e-14 on |g|.
    double lo = 0.0;
    double hi = total;
    double rho = 0.5 * total;
    for (int it = 0; it < 200; ++it) {
        const double g = secular(alpha, rho);
        if (std::abs(g) <= 1e-14) break;
        if (g > 0.0) {
            lo = rho;
        } else {
            hi = rho;
        }
        const double step = g / secular_derivative(alpha, rho);
        double next = rho - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (next == rho) break;
        rho = next;
    }

    PerronPair out;
    out.rho = rho;
    out.beta.resize(alpha.size());
    double sum = 0.0;
    for (std::size_t s = 0; s < alpha.size(); ++s) {
        out.beta[s] = 1.0 / (rho + alpha[s]);
        sum += out.beta[s];
    }
    for (double& b : out.beta) b /= sum;
    // Pin the index-order sum to exactly 1: rebuild the last component from
    // the others. fl(P + fl(1 - P)) == 1 for P in (0, 1), by Sterbenz for
    // P >= 1/2 and by round-to-even at the half-ulp boundary otherwise.
    const double partial = std::accumulate(out.beta.begin(), out.beta.end() - 1, 0.0);
    out.beta.back() = 1.0 - partial;
    return out;
}

FeasibilityReport check_feasible(std::span<const double> alpha) {
    validate_positive(alpha, "check_feasible");
    for (std::size_t s = 0; s < alpha.size(); ++s) {
        if (alpha[s] > 1.0) {
            throw InvalidArgument("check_feasible: alpha[" + std::to_string(s) +
                                  "] exceeds 1");
        }
    }
    FeasibilityReport report;
    report.rho = perron(alpha).rho;
    const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
    const double min = *std::min_element(alpha.begin(), alpha.end());
    report.gershgorin_hint = (total - min) <= 1.0;
    if (std::abs(report.rho - 1.0) <= 1e-12) {
        report.verdict = Feasibility::boundary;
    } else if (report.rho < 1.0) {
        report.verdict = Feasibility::feasible;
    } else {
        report.verdict = Feasibility::infeasible;
    }
    return report;
}

ExponentConfig ExponentConfig::from_alpha(std::vector<double> alpha) {
    validate_positive(alpha, "exponent config");
    for (std::size_t s = 0; s < alpha.size(); ++s) {
        if (alpha[s] > 1.0) {
            throw InvalidArgument("exponent config: alpha[" + std::to_string(s) +
                                  "] exceeds 1");
        }
    }
    PerronPair pair = perron(alpha);
    ExponentConfig cfg;
    cfg.alpha = std::move(alpha);
    cfg.rho = pair.rho;
    cfg.beta = std::move(pair.beta);
    return cfg;
}

}  // namespace mdhits

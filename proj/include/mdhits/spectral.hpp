#pragma once

#include <span>
#include <vector>

#include "mdhits/errors.hpp"

namespace mdhits {

/// Perron pair of the exponent weight matrix: spectral radius and the
/// positive eigenvector normalized to unit sum.
struct PerronPair {
    double rho = 0.0;
    std::vector<double> beta;
};

/// The m x m matrix with zero diagonal and alpha_t in column t of every other
/// row; equivalently ones * alpha^T - diag(alpha).
std::vector<std::vector<double>> build_weight_matrix(std::span<const double> alpha);

/// Perron root and vector of build_weight_matrix(alpha).
///
/// The rank-one-plus-diagonal structure reduces the eigenproblem to the
/// scalar secular equation sum_s alpha_s / (rho + alpha_s) = 1, which has
/// exactly one root in (0, sum alpha); beta_s is proportional to
/// 1 / (rho + alpha_s). Solved by safeguarded Newton so the result is
/// deterministic and bit-stable; beta parameterizes the solver's stopping
/// norm and must not depend on eigensolver iteration order.
PerronPair perron(std::span<const double> alpha);

enum class Feasibility { feasible, boundary, infeasible };

struct FeasibilityReport {
    Feasibility verdict = Feasibility::infeasible;
    double rho = 0.0;
    /// Sufficient condition (sum alpha - min alpha) <= 1; advisory fast-path
    /// hint only, the computed rho decides.
    bool gershgorin_hint = false;
};

/// Classifies alpha in (0,1]^m by the spectral radius of its weight matrix.
/// Boundary means |rho - 1| <= 1e-12.
FeasibilityReport check_feasible(std::span<const double> alpha);

/// Exponent vector with its derived Perron data. Uniqueness of the centrality
/// and the contraction rate of the iteration are governed by rho < 1.
struct ExponentConfig {
    std::vector<double> alpha;
    double rho = 0.0;
    std::vector<double> beta;

    bool feasible() const noexcept { return rho < 1.0; }
    std::size_t order() const noexcept { return alpha.size(); }

    /// Validates alpha in (0,1]^m and computes (rho, beta).
    static ExponentConfig from_alpha(std::vector<double> alpha);
};

}  // namespace mdhits

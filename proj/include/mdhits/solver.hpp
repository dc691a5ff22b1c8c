#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mdhits/mapcore.hpp"
#include "mdhits/spectral.hpp"
#include "mdhits/tensor.hpp"

namespace mdhits {

enum class StartKind { ones, custom, random_positive };

struct SolverConfig {
    double tolerance = 1e-6;
    int max_iterations = 1000;
    StartKind start = StartKind::ones;
    CentralityTuple initial_guess;  // used when start == custom; strictly positive
    std::uint64_t seed = 0;         // used when start == random_positive
    bool record_trace = true;
    int threads = 1;
    bool compensated = false;
};

/// One iteration record: the observed relative step in the beta-norm and the
/// a-priori geometric bound 2 * rho^k * ||log(c1/c0)||_beta.
struct TraceEntry {
    int iteration = 0;
    double step = 0.0;
    double bound = 0.0;
};

struct Solution {
    CentralityTuple c;           // normalized, zero exactly on inactive indices
    std::vector<double> lambda;  // lambda_s = sup-norm of slice s of F(c)
    double sigma = 0.0;          // common value lambda_s^(1/alpha_s) in the
                                 // singular-vector scaling; see solver notes
    int iterations = 0;
    bool converged = false;
    std::vector<TraceEntry> trace;
    double residual_norm = 0.0;  // ||F(c) - lambda (x) c||_beta at the result

    // Context echoed for serialization.
    std::vector<double> alpha;
    double rho = 0.0;
    std::vector<double> beta;
};

/// Fixed-point iteration c <- normalize(F(c)) from a strictly positive start,
/// stopped when the relative beta-norm step drops below the tolerance.
/// Requires a nonzero tensor and rho < 1 (otherwise uniqueness is not
/// guaranteed and the call refuses). Zeros on inactive indices appear exactly
/// after the first iteration and are preserved.
Solution solve(const SparseTensor& tensor, const ExponentConfig& config,
               const SolverConfig& solver_config = {});

/// Eigenvalue extraction and residual certificate at a normalized, conforming
/// tuple: lambda_s = sup-norm of slice s of F(c), and the beta-norm of
/// F(c) - lambda (x) c.
std::pair<std::vector<double>, double> residual(const SparseTensor& tensor,
                                                const ExponentConfig& config,
                                                const CentralityTuple& c);

/// Consistency certificate for the singular-value identity
/// lambda_1^(1/alpha_1) = ... = lambda_m^(1/alpha_m) = sigma, which holds in
/// the scaling where every slice has unit l^((alpha_s+1)/alpha_s) norm (it
/// does not hold under sup-norm scaling). Rescales the solution accordingly,
/// re-evaluates each slice of the map there, and returns the maximum relative
/// deviation of lambda_s^(1/alpha_s) from their geometric mean.
double sigma_consistency(const SparseTensor& tensor, const ExponentConfig& config,
                         const Solution& solution);

struct MonolayerHits {
    std::vector<double> hub;
    std::vector<double> authority;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double sigma = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<TraceEntry> trace;
};

/// Nonlinear HITS on an order-2 adjacency: (A a)^alpha1 = lambda1 h,
/// (A^T h)^alpha2 = lambda2 a. Unique for alpha1 * alpha2 < 1; refuses the
/// linear case alpha1 = alpha2 = 1 and directs to classical_hits.
MonolayerHits monolayer_hits(const SparseTensor& adjacency, double alpha1, double alpha2,
                             const SolverConfig& solver_config = {});

struct ClassicalHits {
    std::vector<double> hub;
    std::vector<double> authority;
    double lambda1 = 0.0;  // final sup-norm of A a
    double lambda2 = 0.0;  // final sup-norm of A^T h
    double sigma = 0.0;    // sqrt(lambda1 * lambda2), the dominant singular value estimate
    int iterations = 0;
    bool converged = false;
};

/// Baseline linear HITS: alternating power iteration with sup-norm
/// normalization. On inputs that are not strongly connected the output is
/// start-dependent; this is the behavior the nonlinear model removes.
ClassicalHits classical_hits(const SparseTensor& adjacency,
                             const SolverConfig& solver_config = {});

}  // namespace mdhits

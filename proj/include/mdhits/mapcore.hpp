#pragma once

#include <span>
#include <vector>

#include "mdhits/spectral.hpp"
#include "mdhits/tensor.hpp"

namespace mdhits {

/// Tuple of m nonnegative score vectors, one per tensor mode. For the
/// temporal-multilayer profile these are (hub, authority, broadcast, receive,
/// time).
struct CentralityTuple {
    std::vector<std::vector<double>> slices;

    Index order() const noexcept { return static_cast<Index>(slices.size()); }

    static CentralityTuple ones(const TensorShape& shape);
};

/// True when every slice has sup-norm exactly 1.
bool is_normalized(const CentralityTuple& x);

/// True when x is zero exactly on the inactive indices and strictly positive
/// on the active ones (membership in the solution cone of the tensor).
bool conforms_to(const CentralityTuple& x, const SupportSet& support);

/// The multi-homogeneous map: slice s is the mode-s contraction of the tensor
/// against the other slices of x, raised entrywise to alpha_s, with
/// 0^alpha = 0 so the inactive zero pattern is preserved.
CentralityTuple apply_F_alpha(const SparseTensor& tensor, const ExponentConfig& config,
                              const CentralityTuple& x, const ContractOptions& options = {});

/// Divides each slice by its sup-norm. Throws InactiveModeError for an
/// identically zero slice (zero tensor, or an input vanishing on an entire
/// active support). Idempotent and invariant under per-slice scaling.
CentralityTuple normalize_G(const CentralityTuple& y);

/// Weighted norm sum_s beta_s * max_i |x_s[i]|, the stopping norm of the
/// iteration.
double beta_norm(const CentralityTuple& x, std::span<const double> beta);

/// Projective log-ratio distance on the solution cone:
///   sum_s beta_s * log( max_{active i} x_s[i]/y_s[i]
///                     * max_{active i} y_s[i]/x_s[i] ).
/// Symmetric, zero iff the tuples agree up to per-slice positive scaling, and
/// contracted by factor rho under one normalized map application. Computed in
/// log space; inactive indices are skipped. Both tuples must conform to the
/// support.
double hilbert_distance(const CentralityTuple& x, const CentralityTuple& y,
                        std::span<const double> beta, const SupportSet& support);

}  // namespace mdhits

#pragma once

#include <span>

#include "khess/hermitian.hpp"
#include "khess/spectrum.hpp"

namespace khess {

/// Generalized Newton-Maclaurin slack  (H_l/H_r)^{1/(l-r)} - (H_k/H_s)^{1/(k-s)}
/// with H_j = sigma_j / C(n,j).  Requires lam in Gamma_k and
/// k > s >= 0, l > r >= 0, k >= l, s >= r.  Nonnegative up to round-off.
double newton_maclaurin_slack(const Spectrum& lam, int k, int s, int l, int r);

/// Garding slack  sum_i sigma_{k-1}(lam|i) q_i - k sigma_k(lam)^{(k-1)/k} sigma_k(q)^{1/k}.
/// Requires lam, q in Gamma_k.
double garding_slack(const Spectrum& lam, const Spectrum& q, int k);

/// Hou-Ma-Wu slack  sigma_{k-1}(lam|1) - (k/n) sigma_k(lam)/lam_1  at the top
/// eigenvalue.  Requires lam in Gamma_k (which forces lam_1 > 0).
double hmw_slack(const Spectrum& lam, int k);

/// Smallest C >= 0 with
///   sum_i sigma_{k-1}(lam|i)|lam_i|
///     <= eps sum_{i!=r} sigma_{k-1}(lam|i) lam_i^2 + (C/eps) sum_i sigma_{k-1}(lam|i) + C.
/// r is the 0-based index into the descending-sorted lam.  Requires lam in
/// Gamma_k and eps > 0.
double quad_split_witness(const Spectrum& lam, int k, int r, double eps);

/// Schur-Horn slack  sum_i f_i d_i - sum_i f_i lam_i  with f ascending
/// nonnegative, d the diagonal of A sorted descending and lam the eigenvalues
/// of A sorted descending (the minimal pairing).  Nonnegative up to round-off.
double schur_horn_slack(const HermitianMatrix& a, std::span<const double> f_ascending);

double binomial(int n, int k);

}  // namespace khess

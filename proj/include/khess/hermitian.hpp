#pragma once

#include <array>
#include <complex>
#include <span>

#include "khess/spectrum.hpp"

namespace khess {

using cplx = std::complex<double>;

/// Small dense Hermitian matrix, dimension 1..8, row-major storage.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(int n);  // zero matrix

  static HermitianMatrix identity(int n);
  static HermitianMatrix diagonal(std::span<const double> d);
  /// Validates Hermitian symmetry to 1e-14 relative, then symmetrizes exactly.
  static HermitianMatrix from_entries(int n, std::span<const cplx> row_major);

  int dim() const { return n_; }
  cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
  /// Sets entry (i,j) and its conjugate mirror (j,i).
  void set(int i, int j, cplx v);
  std::span<const cplx> data() const { return {a_.data(), static_cast<size_t>(n_ * n_)}; }

  double frobenius() const;
  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

 private:
  int n_ = 0;
  std::array<cplx, kMaxDim * kMaxDim> a_{};
};

struct EigenSystem {
  int n = 0;
  std::array<double, kMaxDim> values{};            // sorted descending
  std::array<cplx, kMaxDim * kMaxDim> vectors{};   // column j = eigenvector of values[j]
  cplx vec(int i, int j) const { return vectors[static_cast<size_t>(i * n + j)]; }
};

/// Full eigensystem: closed form for n <= 2, cyclic Jacobi sweeps otherwise
/// (off-diagonal Frobenius norm below 1e-13 relative stop).
EigenSystem hermitian_eigensystem(const HermitianMatrix& h);

Spectrum hermitian_eigenvalues(const HermitianMatrix& h);

/// Lower-triangular Cholesky factor of a positive definite Hermitian matrix.
class Cholesky {
 public:
  /// Throws std::domain_error when the matrix is not positive definite.
  explicit Cholesky(const HermitianMatrix& a);
  static bool try_factor(const HermitianMatrix& a, Cholesky& out);

  int dim() const { return n_; }
  cplx l(int i, int j) const { return l_[static_cast<size_t>(i * n_ + j)]; }
  /// M = L^{-1} B L^{-dagger}, the Hermitian matrix whose spectrum is the
  /// pencil spectrum of (B, A).
  HermitianMatrix reduce(const HermitianMatrix& b) const;
  /// W = L^{-dagger} G L^{-1} for Hermitian G.
  HermitianMatrix push_inverse(const HermitianMatrix& g) const;

 private:
  Cholesky() = default;
  int n_ = 0;
  std::array<cplx, kMaxDim * kMaxDim> l_{};
};

/// Generalized eigenvalues of the pencil (B, A) with A positive definite,
/// sorted descending.  Throws std::domain_error when A is not PD.
Spectrum pencil_eigenvalues(const HermitianMatrix& b, const HermitianMatrix& a);

/// sigma_k of the eigenvalues of h.
double sigma_of_hermitian(const HermitianMatrix& h, int k);

/// Independent route: coefficient of theta^k in det(I + theta h), via the
/// Faddeev-LeVerrier trace recurrence.  Used as a cross-check oracle.
double sigma_of_hermitian_charpoly(const HermitianMatrix& h, int k);

/// d(sigma_k)/dh in the basis of h:  S diag(sigma_{k-1}(lam|i)) S^dagger.
/// Eigenvalues within 1e-10*||h||_F are grouped and share a common weight, so
/// the result does not depend on the eigenvector choice inside a cluster.
HermitianMatrix sigma_gradient(const HermitianMatrix& h, int k);

/// Weights sigma_{k-1}(lam|i) evaluated after clustering near-equal entries
/// of a descending lam to their cluster mean.
void sigma_gradient_weights(std::span<const double> lam_desc, int k, double cluster_tol,
                            std::span<double> w);

struct PencilLinearization {
  double sigma_k = 0.0;                 // sigma_k of the pencil spectrum
  Spectrum lambda;                      // pencil eigenvalues, descending
  HermitianMatrix weight;               // W with  d sigma_k = tr(W . dB)
};

/// sigma_k of the pencil (B, A) together with the derivative weight matrix:
/// for a Hermitian perturbation D of B,  d sigma_k = tr(W D).
PencilLinearization sigma_pencil_linearization(const HermitianMatrix& b, const HermitianMatrix& a,
                                               int k);

}  // namespace khess

#pragma once

#include <array>
#include <span>
#include <vector>

namespace khess {

// Hard cap on the eigenvalue-vector dimension handled by the pointwise
// algebra.  Verification suites go up to n=6, grids up to n=3.
inline constexpr int kMaxDim = 8;

/// Elementary symmetric polynomial sigma_k(lam).  Conventions: sigma_0 = 1,
/// sigma_k = 0 for k < 0 or k > n.
double sigma(std::span<const double> lam, int k);

/// All of sigma_0..sigma_m in one O(n*m) sweep over the coefficients of
/// prod_i (x + lam_i).  out must have size m+1.
void sigma_all(std::span<const double> lam, int m, std::span<double> out);

/// out[i] = sigma_{k-1}(lam with entry i deleted) for every i, computed by a
/// forward/backward prefix-coefficient sweep, O(n*k) total.
void sigma_deleted_all(std::span<const double> lam, int k, std::span<double> out);

/// sigma_{k-1} of lam with entry i (0-based) deleted, i.e. d(sigma_k)/d(lam_i).
double sigma_deleted(std::span<const double> lam, int k, int i);

struct ConeQuery {
  bool inside = false;   // sigma_j > 0 for all j = 1..k
  double margin = 0.0;   // min_j sigma_j(lam), j = 1..k
};

/// Gamma_k cone membership with margin.  Strict inequality, zero threshold;
/// callers impose their own slack on the reported margin.
ConeQuery in_gamma_k(std::span<const double> lam, int k);

/// Ordered eigenvalue vector, stored sorted descending (lam_1 >= ... >= lam_n).
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values);
  Spectrum(std::initializer_list<double> values);

  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
  std::span<const double> values() const { return v_; }

  double sigma(int k) const { return khess::sigma(v_, k); }
  double sigma_deleted(int k, int i) const { return khess::sigma_deleted(v_, k, i); }
  ConeQuery in_gamma(int k) const { return khess::in_gamma_k(v_, k); }

 private:
  std::vector<double> v_;
};

}  // namespace khess

#include "khess/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace khess {

double sigma(std::span<const double> lam, int k) {
  const int n = static_cast<int>(lam.size());
  if (k == 0) return 1.0;
  if (k < 0 || k > n) return 0.0;
  // e[j] accumulates the degree-j coefficient of prod_i (x + lam_i)
  std::array<double, kMaxDim + 1> e{};
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const int top = std::min(i + 1, k);
    for (int j = top; j >= 1; --j) e[j] += lam[i] * e[j - 1];
  }
  return e[k];
}

void sigma_all(std::span<const double> lam, int m, std::span<double> out) {
  const int n = static_cast<int>(lam.size());
  for (int j = 0; j <= m; ++j) out[j] = (j == 0) ? 1.0 : 0.0;
  for (int i = 0; i < n; ++i) {
    const int top = std::min(i + 1, m);
    for (int j = top; j >= 1; --j) out[j] += lam[i] * out[j - 1];
  }
}

void sigma_deleted_all(std::span<const double> lam, int k, std::span<double> out) {
  const int n = static_cast<int>(lam.size());
  const int m = k - 1;  // degree of the deleted polynomial we need
  if (m < 0 || m > n - 1) {
    std::fill(out.begin(), out.begin() + n, 0.0);
    return;
  }
  // pre[i][j] = sigma_j(lam_0..lam_{i-1}), suf[i][j] = sigma_j(lam_i..lam_{n-1})
  std::array<std::array<double, kMaxDim + 1>, kMaxDim + 1> pre{}, suf{};
  pre[0][0] = 1.0;
  for (int i = 0; i < n; ++i) {
    pre[i + 1] = pre[i];
    const int top = std::min(i + 1, m);
    for (int j = top; j >= 1; --j) pre[i + 1][j] += lam[i] * pre[i + 1][j - 1];
  }
  suf[n][0] = 1.0;
  for (int i = n - 1; i >= 0; --i) {
    suf[i] = suf[i + 1];
    const int top = std::min(n - i, m);
    for (int j = top; j >= 1; --j) suf[i][j] += lam[i] * suf[i][j - 1];
  }
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int a = 0; a <= m; ++a) s += pre[i][a] * suf[i + 1][m - a];
    out[i] = s;
  }
}

double sigma_deleted(std::span<const double> lam, int k, int i) {
  const int n = static_cast<int>(lam.size());
  if (i < 0 || i >= n) throw std::invalid_argument("sigma_deleted: index out of range");
  std::array<double, kMaxDim> rest;
  int m = 0;
  for (int j = 0; j < n; ++j)
    if (j != i) rest[m++] = lam[j];
  return sigma(std::span<const double>(rest.data(), static_cast<size_t>(m)), k - 1);
}

ConeQuery in_gamma_k(std::span<const double> lam, int k) {
  const int n = static_cast<int>(lam.size());
  if (k < 1 || k > n) throw std::invalid_argument("in_gamma_k: need 1 <= k <= n");
  std::array<double, kMaxDim + 1> e;
  sigma_all(lam, k, std::span<double>(e.data(), static_cast<size_t>(k + 1)));
  bool inside = true;
  double margin = e[1];
  for (int j = 1; j <= k; ++j) {
    inside = inside && (e[j] > 0.0);
    margin = std::min(margin, e[j]);
  }
  return {inside, margin};
}

Spectrum::Spectrum(std::vector<double> values) : v_(std::move(values)) {
  if (v_.empty() || v_.size() > kMaxDim) throw std::invalid_argument("Spectrum: dimension must be 1..8");
  for (double x : v_)
    if (!std::isfinite(x)) throw std::invalid_argument("Spectrum: entries must be finite");
  std::sort(v_.begin(), v_.end(), std::greater<double>());
}

Spectrum::Spectrum(std::initializer_list<double> values) : Spectrum(std::vector<double>(values)) {}

}  // namespace khess

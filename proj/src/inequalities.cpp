#include "khess/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace khess {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

namespace {

void require_gamma(const Spectrum& lam, int k, const char* who) {
  if (!lam.in_gamma(k).inside)
    throw std::invalid_argument(std::string(who) + ": eigenvalue vector is not in Gamma_k");
}

}  // namespace

double newton_maclaurin_slack(const Spectrum& lam, int k, int s, int l, int r) {
  const int n = lam.dim();
  if (!(k > s && s >= 0 && l > r && r >= 0 && k >= l && s >= r && k <= n))
    throw std::invalid_argument("newton_maclaurin_slack: invalid index combination");
  require_gamma(lam, k, "newton_maclaurin_slack");
  std::array<double, kMaxDim + 1> sig;
  sigma_all(lam.values(), k, std::span<double>(sig.data(), static_cast<size_t>(k + 1)));
  const auto h = [&](int j) { return sig[static_cast<size_t>(j)] / binomial(n, j); };
  const double lhs = std::pow(h(l) / h(r), 1.0 / (l - r));
  const double rhs = std::pow(h(k) / h(s), 1.0 / (k - s));
  return lhs - rhs;
}

double garding_slack(const Spectrum& lam, const Spectrum& q, int k) {
  const int n = lam.dim();
  if (q.dim() != n) throw std::invalid_argument("garding_slack: dimension mismatch");
  require_gamma(lam, k, "garding_slack");
  require_gamma(q, k, "garding_slack");
  std::array<double, kMaxDim> del;
  sigma_deleted_all(lam.values(), k, std::span<double>(del.data(), static_cast<size_t>(n)));
  double lhs = 0.0;
  for (int i = 0; i < n; ++i) lhs += del[static_cast<size_t>(i)] * q[i];
  const double sk = lam.sigma(k), sq = q.sigma(k);
  const double rhs = k * std::pow(sk, double(k - 1) / k) * std::pow(sq, 1.0 / k);
  return lhs - rhs;
}

double hmw_slack(const Spectrum& lam, int k) {
  const int n = lam.dim();
  require_gamma(lam, k, "hmw_slack");
  const double lam1 = lam[0];
  return lam.sigma_deleted(k, 0) - (double(k) / n) * lam.sigma(k) / lam1;
}

double quad_split_witness(const Spectrum& lam, int k, int r, double eps) {
  const int n = lam.dim();
  if (r < 0 || r >= n) throw std::invalid_argument("quad_split_witness: index out of range");
  if (!(eps > 0.0)) throw std::invalid_argument("quad_split_witness: eps must be positive");
  require_gamma(lam, k, "quad_split_witness");
  std::array<double, kMaxDim> del;
  sigma_deleted_all(lam.values(), k, std::span<double>(del.data(), static_cast<size_t>(n)));
  double lhs = 0.0, quad = 0.0, sum = 0.0;
  for (int i = 0; i < n; ++i) {
    lhs += del[static_cast<size_t>(i)] * std::abs(lam[i]);
    sum += del[static_cast<size_t>(i)];
    if (i != r) quad += del[static_cast<size_t>(i)] * lam[i] * lam[i];
  }
  const double deficit = lhs - eps * quad;
  return std::max(0.0, deficit / (sum / eps + 1.0));
}

double schur_horn_slack(const HermitianMatrix& a, std::span<const double> f_ascending) {
  const int n = a.dim();
  if (static_cast<int>(f_ascending.size()) != n)
    throw std::invalid_argument("schur_horn_slack: weight count mismatch");
  for (int i = 0; i < n; ++i) {
    if (f_ascending[static_cast<size_t>(i)] < 0.0)
      throw std::invalid_argument("schur_horn_slack: weights must be nonnegative");
    if (i > 0 && f_ascending[static_cast<size_t>(i)] < f_ascending[static_cast<size_t>(i - 1)])
      throw std::invalid_argument("schur_horn_slack: weights must be sorted ascending");
  }
  std::array<double, kMaxDim> diag;
  for (int i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = a(i, i).real();
  std::sort(diag.begin(), diag.begin() + n, std::greater<double>());
  const Spectrum lam = hermitian_eigenvalues(a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f_ascending[static_cast<size_t>(i)] * (diag[static_cast<size_t>(i)] - lam[i]);
  return s;
}

}  // namespace khess

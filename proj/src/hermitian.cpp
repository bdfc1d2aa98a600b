#include "khess/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace khess {

namespace {

double off_diagonal_norm(const HermitianMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i + 1; j < m.dim(); ++j) s += std::norm(m(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("HermitianMatrix: dimension must be 1..8");
}

HermitianMatrix HermitianMatrix::identity(int n) {
  HermitianMatrix m(n);
  for (int i = 0; i < n; ++i) m.a_[static_cast<size_t>(i * n + i)] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  HermitianMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n_; ++i) m.a_[static_cast<size_t>(i * m.n_ + i)] = d[static_cast<size_t>(i)];
  return m;
}

HermitianMatrix HermitianMatrix::from_entries(int n, std::span<const cplx> row_major) {
  HermitianMatrix m(n);
  if (row_major.size() != static_cast<size_t>(n * n))
    throw std::invalid_argument("HermitianMatrix: wrong entry count");
  double scale = 0.0, defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx v = row_major[static_cast<size_t>(i * n + j)];
      scale = std::max(scale, std::abs(v));
      defect = std::max(defect, std::abs(v - std::conj(row_major[static_cast<size_t>(j * n + i)])));
    }
  if (defect > 1e-14 * std::max(1.0, scale))
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian");
  for (int i = 0; i < n; ++i) {
    m.a_[static_cast<size_t>(i * n + i)] = row_major[static_cast<size_t>(i * n + i)].real();
    for (int j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (row_major[static_cast<size_t>(i * n + j)] +
                            std::conj(row_major[static_cast<size_t>(j * n + i)]));
      m.a_[static_cast<size_t>(i * n + j)] = v;
      m.a_[static_cast<size_t>(j * n + i)] = std::conj(v);
    }
  }
  return m;
}

void HermitianMatrix::set(int i, int j, cplx v) {
  if (i == j) {
    a_[static_cast<size_t>(i * n_ + i)] = v.real();
  } else {
    a_[static_cast<size_t>(i * n_ + j)] = v;
    a_[static_cast<size_t>(j * n_ + i)] = std::conj(v);
  }
}

double HermitianMatrix::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < n_ * n_; ++i) s += std::norm(a_[static_cast<size_t>(i)]);
  return std::sqrt(s);
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  for (int i = 0; i < n_ * n_; ++i) a_[static_cast<size_t>(i)] += o.a_[static_cast<size_t>(i)];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  for (int i = 0; i < n_ * n_; ++i) a_[static_cast<size_t>(i)] *= s;
  return *this;
}

namespace {

EigenSystem eig1(const HermitianMatrix& h) {
  EigenSystem e;
  e.n = 1;
  e.values[0] = h(0, 0).real();
  e.vectors[0] = 1.0;
  return e;
}

EigenSystem eig2(const HermitianMatrix& h) {
  EigenSystem e;
  e.n = 2;
  const double a = h(0, 0).real(), c = h(1, 1).real();
  const cplx b = h(0, 1);
  const double mid = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), std::abs(b));
  e.values[0] = mid + rad;
  e.values[1] = mid - rad;
  if (std::abs(b) == 0.0) {
    const bool first_larger = a >= c;
    e.vectors = {};
    e.vectors[first_larger ? 0 : 1] = 1.0;       // (0,0) entry
    e.vectors[first_larger ? 3 : 2] = 1.0;       // (1,*) entries
    return e;
  }
  // v = (b, lam - a) is an eigenvector of lam when b != 0
  for (int j = 0; j < 2; ++j) {
    cplx v0 = b, v1 = e.values[j] - a;
    const double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
    e.vectors[0 * 2 + j] = v0 / nrm;
    e.vectors[1 * 2 + j] = v1 / nrm;
  }
  return e;
}

// One complex Jacobi rotation zeroing entry (p,q) of a, accumulating into v.
void jacobi_rotate(std::array<cplx, kMaxDim * kMaxDim>& a, std::array<cplx, kMaxDim * kMaxDim>& v,
                   int n, int p, int q) {
  const cplx apq = a[static_cast<size_t>(p * n + q)];
  const double abs_apq = std::abs(apq);
  if (abs_apq == 0.0) return;
  const cplx phase = apq / abs_apq;
  const double app = a[static_cast<size_t>(p * n + p)].real();
  const double aqq = a[static_cast<size_t>(q * n + q)].real();
  const double tau = (aqq - app) / (2.0 * abs_apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double cth = 1.0 / std::sqrt(1.0 + t * t);
  const double sth = t * cth;
  // columns p,q of the unitary: [c, s*phase; -s*conj(phase), c] applied as a
  // congruence a <- J^dagger a J
  const cplx s_ph = sth * phase;
  for (int i = 0; i < n; ++i) {
    const cplx aip = a[static_cast<size_t>(i * n + p)];
    const cplx aiq = a[static_cast<size_t>(i * n + q)];
    a[static_cast<size_t>(i * n + p)] = cth * aip - std::conj(s_ph) * aiq;
    a[static_cast<size_t>(i * n + q)] = s_ph * aip + cth * aiq;
  }
  for (int j = 0; j < n; ++j) {
    const cplx apj = a[static_cast<size_t>(p * n + j)];
    const cplx aqj = a[static_cast<size_t>(q * n + j)];
    a[static_cast<size_t>(p * n + j)] = cth * apj - s_ph * aqj;
    a[static_cast<size_t>(q * n + j)] = std::conj(s_ph) * apj + cth * aqj;
  }
  for (int i = 0; i < n; ++i) {
    const cplx vip = v[static_cast<size_t>(i * n + p)];
    const cplx viq = v[static_cast<size_t>(i * n + q)];
    v[static_cast<size_t>(i * n + p)] = cth * vip - std::conj(s_ph) * viq;
    v[static_cast<size_t>(i * n + q)] = s_ph * vip + cth * viq;
  }
}

}  // namespace

EigenSystem hermitian_eigensystem(const HermitianMatrix& h) {
  const int n = h.dim();
  if (n == 1) return eig1(h);
  if (n == 2) {
    EigenSystem e = eig2(h);
    return e;
  }
  EigenSystem e;
  e.n = n;
  std::array<cplx, kMaxDim * kMaxDim> a{};
  std::array<cplx, kMaxDim * kMaxDim> v{};
  for (int i = 0; i < n; ++i) {
    v[static_cast<size_t>(i * n + i)] = 1.0;
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i * n + j)] = h(i, j);
  }
  const double scale = std::max(h.frobenius(), 1e-300);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a[static_cast<size_t>(p * n + q)]);
    if (std::sqrt(2.0 * off) < 1e-13 * scale) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, n, p, q);
  }
  std::array<int, kMaxDim> order;
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n, [&](int x, int y) {
    return a[static_cast<size_t>(x * n + x)].real() > a[static_cast<size_t>(y * n + y)].real();
  });
  for (int j = 0; j < n; ++j) {
    e.values[static_cast<size_t>(j)] = a[static_cast<size_t>(order[static_cast<size_t>(j)] * (n + 1))].real();
    for (int i = 0; i < n; ++i)
      e.vectors[static_cast<size_t>(i * n + j)] = v[static_cast<size_t>(i * n + order[static_cast<size_t>(j)])];
  }
  return e;
}

Spectrum hermitian_eigenvalues(const HermitianMatrix& h) {
  const EigenSystem e = hermitian_eigensystem(h);
  return Spectrum(std::vector<double>(e.values.begin(), e.values.begin() + e.n));
}

Cholesky::Cholesky(const HermitianMatrix& a) {
  if (!try_factor(a, *this)) throw std::domain_error("Cholesky: matrix is not positive definite");
}

bool Cholesky::try_factor(const HermitianMatrix& a, Cholesky& out) {
  const int n = a.dim();
  out.n_ = n;
  out.l_ = {};
  for (int j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(out.l_[static_cast<size_t>(j * n + k)]);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    out.l_[static_cast<size_t>(j * n + j)] = ljj;
    for (int i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (int k = 0; k < j; ++k)
        s -= out.l_[static_cast<size_t>(i * n + k)] * std::conj(out.l_[static_cast<size_t>(j * n + k)]);
      out.l_[static_cast<size_t>(i * n + j)] = s / ljj;
    }
  }
  return true;
}

HermitianMatrix Cholesky::reduce(const HermitianMatrix& b) const {
  const int n = n_;
  // X = L^{-1} B  (forward substitution on each column)
  std::array<cplx, kMaxDim * kMaxDim> x{};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cplx s = b(i, j);
      for (int k = 0; k < i; ++k) s -= l_[static_cast<size_t>(i * n + k)] * x[static_cast<size_t>(k * n + j)];
      x[static_cast<size_t>(i * n + j)] = s / l_[static_cast<size_t>(i * n + i)];
    }
  // M = X L^{-dagger}:  M L^dagger = X, solved rowwise into a raw scratch
  std::array<cplx, kMaxDim * kMaxDim> raw{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = x[static_cast<size_t>(i * n + j)];
      for (int k = 0; k < j; ++k)
        s -= raw[static_cast<size_t>(i * n + k)] * std::conj(l_[static_cast<size_t>(j * n + k)]);
      raw[static_cast<size_t>(i * n + j)] = s / std::conj(l_[static_cast<size_t>(j * n + j)]);
    }
  // the product is Hermitian up to round-off; symmetrize exactly
  HermitianMatrix out(n);
  for (int i = 0; i < n; ++i) {
    out.set(i, i, raw[static_cast<size_t>(i * n + i)].real());
    for (int j = i + 1; j < n; ++j)
      out.set(i, j, 0.5 * (raw[static_cast<size_t>(i * n + j)] + std::conj(raw[static_cast<size_t>(j * n + i)])));
  }
  return out;
}

HermitianMatrix Cholesky::push_inverse(const HermitianMatrix& g) const {
  const int n = n_;
  // Y = L^{-dagger} G:  L^dagger Y = G, back substitution per column
  std::array<cplx, kMaxDim * kMaxDim> y{};
  for (int j = 0; j < n; ++j)
    for (int i = n - 1; i >= 0; --i) {
      cplx s = g(i, j);
      for (int k = i + 1; k < n; ++k)
        s -= std::conj(l_[static_cast<size_t>(k * n + i)]) * y[static_cast<size_t>(k * n + j)];
      y[static_cast<size_t>(i * n + j)] = s / std::conj(l_[static_cast<size_t>(i * n + i)]);
    }
  // W = Y L^{-1}:  W L = Y, solved rowwise from the last column back
  std::array<cplx, kMaxDim * kMaxDim> w{};
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= 0; --j) {
      cplx s = y[static_cast<size_t>(i * n + j)];
      for (int k = j + 1; k < n; ++k) s -= w[static_cast<size_t>(i * n + k)] * l_[static_cast<size_t>(k * n + j)];
      w[static_cast<size_t>(i * n + j)] = s / l_[static_cast<size_t>(j * n + j)];
    }
  HermitianMatrix out(n);
  for (int i = 0; i < n; ++i) {
    out.set(i, i, w[static_cast<size_t>(i * n + i)].real());
    for (int j = i + 1; j < n; ++j)
      out.set(i, j, 0.5 * (w[static_cast<size_t>(i * n + j)] + std::conj(w[static_cast<size_t>(j * n + i)])));
  }
  return out;
}

Spectrum pencil_eigenvalues(const HermitianMatrix& b, const HermitianMatrix& a) {
  Cholesky chol(a);
  return hermitian_eigenvalues(chol.reduce(b));
}

double sigma_of_hermitian(const HermitianMatrix& h, int k) {
  const Spectrum lam = hermitian_eigenvalues(h);
  return lam.sigma(k);
}

double sigma_of_hermitian_charpoly(const HermitianMatrix& h, int k) {
  const int n = h.dim();
  if (k == 0) return 1.0;
  if (k < 0 || k > n) return 0.0;
  // power sums p_j = tr(h^j), then Newton's identities
  //   j e_j = sum_{i=1..j} (-1)^{i-1} e_{j-i} p_i
  // recover the characteristic polynomial coefficients e_j = sigma_j(lam).
  std::array<cplx, kMaxDim * kMaxDim> m{}, next{};
  for (int i = 0; i < n * n; ++i) m[static_cast<size_t>(i)] = h.data()[static_cast<size_t>(i)];
  std::array<double, kMaxDim + 1> p{}, e{};
  for (int j = 1; j <= k; ++j) {
    cplx tr = 0.0;
    for (int i = 0; i < n; ++i) tr += m[static_cast<size_t>(i * n + i)];
    p[static_cast<size_t>(j)] = tr.real();
    if (j == k) break;
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc) {
        cplx s = 0.0;
        for (int t = 0; t < n; ++t) s += h(r, t) * m[static_cast<size_t>(t * n + cc)];
        next[static_cast<size_t>(r * n + cc)] = s;
      }
    m = next;
  }
  e[0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    double s = 0.0;
    for (int i = 1; i <= j; ++i)
      s += (i % 2 == 1 ? 1.0 : -1.0) * e[static_cast<size_t>(j - i)] * p[static_cast<size_t>(i)];
    e[static_cast<size_t>(j)] = s / j;
  }
  return e[static_cast<size_t>(k)];
}

void sigma_gradient_weights(std::span<const double> lam_desc, int k, double cluster_tol,
                            std::span<double> w) {
  const int n = static_cast<int>(lam_desc.size());
  // cluster near-equal eigenvalues to their mean so weights are constant on
  // each eigenspace
  std::array<double, kMaxDim> lam;
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && lam_desc[static_cast<size_t>(i)] - lam_desc[static_cast<size_t>(j)] <= cluster_tol) ++j;
    double mean = 0.0;
    for (int t = i; t < j; ++t) mean += lam_desc[static_cast<size_t>(t)];
    mean /= (j - i);
    for (int t = i; t < j; ++t) lam[static_cast<size_t>(t)] = mean;
    i = j;
  }
  sigma_deleted_all(std::span<const double>(lam.data(), static_cast<size_t>(n)), k, w);
}

HermitianMatrix sigma_gradient(const HermitianMatrix& h, int k) {
  const int n = h.dim();
  const EigenSystem e = hermitian_eigensystem(h);
  std::array<double, kMaxDim> w;
  sigma_gradient_weights(std::span<const double>(e.values.data(), static_cast<size_t>(n)), k,
                         1e-10 * h.frobenius(), std::span<double>(w.data(), static_cast<size_t>(n)));
  HermitianMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx s = 0.0;
      for (int t = 0; t < n; ++t) s += w[static_cast<size_t>(t)] * e.vec(i, t) * std::conj(e.vec(j, t));
      g.set(i, j, i == j ? cplx(s.real(), 0.0) : s);
    }
  return g;
}

PencilLinearization sigma_pencil_linearization(const HermitianMatrix& b, const HermitianMatrix& a,
                                               int k) {
  Cholesky chol(a);
  const HermitianMatrix m = chol.reduce(b);
  const EigenSystem e = hermitian_eigensystem(m);
  const int n = m.dim();
  std::array<double, kMaxDim> w;
  sigma_gradient_weights(std::span<const double>(e.values.data(), static_cast<size_t>(n)), k,
                         1e-10 * m.frobenius(), std::span<double>(w.data(), static_cast<size_t>(n)));
  HermitianMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx s = 0.0;
      for (int t = 0; t < n; ++t) s += w[static_cast<size_t>(t)] * e.vec(i, t) * std::conj(e.vec(j, t));
      g.set(i, j, i == j ? cplx(s.real(), 0.0) : s);
    }
  PencilLinearization out;
  out.lambda = Spectrum(std::vector<double>(e.values.begin(), e.values.begin() + n));
  out.sigma_k = out.lambda.sigma(k);
  out.weight = chol.push_inverse(g);
  return out;
}

}  // namespace khess

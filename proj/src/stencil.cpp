#include "khess/stencil.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace khess {

namespace {

double apply_d2(const ScalarField& u, int i, int a) {
  double s = 0.0;
  for_each_d2_term(u.grid(), i, a, [&](NodeRef node, double w) { s += w * u.at(node); });
  return s;
}

double apply_mixed(const ScalarField& u, int i, int a, int b) {
  double s = 0.0;
  for_each_mixed_term(u.grid(), i, a, b, [&](NodeRef node, double w) { s += w * u.at(node); });
  return s;
}

double apply_d1(const ScalarField& u, int i, int a) {
  double s = 0.0;
  for_each_d1_term(u.grid(), i, a, [&](NodeRef node, double w) { s += w * u.at(node); });
  return s;
}

std::string point_label(const Grid& g, int i) {
  std::string s = "(";
  const auto x = g.interior_coord(i);
  for (size_t a = 0; a < x.size(); ++a) s += (a ? "," : "") + std::to_string(x[a]);
  return s + ")";
}

}  // namespace

HermitianMatrix complex_hessian_at(const ScalarField& u, int i) {
  const Grid& g = u.grid();
  const int n = g.spec().n;
  HermitianMatrix m(n);
  for (int j = 0; j < n; ++j) {
    // x^j axis j, y^j axis n + j
    m.set(j, j, 0.25 * (apply_d2(u, i, j) + apply_d2(u, i, n + j)));
    for (int k = j + 1; k < n; ++k) {
      const double re = apply_mixed(u, i, j, k) + apply_mixed(u, i, n + j, n + k);
      const double im = apply_mixed(u, i, j, n + k) - apply_mixed(u, i, n + j, k);
      m.set(j, k, 0.25 * cplx(re, im));
    }
  }
  return m;
}

HermitianField complex_hessian(const ScalarField& u) {
  const int n = u.grid().spec().n;
  HermitianField out(u.grid_ptr(), n);
  for (int i = 0; i < u.grid().num_interior(); ++i) out.set(i, complex_hessian_at(u, i));
  return out;
}

GradientResult gradient(const ScalarField& u, const HermitianField& alpha) {
  const Grid& g = u.grid();
  const int n = g.spec().n;
  GradientResult out{GradientField(u.grid_ptr(), n), 1.0};
  double max_sq = 0.0;
  for (int i = 0; i < g.num_interior(); ++i) {
    std::array<cplx, kMaxDim> grad;
    for (int j = 0; j < n; ++j) {
      grad[static_cast<size_t>(j)] =
          0.5 * cplx(apply_d1(u, i, j), -apply_d1(u, i, n + j));
      out.grad.at(i, j) = grad[static_cast<size_t>(j)];
    }
    // |grad u|^2 = 2 alpha^{j kbar} u_j u_kbar = 2 g^dagger A^{-1} g
    Cholesky chol(alpha.get(i));
    std::array<cplx, kMaxDim> w{};
    for (int r = 0; r < n; ++r) {
      cplx s = grad[static_cast<size_t>(r)];
      for (int t = 0; t < r; ++t) s -= chol.l(r, t) * w[static_cast<size_t>(t)];
      w[static_cast<size_t>(r)] = s / chol.l(r, r);
    }
    double sq = 0.0;
    for (int r = 0; r < n; ++r) sq += std::norm(w[static_cast<size_t>(r)]);
    max_sq = std::max(max_sq, 2.0 * sq);
  }
  out.k_value = 1.0 + max_sq;
  return out;
}

SpectrumField endomorphism_spectrum(const HermitianField& alpha, const HermitianField& chi,
                                    const ScalarField& u) {
  const Grid& g = u.grid();
  const int n = g.spec().n;
  SpectrumField out(u.grid_ptr(), n);
  for (int i = 0; i < g.num_interior(); ++i) {
    Cholesky chol;
    if (!Cholesky::try_factor(alpha.get(i), chol))
      throw std::domain_error("endomorphism_spectrum: metric not positive definite at " +
                              point_label(g, i));
    const HermitianMatrix b = chi.get(i) + complex_hessian_at(u, i);
    const Spectrum lam = hermitian_eigenvalues(chol.reduce(b));
    auto dst = out.at(i);
    for (int t = 0; t < n; ++t) dst[static_cast<size_t>(t)] = lam[t];
  }
  return out;
}

double hessian_sup_norm(const ScalarField& u, const HermitianField& alpha) {
  const Grid& g = u.grid();
  const int n = g.spec().n;
  double sup = 0.0;
  for (int i = 0; i < g.num_interior(); ++i) {
    Cholesky chol(alpha.get(i));
    const Spectrum lam = hermitian_eigenvalues(chol.reduce(complex_hessian_at(u, i)));
    double sq = 0.0;
    for (int t = 0; t < n; ++t) sq += lam[t] * lam[t];
    sup = std::max(sup, std::sqrt(sq));
  }
  return sup;
}

}  // namespace khess

#pragma once

#include "khess/field.hpp"

namespace khess {

// ---------------------------------------------------------------------------
// Second-order difference stencils on the grid, exact on quadratics.  The
// same weight enumeration drives both the Hessian evaluation and the sparse
// assembly of the linearized operator, so the Newton linearization is the
// exact derivative of the discrete residual.
// ---------------------------------------------------------------------------

/// Pure second difference along real axis a at interior point i:
/// f(node, weight) for each contribution;  sum w*u(node) ~ d^2 u / d x_a^2.
template <typename F>
void for_each_d2_term(const Grid& g, int i, int a, F&& f) {
  const double h = g.spacing();
  const Arm& lo = g.arm(i, a, 0);
  const Arm& hi = g.arm(i, a, 1);
  const double tm = lo.theta, tp = hi.theta;
  const double scale = 2.0 / (tm * tp * (tm + tp) * h * h);
  f(lo.node, scale * tp);
  f(NodeRef{NodeRef::Interior, i}, -scale * (tm + tp));
  f(hi.node, scale * tm);
}

/// First difference along axis a (unequal-arm centered, exact on quadratics).
template <typename F>
void for_each_d1_term(const Grid& g, int i, int a, F&& f) {
  const double h = g.spacing();
  const Arm& lo = g.arm(i, a, 0);
  const Arm& hi = g.arm(i, a, 1);
  const double tm = lo.theta, tp = hi.theta;
  const double den = tm * tp * (tm + tp) * h;
  f(lo.node, -tp * tp / den);
  f(NodeRef{NodeRef::Interior, i}, (tp * tp - tm * tm) / den);
  f(hi.node, tm * tm / den);
}

/// Mixed derivative d_a d_b (a != b).  Regular points use the centered
/// four-corner formula; near the ball boundary, where a corner is exterior,
/// it falls back to a nested difference of first derivatives (one-sided in a
/// when required), still exact on quadratics.
template <typename F>
void for_each_mixed_term(const Grid& g, int i, int a, int b, F&& f) {
  const double h = g.spacing();
  const NodeRef pp = g.lattice_offset2(i, a, +1, b, +1);
  const NodeRef pm = g.lattice_offset2(i, a, +1, b, -1);
  const NodeRef mp = g.lattice_offset2(i, a, -1, b, +1);
  const NodeRef mm = g.lattice_offset2(i, a, -1, b, -1);
  if (pp.kind != NodeRef::Other && pm.kind != NodeRef::Other && mp.kind != NodeRef::Other &&
      mm.kind != NodeRef::Other) {
    const double w = 1.0 / (4.0 * h * h);
    f(pp, w);
    f(mm, w);
    f(pm, -w);
    f(mp, -w);
    return;
  }
  // nested: outer difference along a of the first derivative along b,
  // evaluated at interior lattice points only
  const NodeRef aplus = g.lattice_offset2(i, a, +1, b, 0);
  const NodeRef aminus = g.lattice_offset2(i, a, -1, b, 0);
  const bool plus_ok = aplus.kind == NodeRef::Interior;
  const bool minus_ok = aminus.kind == NodeRef::Interior;
  const auto add_d1 = [&](int q, double outer_w) {
    for_each_d1_term(g, q, b, [&](NodeRef node, double w) { f(node, outer_w * w); });
  };
  if (plus_ok && minus_ok) {
    add_d1(aplus.index, 0.5 / h);
    add_d1(aminus.index, -0.5 / h);
  } else if (minus_ok) {
    add_d1(i, 1.0 / h);
    add_d1(aminus.index, -1.0 / h);
  } else if (plus_ok) {
    add_d1(aplus.index, 1.0 / h);
    add_d1(i, -1.0 / h);
  }
  // else: isolated sliver point, mixed term dropped
}

/// Complex Hessian entry matrix u_{j kbar} at interior point i:
///   1/4 [ (d_{x^j x^k} + d_{y^j y^k}) + i (d_{x^j y^k} - d_{y^j x^k}) ] u.
/// Hermitian by construction (upper triangle assembled, diagonal real).
HermitianMatrix complex_hessian_at(const ScalarField& u, int i);

HermitianField complex_hessian(const ScalarField& u);

struct GradientResult {
  GradientField grad;
  double k_value = 1.0;  // 1 + max over interior of  2 alpha^{j kbar} u_j u_kbar
};

/// Centered first differences of u in the z-convention du/dz^j =
/// (d_{x^j} - i d_{y^j})u / 2, plus the gradient scale K.
GradientResult gradient(const ScalarField& u, const HermitianField& alpha);

/// Eigenvalues of the pencil (chi + i ddbar u, alpha) per interior point,
/// sorted descending.  Throws std::domain_error naming the worst point when
/// alpha is not positive definite somewhere.
SpectrumField endomorphism_spectrum(const HermitianField& alpha, const HermitianField& chi,
                                    const ScalarField& u);

/// sup over interior points of the alpha-norm of i ddbar u (the l2 norm of
/// the pencil eigenvalues of (i ddbar u, alpha)).
double hessian_sup_norm(const ScalarField& u, const HermitianField& alpha);

}  // namespace khess

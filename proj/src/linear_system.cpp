#include "khess/linear_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace khess {

void SparseCSR::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int p = row_ptr[static_cast<size_t>(i)]; p < row_ptr[static_cast<size_t>(i + 1)]; ++p)
      s += val[static_cast<size_t>(p)] * x[static_cast<size_t>(col[static_cast<size_t>(p)])];
    y[static_cast<size_t>(i)] = s;
  }
}

SparseCSR SparseCSR::transposed() const {
  SparseCSR t;
  t.n = n;
  t.row_ptr.assign(static_cast<size_t>(n + 1), 0);
  for (int c : col) ++t.row_ptr[static_cast<size_t>(c + 1)];
  for (int i = 0; i < n; ++i) t.row_ptr[static_cast<size_t>(i + 1)] += t.row_ptr[static_cast<size_t>(i)];
  t.col.resize(col.size());
  t.val.resize(val.size());
  std::vector<int> cursor(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[static_cast<size_t>(i)]; p < row_ptr[static_cast<size_t>(i + 1)]; ++p) {
      const int c = col[static_cast<size_t>(p)];
      const int dst = cursor[static_cast<size_t>(c)]++;
      t.col[static_cast<size_t>(dst)] = i;
      t.val[static_cast<size_t>(dst)] = val[static_cast<size_t>(p)];
    }
  return t;
}

SparseCSR SparseCSR::half_sum(const SparseCSR& a, const SparseCSR& at) {
  SparseCSR s;
  s.n = a.n;
  s.row_ptr.assign(static_cast<size_t>(a.n + 1), 0);
  s.col.reserve(a.col.size());
  s.val.reserve(a.val.size());
  for (int i = 0; i < a.n; ++i) {
    int pa = a.row_ptr[static_cast<size_t>(i)], pb = at.row_ptr[static_cast<size_t>(i)];
    const int ea = a.row_ptr[static_cast<size_t>(i + 1)], eb = at.row_ptr[static_cast<size_t>(i + 1)];
    while (pa < ea || pb < eb) {
      const int ca = pa < ea ? a.col[static_cast<size_t>(pa)] : a.n;
      const int cb = pb < eb ? at.col[static_cast<size_t>(pb)] : a.n;
      if (ca == cb) {
        s.col.push_back(ca);
        s.val.push_back(0.5 * (a.val[static_cast<size_t>(pa++)] + at.val[static_cast<size_t>(pb++)]));
      } else if (ca < cb) {
        s.col.push_back(ca);
        s.val.push_back(0.5 * a.val[static_cast<size_t>(pa++)]);
      } else {
        s.col.push_back(cb);
        s.val.push_back(0.5 * at.val[static_cast<size_t>(pb++)]);
      }
    }
    s.row_ptr[static_cast<size_t>(i + 1)] = static_cast<int>(s.col.size());
  }
  return s;
}

double SparseCSR::max_asymmetry() const {
  const SparseCSR t = transposed();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    int pa = row_ptr[static_cast<size_t>(i)], pb = t.row_ptr[static_cast<size_t>(i)];
    const int ea = row_ptr[static_cast<size_t>(i + 1)], eb = t.row_ptr[static_cast<size_t>(i + 1)];
    while (pa < ea || pb < eb) {
      const int ca = pa < ea ? col[static_cast<size_t>(pa)] : n;
      const int cb = pb < eb ? t.col[static_cast<size_t>(pb)] : n;
      if (ca == cb)
        worst = std::max(worst, std::abs(val[static_cast<size_t>(pa++)] - t.val[static_cast<size_t>(pb++)]));
      else if (ca < cb)
        worst = std::max(worst, std::abs(val[static_cast<size_t>(pa++)]));
      else
        worst = std::max(worst, std::abs(t.val[static_cast<size_t>(pb++)]));
    }
  }
  return worst;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Jacobi-preconditioned CG on a symmetric positive definite matrix.
// Returns the achieved true-residual norm; x holds the iterate.
double pcg(const SparseCSR& a, std::span<const double> b, std::span<double> x, double abs_tol,
           int max_iters, int* iters_out) {
  const size_t n = b.size();
  std::vector<double> diag(n, 1.0);
  for (int i = 0; i < a.n; ++i)
    for (int p = a.row_ptr[static_cast<size_t>(i)]; p < a.row_ptr[static_cast<size_t>(i + 1)]; ++p)
      if (a.col[static_cast<size_t>(p)] == i && a.val[static_cast<size_t>(p)] != 0.0)
        diag[static_cast<size_t>(i)] = a.val[static_cast<size_t>(p)];
  std::vector<double> r(n), z(n), p(n), ap(n);
  a.multiply(x, r);
  for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  for (size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = dot(r, z);
  double rn = norm2(r);
  int it = 0;
  while (rn > abs_tol && it < max_iters) {
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) break;  // lost positive definiteness
    const double alpha = rz / pap;
    for (size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
    for (size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rn = norm2(r);
    ++it;
  }
  if (iters_out) *iters_out += it;
  return rn;
}

}  // namespace

std::vector<double> solve_dense(const SparseCSR& a, std::span<const double> b) {
  const int n = a.n;
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int p = a.row_ptr[static_cast<size_t>(i)]; p < a.row_ptr[static_cast<size_t>(i + 1)]; ++p)
      m[static_cast<size_t>(i) * n + a.col[static_cast<size_t>(p)]] = a.val[static_cast<size_t>(p)];
  std::vector<int> piv(static_cast<size_t>(n));
  std::iota(piv.begin(), piv.end(), 0);
  std::vector<double> x(b.begin(), b.end());
  for (int k = 0; k < n; ++k) {
    int best = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m[static_cast<size_t>(i) * n + k]) > std::abs(m[static_cast<size_t>(best) * n + k]))
        best = i;
    if (m[static_cast<size_t>(best) * n + k] == 0.0)
      throw LinearSolveError("dense solve: singular matrix", std::numeric_limits<double>::infinity());
    if (best != k) {
      for (int j = 0; j < n; ++j)
        std::swap(m[static_cast<size_t>(best) * n + j], m[static_cast<size_t>(k) * n + j]);
      std::swap(x[static_cast<size_t>(best)], x[static_cast<size_t>(k)]);
    }
    const double pivval = m[static_cast<size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      const double f = m[static_cast<size_t>(i) * n + k] / pivval;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j)
        m[static_cast<size_t>(i) * n + j] -= f * m[static_cast<size_t>(k) * n + j];
      x[static_cast<size_t>(i)] -= f * x[static_cast<size_t>(k)];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= m[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] = s / m[static_cast<size_t>(i) * n + i];
  }
  return x;
}

std::vector<double> solve_sparse(const SparseCSR& a, std::span<const double> b,
                                 const LinearSolveSettings& settings, LinearSolveStats* stats) {
  const size_t n = b.size();
  LinearSolveStats local;
  const double bn = norm2(b);
  std::vector<double> x(n, 0.0);
  if (bn == 0.0) {
    if (stats) *stats = local;
    return x;
  }
  const double target = settings.rel_tol * bn;
  const SparseCSR sym = SparseCSR::half_sum(a, a.transposed());
  double scale = 0.0;
  for (double v : a.val) scale = std::max(scale, std::abs(v));
  const bool symmetric = a.max_asymmetry() <= 1e-12 * scale;

  std::vector<double> r(n), d(n);
  double rn = bn;
  double prev_rn = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < 60; ++outer) {
    a.multiply(x, r);
    for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    rn = norm2(r);
    if (rn <= target) {
      local.achieved_residual = rn;
      local.outer_iterations = outer;
      if (stats) *stats = local;
      return x;
    }
    if (rn > 0.9 * prev_rn) break;  // defect correction stalled
    prev_rn = rn;
    // inner solve on the symmetric part; when the assembly is symmetric one
    // pass at the final tolerance finishes the job
    std::fill(d.begin(), d.end(), 0.0);
    const double inner_tol = symmetric ? 0.9 * target : std::max(0.9 * target, 1e-3 * rn);
    pcg(sym, r, d, inner_tol, settings.max_iters, &local.pcg_iterations);
    for (size_t i = 0; i < n; ++i) x[i] += d[i];
    ++local.outer_iterations;
  }
  // final residual for the iterate we have
  a.multiply(x, r);
  for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  rn = norm2(r);
  if (rn <= target) {
    local.achieved_residual = rn;
    if (stats) *stats = local;
    return x;
  }
  if (a.n <= 10000) {
    x = solve_dense(a, b);
    a.multiply(x, r);
    for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    local.achieved_residual = norm2(r);
    local.used_dense_fallback = true;
    if (stats) *stats = local;
    return x;
  }
  throw LinearSolveError(
      "linear solve did not converge: achieved residual " + std::to_string(rn) + " vs target " +
          std::to_string(target),
      rn);
}

AssembledOperator assemble_operator(const HermitianField& weight, const BoundaryField& bval) {
  const Grid& g = weight.grid();
  const int n = g.spec().n;
  const int ni = g.num_interior();
  AssembledOperator out;
  out.a.n = ni;
  out.a.row_ptr.assign(static_cast<size_t>(ni + 1), 0);
  out.boundary_fold.assign(static_cast<size_t>(ni), 0.0);
  std::vector<std::pair<int, double>> row;
  row.reserve(64);
  for (int i = 0; i < ni; ++i) {
    row.clear();
    double fold = 0.0;
    const HermitianMatrix w = weight.get(i);
    // add_term accumulates -L (the positive definite orientation)
    const auto add_term = [&](NodeRef node, double wgt) {
      if (node.kind == NodeRef::Interior)
        row.emplace_back(node.index, -wgt);
      else if (node.kind == NodeRef::Boundary)
        fold += wgt * bval[node.index];  // stays on the L side of the fold
    };
    for (int j = 0; j < n; ++j) {
      const double pjj = 0.25 * w(j, j).real();
      if (pjj != 0.0) {
        for_each_d2_term(g, i, j, [&](NodeRef nd, double ww) { add_term(nd, pjj * ww); });
        for_each_d2_term(g, i, n + j, [&](NodeRef nd, double ww) { add_term(nd, pjj * ww); });
      }
      for (int k = j + 1; k < n; ++k) {
        const double pjk = 0.5 * w(j, k).real();
        const double qjk = 0.5 * w(j, k).imag();
        if (pjk != 0.0) {
          for_each_mixed_term(g, i, j, k, [&](NodeRef nd, double ww) { add_term(nd, pjk * ww); });
          for_each_mixed_term(g, i, n + j, n + k,
                              [&](NodeRef nd, double ww) { add_term(nd, pjk * ww); });
        }
        if (qjk != 0.0) {
          for_each_mixed_term(g, i, j, n + k, [&](NodeRef nd, double ww) { add_term(nd, qjk * ww); });
          for_each_mixed_term(g, i, n + j, k,
                              [&](NodeRef nd, double ww) { add_term(nd, -qjk * ww); });
        }
      }
    }
    std::sort(row.begin(), row.end());
    for (size_t p = 0; p < row.size(); ++p) {
      if (!out.a.col.empty() && out.a.col.size() > static_cast<size_t>(out.a.row_ptr[static_cast<size_t>(i)]) &&
          out.a.col.back() == row[p].first) {
        out.a.val.back() += row[p].second;
      } else {
        out.a.col.push_back(row[p].first);
        out.a.val.push_back(row[p].second);
      }
    }
    out.a.row_ptr[static_cast<size_t>(i + 1)] = static_cast<int>(out.a.col.size());
    out.boundary_fold[static_cast<size_t>(i)] = fold;
  }
  return out;
}

ScalarField solve_linear_pde(const HermitianField& weight, const ScalarField& f,
                             const BoundaryField& bval, const LinearSolveSettings& settings,
                             LinearSolveStats* stats) {
  const Grid& g = weight.grid();
  const AssembledOperator op = assemble_operator(weight, bval);
  // L(w) = f with A = -L folds to  A w_int = fold - f
  std::vector<double> rhs(static_cast<size_t>(g.num_interior()));
  for (int i = 0; i < g.num_interior(); ++i)
    rhs[static_cast<size_t>(i)] = op.boundary_fold[static_cast<size_t>(i)] - f.interior(i);
  const std::vector<double> x = solve_sparse(op.a, rhs, settings, stats);
  ScalarField out(f.grid_ptr());
  for (int i = 0; i < g.num_interior(); ++i) out.interior(i) = x[static_cast<size_t>(i)];
  for (int b = 0; b < g.num_boundary(); ++b) out.boundary(b) = bval[b];
  return out;
}

namespace {

std::string coord_label(const Grid& g, int i) {
  std::string s = "(";
  const auto x = g.interior_coord(i);
  for (size_t a = 0; a < x.size(); ++a) s += (a ? "," : "") + std::to_string(x[a]);
  return s + ")";
}

}  // namespace

ScalarField linearized_solve(const HermitianField& coeff, const ScalarField& rhs,
                             const LinearSolveSettings& settings) {
  const Grid& g = coeff.grid();
  const int n = coeff.matrix_dim();
  HermitianField weight(rhs.grid_ptr(), n);
  for (int i = 0; i < g.num_interior(); ++i) {
    const HermitianMatrix c = coeff.get(i);
    Cholesky chol;
    if (!Cholesky::try_factor(c, chol))
      throw EllipticityError("linearized_solve: coefficient not positive definite at " +
                             coord_label(g, i));
    HermitianMatrix w(n);
    for (int r = 0; r < n; ++r)
      for (int cix = r; cix < n; ++cix) w.set(r, cix, std::conj(c(r, cix)));
    weight.set(i, w);
  }
  BoundaryField zero(rhs.grid_ptr());
  return solve_linear_pde(weight, rhs, zero, settings);
}

}  // namespace khess

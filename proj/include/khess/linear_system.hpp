#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "khess/field.hpp"
#include "khess/stencil.hpp"

namespace khess {

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EllipticityError : public SolveError {
 public:
  using SolveError::SolveError;
};

class LinearSolveError : public SolveError {
 public:
  LinearSolveError(const std::string& msg, double achieved) : SolveError(msg), achieved_residual(achieved) {}
  double achieved_residual;
};

struct SparseCSR {
  int n = 0;
  std::vector<int> row_ptr, col;
  std::vector<double> val;

  void multiply(std::span<const double> x, std::span<double> y) const;
  SparseCSR transposed() const;
  static SparseCSR half_sum(const SparseCSR& a, const SparseCSR& at);  // (A + A^T)/2
  double max_asymmetry() const;  // max |A_ij - A_ji| over stored entries
};

/// The discrete operator  L(w) = tr(W . complex_hessian(w))  over interior
/// unknowns, assembled as A = -L (positive definite side) together with the
/// fold of prescribed boundary values:  A w_int = fold - f  solves L(w) = f,
/// w|boundary = bval.
struct AssembledOperator {
  SparseCSR a;
  std::vector<double> boundary_fold;
};

AssembledOperator assemble_operator(const HermitianField& weight, const BoundaryField& bval);

struct LinearSolveStats {
  int pcg_iterations = 0;
  int outer_iterations = 0;
  double achieved_residual = 0.0;  // ||b - A x||_2
  bool used_dense_fallback = false;
};

struct LinearSolveSettings {
  double rel_tol = 1e-10;
  int max_iters = 5000;
};

/// Solves A x = b.  Jacobi-preconditioned CG on the symmetrized matrix, run
/// inside a defect-correction loop that drives the true residual below
/// rel_tol*||b||; dense LU fallback for systems under 10^4 unknowns.  Throws
/// LinearSolveError (with the achieved residual) on failure.
std::vector<double> solve_sparse(const SparseCSR& a, std::span<const double> b,
                                 const LinearSolveSettings& settings, LinearSolveStats* stats = nullptr);

/// Dense LU with partial pivoting; independent direct route used as oracle
/// and as the small-system fallback.
std::vector<double> solve_dense(const SparseCSR& a, std::span<const double> b);

/// L(w) = f with w = bval on the boundary, where L(w) = tr(W . i ddbar w).
/// Throws EllipticityError when W is not positive definite somewhere.
ScalarField solve_linear_pde(const HermitianField& weight, const ScalarField& f,
                             const BoundaryField& bval, const LinearSolveSettings& settings,
                             LinearSolveStats* stats = nullptr);

/// Spec surface: sigma_k^{p qbar} coefficient field, zero Dirichlet data.
/// coeff pairs with the Hessian as  sum_pq coeff_pq (dw)_{p qbar}, so the
/// assembly weight is its transpose.
ScalarField linearized_solve(const HermitianField& coeff, const ScalarField& rhs,
                             const LinearSolveSettings& settings);

}  // namespace khess

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "khess/field.hpp"
#include "khess/solver_config.hpp"

namespace khess {

/// A named analytic function from the fixed catalog, with its exact complex
/// Hessian (used for manufactured right-hand sides and error measurement).
struct AnalyticFunction {
  std::string name;
  std::function<double(std::span<const double>)> value;
  std::function<HermitianMatrix(std::span<const double>)> hessian;
};

/// Catalog entries:
///   quadratic                 |z|^2
///   scaled_quadratic:<c>      c |z|^2
///   mms_quartic               |z|^2 + 0.1 |z_1|^4
///   skew_blend:<c>            |z|^2 + 2c Im(z_1 conj(z_2))   (needs n >= 2)
/// Throws std::invalid_argument for unknown names or bad parameters.
AnalyticFunction catalog_function(const std::string& spec_text, int n);

/// Metric specs: identity | diag:<v1,...,vn> | conformal:<c>  ((1+c|z|^2) I)
std::function<HermitianMatrix(std::span<const double>)> metric_family(const std::string& spec_text,
                                                                      int n);

/// chi specs: zero | diag:<v1,...,vn> | skew:<c>  (constant off-diagonal i c)
std::function<HermitianMatrix(std::span<const double>)> chi_family(const std::string& spec_text,
                                                                   int n);

/// Everything a solve needs: the grid, the equation data and the subsolution.
struct ProblemData {
  GridPtr grid;
  int k = 1;
  HermitianField alpha;
  HermitianField chi;
  ScalarField psi;            // interior right-hand side
  BoundaryField phi;          // Dirichlet data
  ScalarField subsolution;    // interior from the catalog entry, phi on the boundary
};

struct ProblemInputs {
  DomainSpec domain;
  int k = 2;
  std::string alpha_spec = "identity";
  std::string chi_spec = "zero";
  std::string psi_spec;           // constant:<v> | sigma_of:<fn>; default sigma_of:<subsolution>
  std::string phi_spec;           // trace:<fn>; default trace:<subsolution>
  std::string subsolution_spec = "quadratic";
  std::string exact_spec;         // optional catalog reference solution
};

/// Builds fields from the named specs.  psi given as sigma_of:<fn> is the
/// exact pointwise sigma_k of the pencil (chi + Hess fn, alpha).
ProblemData build_problem(const ProblemInputs& in);

/// The exact reference named by exact_spec, if any.
std::optional<AnalyticFunction> exact_reference(const ProblemInputs& in);

/// Samples an analytic function with phi on the boundary nodes (the initial
/// field convention for solves).
ScalarField sample_with_boundary(GridPtr grid, const AnalyticFunction& f, const BoundaryField& phi);

}  // namespace khess

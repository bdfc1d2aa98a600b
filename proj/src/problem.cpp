#include "khess/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace khess {

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(std::stod(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

// splits "name:arg" into (name, arg)
std::pair<std::string, std::string> split_spec(const std::string& s) {
  const size_t c = s.find(':');
  if (c == std::string::npos) return {s, ""};
  return {s.substr(0, c), s.substr(c + 1)};
}

double abs2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

AnalyticFunction catalog_function(const std::string& spec_text, int n) {
  const auto [name, arg] = split_spec(spec_text);
  if (name == "quadratic") {
    return {spec_text, [](std::span<const double> x) { return abs2(x); },
            [n](std::span<const double>) { return HermitianMatrix::identity(n); }};
  }
  if (name == "scaled_quadratic") {
    const double c = std::stod(arg);
    return {spec_text, [c](std::span<const double> x) { return c * abs2(x); },
            [n, c](std::span<const double>) {
              HermitianMatrix m = HermitianMatrix::identity(n);
              m *= c;
              return m;
            }};
  }
  if (name == "mms_quartic") {
    // |z|^2 + 0.1 |z_1|^4, with |z_1|^2 = x_1^2 + y_1^2 (axes 0 and n)
    return {spec_text,
            [n](std::span<const double> x) {
              const double r1 = x[0] * x[0] + x[static_cast<size_t>(n)] * x[static_cast<size_t>(n)];
              return abs2(x) + 0.1 * r1 * r1;
            },
            [n](std::span<const double> x) {
              HermitianMatrix m = HermitianMatrix::identity(n);
              const double r1 = x[0] * x[0] + x[static_cast<size_t>(n)] * x[static_cast<size_t>(n)];
              m.set(0, 0, 1.0 + 0.4 * r1);
              return m;
            }};
  }
  if (name == "skew_blend") {
    if (n < 2) throw std::invalid_argument("catalog: skew_blend needs n >= 2");
    const double c = std::stod(arg);
    return {spec_text,
            [n, c](std::span<const double> x) {
              // 2 Im(z_1 conj(z_2)) = 2 (y_1 x_2 - x_1 y_2)
              return abs2(x) + 2.0 * c *
                                   (x[static_cast<size_t>(n)] * x[1] -
                                    x[0] * x[static_cast<size_t>(n + 1)]);
            },
            [n, c](std::span<const double>) {
              HermitianMatrix m = HermitianMatrix::identity(n);
              m.set(0, 1, cplx(0.0, -c));
              return m;
            }};
  }
  throw std::invalid_argument("catalog: unknown analytic function '" + spec_text + "'");
}

std::function<HermitianMatrix(std::span<const double>)> metric_family(const std::string& spec_text,
                                                                      int n) {
  const auto [name, arg] = split_spec(spec_text);
  if (name == "identity")
    return [n](std::span<const double>) { return HermitianMatrix::identity(n); };
  if (name == "diag") {
    const std::vector<double> d = parse_list(arg);
    if (static_cast<int>(d.size()) != n) throw std::invalid_argument("metric diag: need n entries");
    for (double v : d)
      if (!(v > 0.0)) throw std::invalid_argument("metric diag: entries must be positive");
    return [d](std::span<const double>) { return HermitianMatrix::diagonal(d); };
  }
  if (name == "conformal") {
    const double c = std::stod(arg);
    if (c <= -0.5) throw std::invalid_argument("metric conformal: factor must keep 1+c|z|^2 > 0");
    return [n, c](std::span<const double> x) {
      HermitianMatrix m = HermitianMatrix::identity(n);
      m *= 1.0 + c * abs2(x);
      return m;
    };
  }
  throw std::invalid_argument("metric: unknown family '" + spec_text + "'");
}

std::function<HermitianMatrix(std::span<const double>)> chi_family(const std::string& spec_text,
                                                                   int n) {
  const auto [name, arg] = split_spec(spec_text);
  if (name == "zero")
    return [n](std::span<const double>) { return HermitianMatrix(n); };
  if (name == "diag") {
    const std::vector<double> d = parse_list(arg);
    if (static_cast<int>(d.size()) != n) throw std::invalid_argument("chi diag: need n entries");
    return [d](std::span<const double>) { return HermitianMatrix::diagonal(d); };
  }
  if (name == "skew") {
    if (n < 2) throw std::invalid_argument("chi skew: needs n >= 2");
    const double c = std::stod(arg);
    return [n, c](std::span<const double>) {
      HermitianMatrix m(n);
      m.set(0, 1, cplx(0.0, -c));
      return m;
    };
  }
  throw std::invalid_argument("chi: unknown family '" + spec_text + "'");
}

ProblemData build_problem(const ProblemInputs& in) {
  ProblemInputs cfg = in;
  if (cfg.psi_spec.empty()) cfg.psi_spec = "sigma_of:" + cfg.subsolution_spec;
  if (cfg.phi_spec.empty()) cfg.phi_spec = "trace:" + cfg.subsolution_spec;
  const int n = cfg.domain.n;
  if (cfg.k < 1 || cfg.k > n) throw std::invalid_argument("build_problem: need 1 <= k <= n");

  ProblemData p;
  p.grid = make_grid(cfg.domain);
  p.k = cfg.k;
  const auto alpha_fn = metric_family(cfg.alpha_spec, n);
  const auto chi_fn = chi_family(cfg.chi_spec, n);
  p.alpha = HermitianField::sample(p.grid, n, alpha_fn);
  p.chi = HermitianField::sample(p.grid, n, chi_fn);

  const auto [psi_kind, psi_arg] = split_spec(cfg.psi_spec);
  if (psi_kind == "constant") {
    const double v = std::stod(psi_arg);
    p.psi = ScalarField::sample(p.grid, [v](std::span<const double>) { return v; });
  } else if (psi_kind == "sigma_of") {
    const AnalyticFunction f = catalog_function(psi_arg, n);
    const int k = cfg.k;
    p.psi = ScalarField::sample(p.grid, [&, k](std::span<const double> x) {
      return pencil_eigenvalues(chi_fn(x) + f.hessian(x), alpha_fn(x)).sigma(k);
    });
  } else {
    throw std::invalid_argument("psi: unknown spec '" + cfg.psi_spec + "'");
  }

  const auto [phi_kind, phi_arg] = split_spec(cfg.phi_spec);
  if (phi_kind != "trace") throw std::invalid_argument("phi: unknown spec '" + cfg.phi_spec + "'");
  const AnalyticFunction phi_fn = catalog_function(phi_arg, n);
  p.phi = BoundaryField::sample(p.grid, phi_fn.value);

  const AnalyticFunction sub = catalog_function(cfg.subsolution_spec, n);
  p.subsolution = sample_with_boundary(p.grid, sub, p.phi);
  return p;
}

std::optional<AnalyticFunction> exact_reference(const ProblemInputs& in) {
  if (in.exact_spec.empty()) return std::nullopt;
  return catalog_function(in.exact_spec, in.domain.n);
}

ScalarField sample_with_boundary(GridPtr grid, const AnalyticFunction& f, const BoundaryField& phi) {
  ScalarField out(grid);
  for (int i = 0; i < grid->num_interior(); ++i) out.interior(i) = f.value(grid->interior_coord(i));
  for (int b = 0; b < grid->num_boundary(); ++b) out.boundary(b) = phi[b];
  return out;
}

}  // namespace khess

#include "khess/field.hpp"

namespace khess {

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(std::span<const double>)>& f) {
  ScalarField out(grid);
  for (int i = 0; i < grid->num_interior(); ++i) out.interior(i) = f(grid->interior_coord(i));
  for (int b = 0; b < grid->num_boundary(); ++b) out.boundary(b) = f(grid->boundary_coord(b));
  return out;
}

BoundaryField BoundaryField::sample(GridPtr grid,
                                    const std::function<double(std::span<const double>)>& f) {
  BoundaryField out(grid);
  for (int b = 0; b < grid->num_boundary(); ++b) out[b] = f(grid->boundary_coord(b));
  return out;
}

HermitianMatrix HermitianField::get(int i) const {
  HermitianMatrix m(n_);
  const cplx* p = packed_.data() + static_cast<size_t>(i) * n_ * n_;
  for (int r = 0; r < n_; ++r)
    for (int c = r; c < n_; ++c) m.set(r, c, p[r * n_ + c]);
  return m;
}

void HermitianField::set(int i, const HermitianMatrix& m) {
  cplx* p = packed_.data() + static_cast<size_t>(i) * n_ * n_;
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) p[r * n_ + c] = m(r, c);
}

HermitianField HermitianField::sample(GridPtr grid, int n,
                                      const std::function<HermitianMatrix(std::span<const double>)>& f) {
  HermitianField out(grid, n);
  for (int i = 0; i < grid->num_interior(); ++i) out.set(i, f(grid->interior_coord(i)));
  return out;
}

HermitianField HermitianField::constant(GridPtr grid, const HermitianMatrix& m) {
  HermitianField out(grid, m.dim());
  for (int i = 0; i < grid->num_interior(); ++i) out.set(i, m);
  return out;
}

}  // namespace khess

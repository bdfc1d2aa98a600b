#include "khess/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace khess {

namespace {
constexpr double kOnSphereTol = 1e-12;
}

void DomainSpec::validate() const {
  if (n < 1 || n > 3) throw std::invalid_argument("DomainSpec: complex dimension must be 1..3");
  if (points_per_axis < 5 || points_per_axis % 2 == 0)
    throw std::invalid_argument("DomainSpec: points_per_axis must be odd and >= 5");
  if (shape == Shape::Ball && points_per_axis < 9)
    throw std::invalid_argument("DomainSpec: ball shape requires points_per_axis >= 9");
}

Grid::Grid(const DomainSpec& spec) : spec_(spec) {
  spec_.validate();
  const int d = real_dim();
  const long p = spec_.points_per_axis;
  stride_[static_cast<size_t>(d - 1)] = 1;
  for (int a = d - 2; a >= 0; --a) stride_[static_cast<size_t>(a)] = stride_[static_cast<size_t>(a + 1)] * p;
  lattice_size_ = stride_[0] * p;
  kind_.assign(static_cast<size_t>(lattice_size_), NodeRef::Other);
  node_id_.assign(static_cast<size_t>(lattice_size_), -1);
  if (spec_.shape == Shape::Box)
    build_box();
  else
    build_ball();
  if (num_interior() == 0) throw std::invalid_argument("Grid: resolution too coarse, no interior points");
}

std::span<const double> Grid::interior_coord(int i) const {
  return {interior_coords_.data() + static_cast<size_t>(i) * real_dim(), static_cast<size_t>(real_dim())};
}

std::span<const double> Grid::boundary_coord(int b) const {
  return {boundary_coords_.data() + static_cast<size_t>(b) * real_dim(), static_cast<size_t>(real_dim())};
}

NodeRef Grid::lattice_offset(int i, std::span<const int> offsets) const {
  const int d = real_dim();
  const int p = spec_.points_per_axis;
  long flat = interior_flat_[static_cast<size_t>(i)];
  for (int a = 0; a < d; ++a) {
    const long ia = (flat / stride_[static_cast<size_t>(a)]) % p + offsets[static_cast<size_t>(a)];
    if (ia < 0 || ia >= p) return {};
    flat += static_cast<long>(offsets[static_cast<size_t>(a)]) * stride_[static_cast<size_t>(a)];
  }
  const auto k = static_cast<NodeRef::Kind>(kind_[static_cast<size_t>(flat)]);
  if (k == NodeRef::Other) return {};
  return {k, node_id_[static_cast<size_t>(flat)]};
}

NodeRef Grid::lattice_offset2(int i, int a, int da, int b, int db) const {
  std::array<int, 6> off{};
  off[static_cast<size_t>(a)] = da;
  off[static_cast<size_t>(b)] = db;
  return lattice_offset(i, std::span<const int>(off.data(), static_cast<size_t>(real_dim())));
}

void Grid::build_box() {
  const int d = real_dim();
  const int p = spec_.points_per_axis;
  const double h = spacing();
  std::array<int, 6> idx{};
  std::array<double, 6> x{};
  int n_boundary = 0;
  for (long flat = 0; flat < lattice_size_; ++flat) {
    bool on_face = false;
    for (int a = 0; a < d; ++a) {
      idx[static_cast<size_t>(a)] = static_cast<int>((flat / stride_[static_cast<size_t>(a)]) % p);
      x[static_cast<size_t>(a)] = -1.0 + idx[static_cast<size_t>(a)] * h;
      on_face = on_face || idx[static_cast<size_t>(a)] == 0 || idx[static_cast<size_t>(a)] == p - 1;
    }
    if (on_face) {
      kind_[static_cast<size_t>(flat)] = NodeRef::Boundary;
      node_id_[static_cast<size_t>(flat)] = n_boundary++;
      boundary_coords_.insert(boundary_coords_.end(), x.begin(), x.begin() + d);
    } else {
      kind_[static_cast<size_t>(flat)] = NodeRef::Interior;
      node_id_[static_cast<size_t>(flat)] = static_cast<int>(interior_flat_.size());
      interior_flat_.push_back(flat);
      interior_coords_.insert(interior_coords_.end(), x.begin(), x.begin() + d);
    }
  }
  arms_.resize(static_cast<size_t>(num_interior()) * d * 2);
  for (int i = 0; i < num_interior(); ++i)
    for (int a = 0; a < d; ++a)
      for (int dir = 0; dir < 2; ++dir) {
        const long nb = interior_flat_[static_cast<size_t>(i)] +
                        (dir == 0 ? -1 : +1) * stride_[static_cast<size_t>(a)];
        Arm& arm = arms_[static_cast<size_t>((i * d + a) * 2 + dir)];
        arm.node = {static_cast<NodeRef::Kind>(kind_[static_cast<size_t>(nb)]),
                    node_id_[static_cast<size_t>(nb)]};
        arm.theta = 1.0;
      }
}

void Grid::build_ball() {
  const int d = real_dim();
  const int p = spec_.points_per_axis;
  const double h = spacing();
  std::array<double, 6> x{};
  int n_boundary = 0;
  // classify lattice: inside / on sphere / outside
  for (long flat = 0; flat < lattice_size_; ++flat) {
    double rho = -1.0;
    for (int a = 0; a < d; ++a) {
      const int ia = static_cast<int>((flat / stride_[static_cast<size_t>(a)]) % p);
      const double xa = -1.0 + ia * h;
      x[static_cast<size_t>(a)] = xa;
      rho += xa * xa;
    }
    if (rho < -kOnSphereTol) {
      kind_[static_cast<size_t>(flat)] = NodeRef::Interior;
      node_id_[static_cast<size_t>(flat)] = static_cast<int>(interior_flat_.size());
      interior_flat_.push_back(flat);
      interior_coords_.insert(interior_coords_.end(), x.begin(), x.begin() + d);
    } else if (rho <= kOnSphereTol) {
      kind_[static_cast<size_t>(flat)] = NodeRef::Boundary;
      node_id_[static_cast<size_t>(flat)] = n_boundary++;
      boundary_coords_.insert(boundary_coords_.end(), x.begin(), x.begin() + d);
    }
  }
  // arms: regular towards inside/on-sphere lattice points, Shortley-Weller
  // crossings where the lattice neighbor lies outside
  arms_.resize(static_cast<size_t>(num_interior()) * d * 2);
  for (int i = 0; i < num_interior(); ++i) {
    const auto xc = interior_coord(i);
    for (int a = 0; a < d; ++a)
      for (int dir = 0; dir < 2; ++dir) {
        const double sgn = dir == 0 ? -1.0 : 1.0;
        const long nb = interior_flat_[static_cast<size_t>(i)] +
                        static_cast<long>(sgn) * stride_[static_cast<size_t>(a)];
        Arm& arm = arms_[static_cast<size_t>((i * d + a) * 2 + dir)];
        const auto k = static_cast<NodeRef::Kind>(kind_[static_cast<size_t>(nb)]);
        if (k != NodeRef::Other) {
          arm.node = {k, node_id_[static_cast<size_t>(nb)]};
          arm.theta = 1.0;
          continue;
        }
        // crossing of |x + t*sgn*h*e_a|^2 = 1 with t in (0,1)
        double rest = 0.0;
        for (int b = 0; b < d; ++b)
          if (b != a) rest += xc[static_cast<size_t>(b)] * xc[static_cast<size_t>(b)];
        const double root = std::sqrt(std::max(0.0, 1.0 - rest));
        const double target = sgn > 0 ? root : -root;
        const double theta = (target - xc[static_cast<size_t>(a)]) / (sgn * h);
        if (!(theta > 1e-6 && theta <= 1.0 + 1e-12))
          throw std::runtime_error("Grid: pathological Shortley-Weller crossing (theta=" +
                                   std::to_string(theta) + ")");
        std::array<double, 6> bx{};
        for (int b = 0; b < d; ++b) bx[static_cast<size_t>(b)] = xc[static_cast<size_t>(b)];
        bx[static_cast<size_t>(a)] = target;
        arm.node = {NodeRef::Boundary, n_boundary++};
        arm.theta = std::min(theta, 1.0);
        boundary_coords_.insert(boundary_coords_.end(), bx.begin(), bx.begin() + d);
      }
  }
}

GridPtr make_grid(const DomainSpec& spec) { return std::make_shared<Grid>(spec); }

}  // namespace khess

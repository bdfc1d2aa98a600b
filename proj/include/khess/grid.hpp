#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "khess/spectrum.hpp"

namespace khess {

enum class Shape { Box, Ball };

/// Coordinate-domain model: box [-1,1]^{2n} or unit ball {|z|^2 < 1} in C^n,
/// discretized with points_per_axis lattice points per real axis.
struct DomainSpec {
  int n = 2;                  // complex dimension, 1..3
  Shape shape = Shape::Box;
  int points_per_axis = 9;    // odd, >= 5 (>= 9 for the ball)

  int real_dim() const { return 2 * n; }
  double spacing() const { return 2.0 / (points_per_axis - 1); }
  void validate() const;      // throws std::invalid_argument
};

struct NodeRef {
  enum Kind : uint8_t { Interior, Boundary, Other };
  Kind kind = Other;
  int index = -1;             // interior id or boundary node id
};

/// One stencil arm from an interior point: the neighbor along +-axis and its
/// distance as a fraction of h (1 on regular arms, (0,1) on Shortley-Weller
/// cut arms of the ball).
struct Arm {
  NodeRef node;
  double theta = 1.0;
};

/// Structured lattice over the domain.  Interior points carry unknowns;
/// boundary nodes live on lattice faces (box) or at exact axis crossings of
/// the sphere (ball, Shortley-Weller placement).
class Grid {
 public:
  explicit Grid(const DomainSpec& spec);

  const DomainSpec& spec() const { return spec_; }
  int real_dim() const { return spec_.real_dim(); }
  double spacing() const { return spec_.spacing(); }
  int num_interior() const { return static_cast<int>(interior_flat_.size()); }
  int num_boundary() const { return static_cast<int>(boundary_coords_.size()) / real_dim(); }

  std::span<const double> interior_coord(int i) const;
  std::span<const double> boundary_coord(int b) const;

  const Arm& arm(int i, int axis, int dir) const {  // dir: 0 = minus, 1 = plus
    return arms_[static_cast<size_t>((i * real_dim() + axis) * 2 + dir)];
  }

  /// Lattice point at the interior point i shifted by the given per-axis
  /// offsets.  Kind Other means exterior (ball) or otherwise unusable.
  NodeRef lattice_offset(int i, std::span<const int> offsets) const;

  /// Convenience for cross stencils: shift by da on axis a and db on axis b.
  NodeRef lattice_offset2(int i, int a, int da, int b, int db) const;

 private:
  void build_box();
  void build_ball();

  DomainSpec spec_;
  std::vector<uint8_t> kind_;          // per lattice point
  std::vector<int> node_id_;           // interior or boundary id per lattice point
  std::vector<long> interior_flat_;    // lattice flat index per interior id
  std::vector<double> interior_coords_;
  std::vector<double> boundary_coords_;
  std::vector<Arm> arms_;
  std::array<long, 6> stride_{};
  long lattice_size_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const DomainSpec& spec);

}  // namespace khess

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "khess/grid.hpp"
#include "khess/hermitian.hpp"

namespace khess {

/// Real scalar function sampled on a grid: one value per interior point and
/// one per boundary node.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid)
      : grid_(std::move(grid)),
        interior_(static_cast<size_t>(grid_->num_interior()), 0.0),
        boundary_(static_cast<size_t>(grid_->num_boundary()), 0.0) {}

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }

  double& interior(int i) { return interior_[static_cast<size_t>(i)]; }
  double interior(int i) const { return interior_[static_cast<size_t>(i)]; }
  double& boundary(int b) { return boundary_[static_cast<size_t>(b)]; }
  double boundary(int b) const { return boundary_[static_cast<size_t>(b)]; }
  double at(NodeRef ref) const {
    return ref.kind == NodeRef::Interior ? interior(ref.index) : boundary(ref.index);
  }
  std::span<const double> interior_values() const { return interior_; }
  std::span<double> interior_values() { return interior_; }
  std::span<const double> boundary_values() const { return boundary_; }
  std::span<double> boundary_values() { return boundary_; }

  /// Samples f on interior and boundary nodes.
  static ScalarField sample(GridPtr grid, const std::function<double(std::span<const double>)>& f);

 private:
  GridPtr grid_;
  std::vector<double> interior_, boundary_;
};

/// Dirichlet data: one value per boundary node.
class BoundaryField {
 public:
  BoundaryField() = default;
  explicit BoundaryField(GridPtr grid)
      : grid_(std::move(grid)), values_(static_cast<size_t>(grid_->num_boundary()), 0.0) {}

  const Grid& grid() const { return *grid_; }
  double& operator[](int b) { return values_[static_cast<size_t>(b)]; }
  double operator[](int b) const { return values_[static_cast<size_t>(b)]; }
  std::span<const double> values() const { return values_; }

  static BoundaryField sample(GridPtr grid, const std::function<double(std::span<const double>)>& f);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// One n x n Hermitian matrix per interior point, packed row-major.
class HermitianField {
 public:
  HermitianField() = default;
  HermitianField(GridPtr grid, int n)
      : grid_(std::move(grid)),
        n_(n),
        packed_(static_cast<size_t>(grid_->num_interior()) * n * n, cplx(0.0)) {}

  const Grid& grid() const { return *grid_; }
  int matrix_dim() const { return n_; }

  HermitianMatrix get(int i) const;
  void set(int i, const HermitianMatrix& m);

  /// Samples a pointwise Hermitian-matrix function of the coordinates.
  static HermitianField sample(GridPtr grid, int n,
                               const std::function<HermitianMatrix(std::span<const double>)>& f);
  static HermitianField constant(GridPtr grid, const HermitianMatrix& m);

 private:
  GridPtr grid_;
  int n_ = 0;
  std::vector<cplx> packed_;
};

/// One complex n-vector per interior point (the (1,0)-gradient du/dz^j).
class GradientField {
 public:
  GradientField() = default;
  GradientField(GridPtr grid, int n)
      : grid_(std::move(grid)), n_(n), packed_(static_cast<size_t>(grid_->num_interior()) * n, cplx(0.0)) {}

  int vector_dim() const { return n_; }
  cplx& at(int i, int j) { return packed_[static_cast<size_t>(i) * n_ + j]; }
  cplx at(int i, int j) const { return packed_[static_cast<size_t>(i) * n_ + j]; }

 private:
  GridPtr grid_;
  int n_ = 0;
  std::vector<cplx> packed_;
};

/// One descending eigenvalue vector per interior point.
class SpectrumField {
 public:
  SpectrumField() = default;
  SpectrumField(GridPtr grid, int n)
      : grid_(std::move(grid)), n_(n), packed_(static_cast<size_t>(grid_->num_interior()) * n, 0.0) {}

  int vector_dim() const { return n_; }
  std::span<const double> at(int i) const {
    return {packed_.data() + static_cast<size_t>(i) * n_, static_cast<size_t>(n_)};
  }
  std::span<double> at(int i) {
    return {packed_.data() + static_cast<size_t>(i) * n_, static_cast<size_t>(n_)};
  }

 private:
  GridPtr grid_;
  int n_ = 0;
  std::vector<double> packed_;
};

}  // namespace khess

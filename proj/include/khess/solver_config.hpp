#pragma once

namespace khess {

struct SolverConfig {
  double newton_tol = 1e-9;        // L_inf residual target
  int max_newton_iters = 50;
  double damping_factor = 0.5;     // backtracking halving
  double min_step = 1.0 / 1048576.0;   // 2^-20 damping floor
  double continuity_dt0 = 0.25;
  double dt_min = 1.0 / 4096.0;        // 2^-12
  double linear_tol = 1e-10;
  int linear_max_iters = 5000;

  void validate() const;  // throws std::invalid_argument
};

}  // namespace khess

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/dynamics.hpp"
#include "core/jump_measure.hpp"

namespace levylab {

/// Uniform interior grid for the nonlocal Dirichlet problem on [-b, a].
struct SolverGrid {
  std::size_t n_interior;
  double h;    // (a+b)/(N+1)
  double rho;  // small-jump compensation radius, >= 2h
  double a;
  double b;

  SolverGrid(const Domain& dom, std::size_t n_interior, double rho_factor = 4.0);
};

/// Dense discretization of the full generator A^eps at the interior nodes,
/// with the exterior condition u = 0 folded in as a killing term.
struct GeneratorMatrix {
  Eigen::MatrixXd A;
  std::vector<double> nodes;
  double jump_tail_at_rho = 0.0;   // T_eps(rho), 0 without jumps
  double small_jump_var = 0.0;     // int_{|z|<=rho} z^2 nu_eps(dz)
  /// Translation-invariant jump weights W(k) = int hat((z-kh)/h) nu_eps(dz)
  /// over |z| > rho, k = -(N+1)..N+1 (index shifted by N+1).
  std::vector<double> jump_weights;
};

/// Rows discretize A^eps: upwinded first-order drift, central second
/// differences for the Gaussian and Taylor-compensated small-jump parts,
/// and exact hat-function quadrature weights for jumps beyond rho. Mass
/// landing outside [-b, a] appears only through the killing term.
GeneratorMatrix assemble_generator_matrix(const Potential& u,
                                          const LevyTriplet& t, double eps,
                                          const SolverGrid& grid);

/// Mean exit time u(x) = E_x sigma with linear interpolation between nodes
/// and u = 0 outside [-b, a].
class MeanExitSolution {
 public:
  MeanExitSolution(std::vector<double> x, std::vector<double> u, double a,
                   double b);
  double operator()(double xq) const;
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return u_; }

 private:
  std::vector<double> x_;  // includes the boundary nodes
  std::vector<double> u_;
  double a_;
  double b_;
};

/// Solves A^eps u = -1 on the interior, u = 0 outside. Throws
/// DiscretizationError if the discrete maximum principle fails
/// (u < -1e-8 anywhere).
MeanExitSolution solve_mean_exit_bvp(const Potential& u, const LevyTriplet& t,
                                     double eps, const Domain& dom,
                                     const SolverGrid& grid);

}  // namespace levylab

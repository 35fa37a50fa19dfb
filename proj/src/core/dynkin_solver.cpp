#include "core/dynkin_solver.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace levylab {

SolverGrid::SolverGrid(const Domain& dom, std::size_t n_interior,
                       double rho_factor)
    : n_interior(n_interior), a(dom.a), b(dom.b) {
  if (n_interior < 8) throw ArgumentError("solver grid: need at least 8 nodes");
  h = (dom.a + dom.b) / static_cast<double>(n_interior + 1);
  rho = rho_factor * h;
  if (!(rho >= 2.0 * h)) {
    throw ArgumentError("solver grid: rho must be at least 2h");
  }
}

namespace {

// Integral of the hat function centered at kh against the density over
// {|z| > rho}, split at the hat kinks and the clipping radii.
double hat_weight(const JumpMeasure& m, double h, double rho, long k) {
  if (k == 0) return 0.0;  // hat support lies inside |z| <= h <= rho
  const double center = static_cast<double>(k) * h;
  auto hat = [&](double z) {
    const double w = 1.0 - std::abs(z - center) / h;
    return w > 0.0 ? w * m.density(z) : 0.0;
  };
  double total = 0.0;
  for (const auto& [lo0, hi0] : {std::pair(center - h, center),
                                 std::pair(center, center + h)}) {
    // clip the piece against {|z| > rho}
    double segs[2][2];
    int n_segs = 0;
    if (hi0 <= -rho || lo0 >= rho) {
      segs[n_segs][0] = lo0;
      segs[n_segs][1] = hi0;
      ++n_segs;
    } else {
      if (lo0 < -rho) {
        segs[n_segs][0] = lo0;
        segs[n_segs][1] = -rho;
        ++n_segs;
      }
      if (hi0 > rho) {
        segs[n_segs][0] = rho;
        segs[n_segs][1] = hi0;
        ++n_segs;
      }
    }
    for (int s = 0; s < n_segs; ++s) {
      if (segs[s][1] > segs[s][0]) {
        total += quad::finite(hat, segs[s][0], segs[s][1], 1e-10);
      }
    }
  }
  return total;
}

}  // namespace

GeneratorMatrix assemble_generator_matrix(const Potential& u,
                                          const LevyTriplet& t, double eps,
                                          const SolverGrid& grid) {
  if (!(eps > 0.0)) throw ArgumentError("assemble: eps must be positive");
  const LevyTriplet scaled = scale_triplet(t, eps);
  const std::size_t n = grid.n_interior;
  const double h = grid.h;

  GeneratorMatrix gm;
  gm.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    gm.nodes[i] = -grid.b + h * static_cast<double>(i + 1);
  }

  double drift_correction = 0.0;
  if (scaled.jumps) {
    const JumpMeasure& jumps = *scaled.jumps;
    gm.jump_tail_at_rho = tail_mass(jumps, grid.rho);
    gm.small_jump_var = truncated_moment2(jumps, grid.rho);
    const long kmax = static_cast<long>(n) + 1;
    gm.jump_weights.assign(2 * kmax + 1, 0.0);
    for (long k = 1; k <= kmax; ++k) {
      const double wp = hat_weight(jumps, h, grid.rho, k);
      gm.jump_weights[kmax + k] = wp;
      gm.jump_weights[kmax - k] =
          jumps.symmetric() ? wp : hat_weight(jumps, h, grid.rho, -k);
    }
    if (!jumps.symmetric()) {
      // Leftover first-order compensation between rho and the triplet's
      // compensation radius 1 (vanishes for symmetric measures).
      auto annulus = [&](double lo, double hi) {
        auto one = [&](int sign) {
          return quad::finite(
              [&](double z) { return z * jumps.density(sign * z); }, lo, hi);
        };
        return one(+1) - one(-1);
      };
      if (grid.rho < 1.0) {
        drift_correction = -annulus(grid.rho, 1.0);
      } else if (grid.rho > 1.0) {
        drift_correction = annulus(1.0, grid.rho);
      }
    }
  }

  const double diffusion = 0.5 * scaled.variance + 0.5 * gm.small_jump_var;
  const double d2 = diffusion / (h * h);
  gm.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                               static_cast<Eigen::Index>(n));
  const long kmax = static_cast<long>(n) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ei = static_cast<Eigen::Index>(i);
    const double x = gm.nodes[i];
    const double c = -u.du(x) + scaled.drift + drift_correction;

    gm.A(ei, ei) += -2.0 * d2;
    if (i > 0) gm.A(ei, ei - 1) += d2;
    if (i + 1 < n) gm.A(ei, ei + 1) += d2;

    // upwind first-order drift keeps off-diagonal entries nonnegative
    if (c >= 0.0) {
      gm.A(ei, ei) += -c / h;
      if (i + 1 < n) gm.A(ei, ei + 1) += c / h;
    } else {
      gm.A(ei, ei) += c / h;
      if (i > 0) gm.A(ei, ei - 1) += -c / h;
    }

    if (scaled.jumps) {
      gm.A(ei, ei) += -gm.jump_tail_at_rho;
      for (std::size_t j = 0; j < n; ++j) {
        const long k = static_cast<long>(j) - static_cast<long>(i);
        if (k == 0) continue;
        const double w = gm.jump_weights[kmax + k];
        if (w != 0.0) gm.A(ei, static_cast<Eigen::Index>(j)) += w;
      }
    }
  }
  return gm;
}

MeanExitSolution::MeanExitSolution(std::vector<double> x, std::vector<double> u,
                                   double a, double b)
    : x_(std::move(x)), u_(std::move(u)), a_(a), b_(b) {}

double MeanExitSolution::operator()(double xq) const {
  if (xq <= -b_ || xq >= a_) return 0.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  if (it == x_.begin() || it == x_.end()) return 0.0;
  const std::size_t j = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double t = (xq - x_[j]) / (x_[j + 1] - x_[j]);
  return (1.0 - t) * u_[j] + t * u_[j + 1];
}

MeanExitSolution solve_mean_exit_bvp(const Potential& u, const LevyTriplet& t,
                                     double eps, const Domain& dom,
                                     const SolverGrid& grid) {
  if (std::abs(grid.a - dom.a) > 1e-12 || std::abs(grid.b - dom.b) > 1e-12) {
    throw ArgumentError("solver grid does not match the domain");
  }
  GeneratorMatrix gm = assemble_generator_matrix(u, t, eps, grid);
  const auto n = static_cast<Eigen::Index>(grid.n_interior);

  Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, -1.0);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(gm.A);
  Eigen::VectorXd sol = lu.solve(rhs);
  const double residual = (gm.A * sol - rhs).norm();
  if (!sol.allFinite() || residual > 1e-6 * rhs.norm() * grid.n_interior) {
    throw NumericalError("mean-exit solve failed (singular operator?)");
  }
  if (sol.minCoeff() < -1e-8) {
    throw DiscretizationError(
        "mean-exit solution violates the maximum principle (u < 0)");
  }

  std::vector<double> xs(grid.n_interior + 2);
  std::vector<double> us(grid.n_interior + 2, 0.0);
  xs.front() = -dom.b;
  xs.back() = dom.a;
  for (std::size_t i = 0; i < grid.n_interior; ++i) {
    xs[i + 1] = gm.nodes[i];
    us[i + 1] = sol(static_cast<Eigen::Index>(i));
  }
  return MeanExitSolution(std::move(xs), std::move(us), dom.a, dom.b);
}

}  // namespace levylab

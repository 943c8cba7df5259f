#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "posys/framework.hpp"

namespace posys::oracle {

struct OracleConfig {
  double box_lo = -6.0;           // search box in log coordinates
  double box_hi = 6.0;
  std::size_t starts = 4096;
  std::uint64_t seed = 1;
  double dedup_radius = 1e-6;     // log-coordinate max-norm radius
  double polish_tol = 1e-12;
};

struct OracleSolution {
  RealVec x;
  double residual = 0;
};

/// Brute-force falsifier for square systems (n' = n): damped Newton in
/// z = ln x from cfg.starts seeded points, deduplicated in log coordinates
/// and sorted, so results are reproducible for a fixed seed. Throws
/// NonSquare otherwise. It can miss solutions; it never fabricates them.
std::vector<OracleSolution> multistart_solve(const framework::ProblemInstance& p,
                                             const OracleConfig& cfg = {});

struct GridCount {
  int sign_changes = 0;
  std::vector<double> roots;       // bracketed crossings, refined by bisection
  std::vector<double> tangential;  // even-order roots (|f| minima below 1e-12)
};

/// Sign-change scan of f over a uniform grid on (a, b). resolution is the
/// grid step and must be at most 1e-4 (b - a).
GridCount grid_count(const std::function<double(double)>& f, double a, double b,
                     double resolution);

}  // namespace posys::oracle

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "limcyc/dynamics.hpp"
#include "limcyc/geometry.hpp"
#include "limcyc/poly.hpp"

namespace limcyc {

struct PortraitOptions {
  /// Seeds per side of the sampling lattice (cell centers of the region).
  int lattice = 8;
  /// Integration time in each direction from a seed.
  double horizon = 20.0;
  long max_steps = 5000;
  /// Seeds handed to count_cycles.
  int cycle_seeds = 64;
  /// Grid for the curve overlay.
  int curve_grid = kDefaultGrid;
};

struct Portrait {
  Region region;
  /// Each orbit runs from its backward end through the seed to its forward end.
  std::vector<std::vector<Trajectory::Sample>> trajectories;
  std::vector<CycleReport> cycles;
  std::vector<std::vector<Point>> curve;
};

/// Deterministic: same inputs give the same portrait.
Portrait compute_portrait(const VectorField& x, const Region& region, const std::optional<Poly>& overlay = std::nullopt,
                          const PortraitOptions& opts = {});

/// Header t0,x0,y0,t1,x1,y1,... with one column triple per trajectory
/// (shorter ones padded with empty cells), then one "# cycle k" block of
/// t,x,y rows per detected cycle.
std::string portrait_csv(const Portrait& p);

/// Trajectories as polylines, each cycle as one closed path with class
/// "cycle", and the curve overlay as polylines with class "curve".
std::string portrait_svg(const Portrait& p);

}  // namespace limcyc

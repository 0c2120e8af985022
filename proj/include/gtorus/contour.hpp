#pragma once

#include <cstddef>
#include <functional>

#include "gtorus/common.hpp"

namespace gtorus {

/// Phase of a section at a point, and its metric-weighted log magnitude.
struct PhasePoint {
  cplx phase;
  double weighted_logmag;
};
using PhaseFunction = std::function<PhasePoint(cplx)>;

struct WindingResult {
  int winding = 0;
  /// False when the contour came close to a zero (weighted magnitude ratio
  /// below 1e-9) or the adaptive refinement hit its depth limit.
  bool reliable = true;
  double min_weighted_logmag = 0.0;
  double max_weighted_logmag = 0.0;
  std::size_t evaluations = 0;
};

/// Winding number of f along origin -> origin+e1 -> origin+e1+e2 ->
/// origin+e2 -> origin (argument principle; counterclockwise when
/// Im(conj(e1) e2) > 0). Steps are bisected until each phase increment is
/// below `max_step_angle`.
WindingResult parallelogram_winding(const PhaseFunction& f, cplx origin, cplx e1, cplx e2,
                                    int initial_segments = 64, double max_step_angle = 0.5);

}  // namespace gtorus

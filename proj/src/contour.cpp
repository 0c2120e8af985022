#include "gtorus/contour.hpp"

#include <algorithm>
#include <cmath>

namespace gtorus {

namespace {

struct Walker {
  const PhaseFunction& f;
  double max_angle;
  WindingResult result;
  double total = 0.0;

  PhasePoint eval(cplx z) {
    PhasePoint p = f(z);
    ++result.evaluations;
    result.min_weighted_logmag = std::min(result.min_weighted_logmag, p.weighted_logmag);
    result.max_weighted_logmag = std::max(result.max_weighted_logmag, p.weighted_logmag);
    return p;
  }

  void segment(cplx za, const PhasePoint& pa, cplx zb, const PhasePoint& pb, int depth) {
    const double step = std::arg(pb.phase * std::conj(pa.phase));
    if (std::abs(step) <= max_angle) {
      total += step;
      return;
    }
    if (depth > 40) {
      result.reliable = false;
      total += step;
      return;
    }
    const cplx zm = 0.5 * (za + zb);
    const PhasePoint pm = eval(zm);
    segment(za, pa, zm, pm, depth + 1);
    segment(zm, pm, zb, pb, depth + 1);
  }
};

}  // namespace

WindingResult parallelogram_winding(const PhaseFunction& f, cplx origin, cplx e1, cplx e2,
                                    int initial_segments, double max_step_angle) {
  Walker w{f, max_step_angle, {}, 0.0};
  w.result.min_weighted_logmag = std::numeric_limits<double>::infinity();
  w.result.max_weighted_logmag = -std::numeric_limits<double>::infinity();

  const cplx corners[5] = {origin, origin + e1, origin + e1 + e2, origin + e2, origin};
  cplx z_prev = corners[0];
  PhasePoint p_prev = w.eval(z_prev);
  for (int edge = 0; edge < 4; ++edge) {
    for (int s = 1; s <= initial_segments; ++s) {
      const double t = static_cast<double>(s) / initial_segments;
      const cplx z = corners[edge] + t * (corners[edge + 1] - corners[edge]);
      const PhasePoint p = w.eval(z);
      w.segment(z_prev, p_prev, z, p, 0);
      z_prev = z;
      p_prev = p;
    }
  }
  w.result.winding = static_cast<int>(std::lround(w.total / (2.0 * kPi)));
  if (w.result.min_weighted_logmag - w.result.max_weighted_logmag < std::log(1e-9)) {
    w.result.reliable = false;
  }
  return w.result;
}

}  // namespace gtorus

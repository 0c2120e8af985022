#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gtorus/common.hpp"
#include "gtorus/core.hpp"
#include "gtorus/window.hpp"

namespace gtorus {

/// Finite sample set of I_N x I_N with its images z_j = -i(Omega k_j / N + l_j / N).
struct PointSet {
  int d = 1;
  int N = 1;
  /// Flat (k, l) indices into I_N.
  std::vector<std::pair<std::size_t, std::size_t>> samples;
  std::vector<ComplexPoint> images;
  bool distinct = true;

  std::size_t size() const noexcept { return samples.size(); }
  static PointSet from_samples(const GaborParams& params,
                               std::vector<std::pair<std::size_t, std::size_t>> samples);
  /// Flat sample indices k * N^d + l.
  static PointSet from_flat(const GaborParams& params, const std::vector<std::size_t>& flat);
};

struct CountingGuarantees {
  bool frame_by_count = false;
  bool no_frame_by_count = false;
  bool interpolation_by_count = false;
  /// Seshadri interval [1/K, (d!/K)^{1/d}].
  double seshadri_lower = 0.0;
  double seshadri_upper = 0.0;
};

struct ParityResult {
  bool no_frame = false;
  CVector s;
  LatticeMembership witness;
  /// Integer form (Re Omega = 0 only): N even and N | sum k and N | sum l.
  std::optional<bool> integer_form;
};

struct FrameReport {
  std::size_t K = 0;
  double A = 0.0;
  double B = 0.0;
  bool is_frame = false;
  std::optional<ParityResult> parity;
  CountingGuarantees guarantees;
};

/// Frame bounds of the Gabor vectors pi(k_j, l_j) h; A = sigma_min^2 and
/// B = sigma_max^2 of the K x N^d analysis matrix (A = 0 when K < N^d).
/// Attaches the parity predicate when applicable. Throws Error(EmptyPointSet).
FrameReport frame_bounds(const PointSet& D, const Window& window, const GaborParams& params,
                         double tau = 1e-7);
/// Same for arbitrary points of T_N via the continuous STFT.
FrameReport frame_bounds(const std::vector<TFPoint>& points, const Window& window,
                         const GaborParams& params, double tau = 1e-7);

/// d = 1, K = N, distinct: no_frame iff sum z_j - N z0 lies in scale * Lambda.
/// Throws Error(NotApplicable).
ParityResult parity_predicate(const PointSet& D, const GaborParams& params, double scale = 1.0);
ParityResult parity_predicate(const PointSet& D, const GaborParams& params, const CVector& z0,
                              double scale = 1.0);
bool parity_applicable(const PointSet& D, const GaborParams& params);

CountingGuarantees counting_guarantees(std::size_t K, const GaborParams& params);

/// For each sample z_j, min_i |theta_1(i(z_j - t_i))| exp(-phi(z_j - t_i)/2).
/// Throws Error(TranslateSumNotInDualLattice) unless sum t_i is in Lambda
/// and there are N translates.
std::vector<double> zero_set_diagnostic(const PointSet& D, const std::vector<CVector>& translates,
                                        const GaborParams& params);

enum class ScanMode { Exhaustive, Random };

struct ScanOptions {
  ScanMode mode = ScanMode::Exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  double tau = 1e-7;
};

struct ScanDisagreement {
  std::vector<std::size_t> subset;
  double ratio = 0.0;  // A / B
  bool predicate_no_frame = false;
  bool oracle_frame = false;
};

struct ScanReport {
  std::size_t K = 0;
  std::size_t subsets = 0;
  std::size_t frames = 0;
  std::size_t applicable = 0;
  /// [predicate_no_frame][oracle_is_frame] over applicable subsets.
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  std::vector<ScanDisagreement> disagreements;
  /// Violations of frame_by_count => frame and no_frame_by_count => not frame.
  std::size_t counting_violations = 0;
  /// Counts of floor(log10(A/B)) clamped to [-17, 0]; index 0 holds A = 0.
  std::vector<std::size_t> margin_histogram;
  double min_frame_ratio = 1.0;
  double max_nonframe_ratio = 0.0;
};

/// Evaluates K-subsets of I_N x I_N in lexicographic (exhaustive) or seeded
/// random order. Throws Error(TooManySubsets) for exhaustive scans with more
/// than 1e6 subsets.
ScanReport scan_subsets(const GaborParams& params, std::size_t K, const ScanOptions& options);

/// C(n, k), saturating at the largest double.
double binomial(std::size_t n, std::size_t k);

}  // namespace gtorus

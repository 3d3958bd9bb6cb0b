#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kernrl {

/// Forgetting profile chi(t) over the episode gap t.
struct TemporalKernel {
  enum class Kind { exp_discount, sliding_window, constant };

  Kind kind = Kind::constant;
  double eta = 1.0;         ///< exp_discount only, in (0, 1]
  std::size_t window = 1;   ///< sliding_window only, >= 1

  static TemporalKernel exp_discount(double eta);
  static TemporalKernel sliding_window(std::size_t window);
  static TemporalKernel constant() { return {}; }

  /// Discount factor usable by exact online recursions (1 for constant).
  /// Throws InvalidConfig for windowed kernels.
  double recursion_factor() const;
};

/// Spatial profile phi(dist / sigma).
struct SpatialKernel {
  enum class Kind { gaussian, exp_p4, exact_match };

  Kind kind = Kind::gaussian;
  double sigma = 1.0;

  static SpatialKernel gaussian(double sigma);
  static SpatialKernel exp_p4(double sigma);
  static SpatialKernel exact_match() { return {Kind::exact_match, 0.0}; }
};

struct KernelSpec {
  TemporalKernel temporal;
  SpatialKernel spatial;
  double beta = 0.01;
};

/// Throws InvalidConfig if any parameter is outside its domain.
void validate(const TemporalKernel& tk);
void validate(const SpatialKernel& sk);
void validate(const KernelSpec& spec);

double temporal_weight(const TemporalKernel& tk, std::size_t t);
/// Profile in normalized distance z = dist / sigma (not defined for exact_match).
double spatial_profile(SpatialKernel::Kind kind, double z);
double spatial_weight(const SpatialKernel& sk, double dist);
double kernel_weight(const KernelSpec& spec, std::size_t t, double dist);

// ---------------------------------------------------------------------------
// Numerical checks of the kernel regularity conditions
// ---------------------------------------------------------------------------

/// Base kernel as a function of episode gap and normalized distance z.
using KernelProfile = std::function<double(std::size_t t, double z)>;

struct AssumptionConstants {
  double c1 = 0.0;  ///< smallest C with profile(t, z) <= C exp(-z^2 / 2) on the grid
  double c2 = 0.0;  ///< largest adjacent-grid slope in z
  double c3 = 0.0;  ///< smallest C with profile(t, z) <= C eta^t for t >= W
  double g4 = 0.0;  ///< inf_{t < W} profile(t, 4) / eta^t
  double eta = 1.0;
  std::size_t window = 1;
};

struct AssumptionCheckOptions {
  std::vector<double> z_grid;            ///< empty: [0, 8] with step 0.01
  std::optional<std::size_t> t_max;      ///< default max(2W, 64)
  double c1_limit = 1.0;                 ///< dominance by the Gaussian envelope with this constant
  double c2_limit = 10.0;                ///< slopes above this are treated as discontinuities
  double tolerance = 1e-12;
};

struct AssumptionFailure {
  int condition = 0;  ///< 1..4 for the numbered conditions, 5 for monotonicity in z
  std::size_t t = 0;
  double z = 0.0;
  std::string message;
};

struct AssumptionReport {
  AssumptionConstants constants;
  std::vector<AssumptionFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Grid check of the regularity conditions for an arbitrary profile with parameters (eta, W).
AssumptionReport check_assumptions(const KernelProfile& profile, double eta, std::size_t window,
                                   const AssumptionCheckOptions& options = {});

/// Convenience overload deriving the profile and (eta, W) from a spec:
/// exp_discount uses W = ceil(1 / log(1/eta)), sliding_window uses eta = exp(-1/W), constant uses eta = 1, W = 1.
AssumptionReport check_assumptions(const KernelSpec& spec, const AssumptionCheckOptions& options = {});

}  // namespace kernrl

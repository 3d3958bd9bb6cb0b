#include "kernrl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kernrl/errors.hpp"

namespace kernrl {

TemporalKernel TemporalKernel::exp_discount(double eta) {
  TemporalKernel tk{Kind::exp_discount, eta, 1};
  validate(tk);
  return tk;
}

TemporalKernel TemporalKernel::sliding_window(std::size_t window) {
  TemporalKernel tk{Kind::sliding_window, 1.0, window};
  validate(tk);
  return tk;
}

double TemporalKernel::recursion_factor() const {
  switch (kind) {
    case Kind::exp_discount: return eta;
    case Kind::constant: return 1.0;
    case Kind::sliding_window: break;
  }
  throw InvalidConfig("online updates need an exponential-discount or constant temporal kernel");
}

SpatialKernel SpatialKernel::gaussian(double sigma) {
  SpatialKernel sk{Kind::gaussian, sigma};
  validate(sk);
  return sk;
}

SpatialKernel SpatialKernel::exp_p4(double sigma) {
  SpatialKernel sk{Kind::exp_p4, sigma};
  validate(sk);
  return sk;
}

void validate(const TemporalKernel& tk) {
  if (tk.kind == TemporalKernel::Kind::exp_discount && !(tk.eta > 0.0 && tk.eta <= 1.0)) {
    throw InvalidConfig("discount eta must lie in (0, 1]");
  }
  if (tk.kind == TemporalKernel::Kind::sliding_window && tk.window < 1) {
    throw InvalidConfig("window must be at least 1");
  }
}

void validate(const SpatialKernel& sk) {
  if (sk.kind == SpatialKernel::Kind::exact_match) {
    if (sk.sigma != 0.0) throw InvalidConfig("exact-match kernel requires sigma = 0");
    return;
  }
  if (!(sk.sigma > 0.0) || !std::isfinite(sk.sigma)) {
    throw InvalidConfig("bandwidth sigma must be positive for smooth spatial kernels");
  }
}

void validate(const KernelSpec& spec) {
  validate(spec.temporal);
  validate(spec.spatial);
  if (!(spec.beta > 0.0)) throw InvalidConfig("regularizer beta must be positive");
}

double temporal_weight(const TemporalKernel& tk, std::size_t t) {
  switch (tk.kind) {
    case TemporalKernel::Kind::exp_discount: return std::pow(tk.eta, static_cast<double>(t));
    case TemporalKernel::Kind::sliding_window: return t < tk.window ? 1.0 : 0.0;
    case TemporalKernel::Kind::constant: return 1.0;
  }
  return 0.0;
}

double spatial_profile(SpatialKernel::Kind kind, double z) {
  switch (kind) {
    case SpatialKernel::Kind::gaussian: return std::exp(-z * z / 2.0);
    case SpatialKernel::Kind::exp_p4: {
      const double z2 = z * z;
      return std::exp(-z2 * z2 / 2.0);
    }
    case SpatialKernel::Kind::exact_match: return z == 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double spatial_weight(const SpatialKernel& sk, double dist) {
  if (sk.kind == SpatialKernel::Kind::exact_match) {
    if (sk.sigma != 0.0) throw InvalidConfig("exact-match kernel requires sigma = 0");
    return dist == 0.0 ? 1.0 : 0.0;
  }
  if (!(sk.sigma > 0.0)) throw InvalidConfig("sigma = 0 is only valid for the exact-match kernel");
  if (dist == 0.0) return 1.0;
  if (std::isinf(dist)) return 0.0;
  return spatial_profile(sk.kind, dist / sk.sigma);
}

double kernel_weight(const KernelSpec& spec, std::size_t t, double dist) {
  const double tw = temporal_weight(spec.temporal, t);
  if (tw == 0.0) return 0.0;
  return tw * spatial_weight(spec.spatial, dist);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> default_grid() {
  std::vector<double> z(801);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = static_cast<double>(i) / 100.0;
  return z;
}

std::string describe(int condition, std::size_t t, double z, const std::string& detail) {
  std::ostringstream os;
  os << "condition (" << condition << ") violated at t=" << t << ", z=" << z << ": " << detail;
  return os.str();
}

}  // namespace

AssumptionReport check_assumptions(const KernelProfile& profile, double eta, std::size_t window,
                                   const AssumptionCheckOptions& options) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidConfig("eta must lie in (0, 1]");
  const std::vector<double> z = options.z_grid.empty() ? default_grid() : options.z_grid;
  if (z.size() < 2 || !std::is_sorted(z.begin(), z.end()) || z.front() < 0.0) {
    throw InvalidInput("z grid must be increasing, non-negative and have at least two points");
  }
  const std::size_t t_max = options.t_max.value_or(std::max<std::size_t>(2 * window, 64));
  if (t_max < window) throw InvalidInput("t_max must be at least the window");

  AssumptionReport report;
  auto& c = report.constants;
  c.eta = eta;
  c.window = window;
  c.g4 = std::numeric_limits<double>::infinity();

  std::size_t c1_t = 0, c2_t = 0, c3_t = 0;
  double c1_z = 0.0, c2_z = 0.0, c3_z = 0.0;
  std::optional<AssumptionFailure> monotone, lower;

  for (std::size_t t = 0; t <= t_max; ++t) {
    const double eta_t = std::pow(eta, static_cast<double>(t));
    double prev = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double value = profile(t, z[i]);
      const double envelope = std::exp(-z[i] * z[i] / 2.0);
      if (envelope > 0.0 && value / envelope > c.c1) {
        c.c1 = value / envelope;
        c1_t = t;
        c1_z = z[i];
      }
      if (i > 0) {
        const double slope = std::abs(value - prev) / (z[i] - z[i - 1]);
        if (slope > c.c2) {
          c.c2 = slope;
          c2_t = t;
          c2_z = z[i - 1];
        }
        if (value > prev + options.tolerance && !monotone) {
          monotone = AssumptionFailure{5, t, z[i], describe(5, t, z[i], "profile increases in z")};
        }
      }
      if (t >= window) {
        if (eta_t > 0.0 && value / eta_t > c.c3) {
          c.c3 = value / eta_t;
          c3_t = t;
          c3_z = z[i];
        }
      } else if (value <= 0.0 && !lower && z[i] <= 4.0) {
        lower = AssumptionFailure{4, t, z[i], describe(4, t, z[i], "no positive lower envelope G(z)")};
      }
      prev = value;
    }
    if (t < window) c.g4 = std::min(c.g4, profile(t, 4.0) / eta_t);
  }
  if (window == 0) c.g4 = 0.0;

  if (c.c1 > options.c1_limit + options.tolerance || c.c1 == 0.0) {
    std::ostringstream d;
    d << "profile " << profile(c1_t, c1_z) << " exceeds " << options.c1_limit << " * exp(-z^2/2) = "
      << options.c1_limit * std::exp(-c1_z * c1_z / 2.0);
    report.failures.push_back({1, c1_t, c1_z, describe(1, c1_t, c1_z, d.str())});
  }
  if (c.c2 > options.c2_limit) {
    std::ostringstream d;
    d << "slope " << c.c2 << " exceeds " << options.c2_limit;
    report.failures.push_back({2, c2_t, c2_z, describe(2, c2_t, c2_z, d.str())});
  }
  if (!std::isfinite(c.c3)) {
    report.failures.push_back({3, c3_t, c3_z, describe(3, c3_t, c3_z, "no finite C3")});
  }
  if (lower) {
    report.failures.push_back(*lower);
  } else if (!(c.g4 > 0.0)) {
    report.failures.push_back({4, 0, 4.0, describe(4, 0, 4.0, "G(4) is not positive")});
  }
  if (monotone) report.failures.push_back(*monotone);
  return report;
}

AssumptionReport check_assumptions(const KernelSpec& spec, const AssumptionCheckOptions& options) {
  validate(spec);
  if (spec.spatial.kind == SpatialKernel::Kind::exact_match) {
    throw InvalidConfig("the exact-match kernel has no bandwidth profile to check");
  }
  double eta = 1.0;
  std::size_t window = 1;
  switch (spec.temporal.kind) {
    case TemporalKernel::Kind::exp_discount:
      eta = spec.temporal.eta;
      window = eta < 1.0 ? static_cast<std::size_t>(std::ceil(1.0 / std::log(1.0 / eta))) : 1;
      break;
    case TemporalKernel::Kind::sliding_window:
      window = spec.temporal.window;
      eta = std::exp(-1.0 / static_cast<double>(window));
      break;
    case TemporalKernel::Kind::constant: break;
  }
  const auto temporal = spec.temporal;
  const auto kind = spec.spatial.kind;
  KernelProfile profile = [temporal, kind](std::size_t t, double z) {
    return temporal_weight(temporal, t) * spatial_profile(kind, z);
  };
  return check_assumptions(profile, eta, window, options);
}

}  // namespace kernrl

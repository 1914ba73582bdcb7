#include "fjn/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fjn/error.hpp"

namespace fjn {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidInput(std::string(what) + " must be finite and >= 0, got " +
                       std::to_string(v));
  }
}

// Regularized lower incomplete gamma P(k, y) for integer k >= 1.
double erlang_cdf(int k, double y) {
  if (y <= 0.0) return 0.0;
  if (y < k + 1.0) {
    // Series: P = e^{-y} y^k / k! * sum_m y^m / ((k+1)...(k+m))
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 1000; ++m) {
      term *= y / (k + m);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    const double log_lead = -y + k * std::log(y) - std::lgamma(k + 1.0);
    return std::min(1.0, std::exp(log_lead) * sum);
  }
  // Finite sum for the survival function: Q = e^{-y} sum_{n<k} y^n / n!
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < k; ++n) {
    term *= y / n;
    sum += term;
  }
  return std::max(0.0, 1.0 - std::exp(-y + std::log(sum)));
}

double erlang_log_density(int k, double y) {
  return (k - 1) * std::log(y) - y - std::lgamma(static_cast<double>(k));
}

// Solves P(k, y) = u for y by Newton steps kept inside a bisection bracket.
double erlang_standard_quantile(int k, double u) {
  if (u <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * k);
  while (erlang_cdf(k, hi) < u) {
    lo = hi;
    hi *= 2.0;
  }
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = erlang_cdf(k, y) - u;
    if (f == 0.0) break;
    if (f < 0.0) lo = y; else hi = y;
    const double dens = std::exp(erlang_log_density(k, y));
    double next = dens > 0.0 ? y - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-15 * std::max(1.0, y)) {
      y = next;
      break;
    }
    y = next;
  }
  return y;
}

}  // namespace

void validate(const DistributionSpec& d) {
  std::visit(overloaded{
                 [](const Deterministic& x) {
                   require_nonnegative(x.value, "deterministic value");
                 },
                 [](const Exponential& x) {
                   require_nonnegative(x.mean, "exponential mean");
                 },
                 [](const Uniform& x) {
                   require_nonnegative(x.low, "uniform low");
                   require_nonnegative(x.high, "uniform high");
                   if (x.low > x.high) {
                     throw InvalidInput("uniform low (" + std::to_string(x.low) +
                                        ") exceeds high (" +
                                        std::to_string(x.high) + ")");
                   }
                 },
                 [](const Erlang& x) {
                   if (x.shape < 1) {
                     throw InvalidInput("erlang shape must be >= 1, got " +
                                        std::to_string(x.shape));
                   }
                   require_nonnegative(x.mean, "erlang mean");
                 },
             },
             d);
}

double mean(const DistributionSpec& d) {
  validate(d);
  return std::visit(overloaded{
                        [](const Deterministic& x) { return x.value; },
                        [](const Exponential& x) { return x.mean; },
                        [](const Uniform& x) { return 0.5 * (x.low + x.high); },
                        [](const Erlang& x) { return x.mean; },
                    },
                    d);
}

double variance(const DistributionSpec& d) {
  validate(d);
  return std::visit(
      overloaded{
          [](const Deterministic&) { return 0.0; },
          [](const Exponential& x) { return x.mean * x.mean; },
          [](const Uniform& x) {
            const double w = x.high - x.low;
            return w * w / 12.0;
          },
          [](const Erlang& x) { return x.mean * x.mean / x.shape; },
      },
      d);
}

double quantile(const DistributionSpec& d, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw InvalidInput("quantile: probability must lie in [0,1), got " +
                       std::to_string(u));
  }
  return std::visit(
      overloaded{
          [](const Deterministic& x) { return x.value; },
          [u](const Exponential& x) { return -x.mean * std::log1p(-u); },
          [u](const Uniform& x) { return x.low + (x.high - x.low) * u; },
          [u](const Erlang& x) {
            if (x.mean == 0.0) return 0.0;
            return x.mean / x.shape * erlang_standard_quantile(x.shape, u);
          },
      },
      d);
}

DistributionSpec scaled(const DistributionSpec& d, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidInput("scale factor must be finite and > 0");
  }
  return std::visit(
      overloaded{
          [c](const Deterministic& x) -> DistributionSpec {
            return Deterministic{x.value * c};
          },
          [c](const Exponential& x) -> DistributionSpec {
            return Exponential{x.mean * c};
          },
          [c](const Uniform& x) -> DistributionSpec {
            return Uniform{x.low * c, x.high * c};
          },
          [c](const Erlang& x) -> DistributionSpec {
            return Erlang{x.shape, x.mean * c};
          },
      },
      d);
}

std::string family_name(const DistributionSpec& d) {
  return std::visit(overloaded{
                        [](const Deterministic&) { return "deterministic"; },
                        [](const Exponential&) { return "exponential"; },
                        [](const Uniform&) { return "uniform"; },
                        [](const Erlang&) { return "erlang"; },
                    },
                    d);
}

}  // namespace fjn

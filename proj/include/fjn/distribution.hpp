#pragma once

// Service-time laws with closed-form means. Every law is sampled by
// inverse transform from a single uniform so that dependent uniforms
// (see ScenarioSampler) translate into dependent service times without
// touching the marginals.

#include <string>
#include <variant>

namespace fjn {

struct Deterministic {
  double value = 0.0;
};

struct Exponential {
  double mean = 1.0;
};

struct Uniform {
  double low = 0.0;
  double high = 1.0;
};

/// Sum of `shape` i.i.d. exponentials, parameterized by the total mean.
struct Erlang {
  int shape = 1;
  double mean = 1.0;
};

using DistributionSpec = std::variant<Deterministic, Exponential, Uniform, Erlang>;

/// Throws InvalidInput on negative or non-finite parameters, low > high,
/// or a non-positive Erlang shape.
void validate(const DistributionSpec& d);

double mean(const DistributionSpec& d);
double variance(const DistributionSpec& d);

/// Inverse CDF at u in [0,1). The result is always >= 0.
double quantile(const DistributionSpec& d, double u);

/// Same law with every time parameter multiplied by c > 0.
DistributionSpec scaled(const DistributionSpec& d, double c);

std::string family_name(const DistributionSpec& d);

}  // namespace fjn

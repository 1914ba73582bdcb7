#include "fjn/verify.hpp"

#include <cmath>

#include "fjn/dynamics.hpp"
#include "fjn/error.hpp"
#include "fjn/path_oracle.hpp"
#include "fjn/philox.hpp"

namespace fjn {
namespace {

void tally(CheckCount& c, bool ok) { ok ? ++c.passed : ++c.failed; }

}  // namespace

TandemBoundCheck check_tandem_bound(const NetworkSpec& spec, const ServiceTimeMatrix& t) {
  const std::size_t n = spec.size();
  if (static_cast<std::size_t>(t.size()) != n) {
    throw InvalidInput("check_tandem_bound: service times do not match the network");
  }
  for (const Arc& a : spec.arcs) {
    if (a.from >= a.to) {
      throw InvalidInput("check_tandem_bound: network is not in topological order");
    }
  }
  const SupportMatrix g = support_matrix(spec);
  const SupportMatrix h = tandem_support_matrix(n);
  const std::size_t p = longest_path_length(spec);
  const Matrix tm = t.matrix();

  TandemBoundCheck out;
  out.transition_bound =
      mat_leq(build_A(t, g, p).matrix, build_B(t, h, n).matrix);

  Matrix h_sum = null_matrix(static_cast<Eigen::Index>(n));
  for (std::size_t j = 1; j <= n; ++j) h_sum = mat_oplus(h_sum, mat_power(h.matrix, j));
  out.support_power_bound = true;
  for (std::size_t q = 1; q <= n; ++q) {
    out.support_power_bound &= mat_leq(mat_power(g.matrix, q), h_sum);
  }

  const Matrix ht = mat_otimes(h.matrix, tm);
  out.shifted_power_bound = true;
  for (std::size_t q = 2; q <= n + 1; ++q) {
    out.shifted_power_bound &=
        mat_leq(mat_otimes(mat_power(h.matrix, q), tm), mat_power(ht, q));
  }

  Matrix ht_sum = null_matrix(static_cast<Eigen::Index>(n));
  for (std::size_t j = 1; j <= n; ++j) ht_sum = mat_oplus(ht_sum, mat_power(ht, j));
  const Matrix gt = mat_otimes(g.matrix, tm);
  out.weighted_power_bound = true;
  for (std::size_t q = 1; q <= n; ++q) {
    out.weighted_power_bound &= mat_leq(mat_power(gt, q), ht_sum);
  }
  return out;
}

bool VerificationSummary::ok() const {
  for (const CheckCount* c : {&oracle_equivalence, &transition_bound, &support_power_bound,
                              &shifted_power_bound, &weighted_power_bound}) {
    if (c->failed != 0) return false;
  }
  return true;
}

double integer_service_time(std::uint64_t seed, std::uint64_t trial, std::uint64_t k,
                            std::uint32_t node, int max_value) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(k), node,
                                static_cast<std::uint32_t>(trial), 0x5EED0001u};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::apply(ctr, key);
  const double u = Philox4x32::to_unit(out[0], out[1]);
  return std::floor(u * (max_value + 1));
}

VerificationSummary verify_network(const NetworkSpec& input, std::uint64_t seed,
                                   std::size_t trials, std::size_t cycles) {
  if (cycles < 1) throw InvalidInput("verify_network: need at least one cycle");
  const NetworkSpec spec = topological_renumber(input).spec;
  const std::size_t n = spec.size();
  VerificationSummary summary;
  const StateVector x0 = StateVector::zeros(n);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<Vector> table(cycles, Vector(static_cast<Eigen::Index>(n)));
    for (std::size_t k = 0; k < cycles; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        table[k](static_cast<Eigen::Index>(i)) =
            integer_service_time(seed, trial, k + 1, static_cast<std::uint32_t>(i), 10);
      }
    }
    const auto engine = simulate_table(spec, table, x0);
    const auto oracle = unfolded_completion_times(spec, table, x0);
    bool same = engine.size() == oracle.size();
    for (std::size_t k = 0; same && k < engine.size(); ++k) {
      same = mat_equal(engine[k].x, oracle[k].x);
    }
    tally(summary.oracle_equivalence, same);

    const TandemBoundCheck check = check_tandem_bound(spec, ServiceTimeMatrix(table.front()));
    tally(summary.transition_bound, check.transition_bound);
    tally(summary.support_power_bound, check.support_power_bound);
    tally(summary.shifted_power_bound, check.shifted_power_bound);
    tally(summary.weighted_power_bound, check.weighted_power_bound);
  }
  return summary;
}

}  // namespace fjn

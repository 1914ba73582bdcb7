#include "fjn/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "fjn/error.hpp"

namespace fjn {
namespace {

struct Recurrence {
  SupportMatrix g;
  std::size_t p;
};

Recurrence prepare(const NetworkSpec& input) {
  const NetworkSpec spec = validate(input);
  return {support_matrix(spec), longest_path_length(spec)};
}

void require_state(const NetworkSpec& spec, const StateVector& x0) {
  if (static_cast<std::size_t>(x0.x.size()) != spec.size()) {
    throw InvalidInput("initial state has " + std::to_string(x0.x.size()) +
                       " entries for a " + std::to_string(spec.size()) +
                       "-node network");
  }
}

double replication_gamma(const Trajectory& t, std::uint64_t cycles,
                         std::uint64_t warmup) {
  const Vector growth = t.final_state.x - t.checkpoint.x;
  return growth.maxCoeff() / static_cast<double>(cycles - warmup);
}

}  // namespace

TransitionMatrix build_A(const ServiceTimeMatrix& t, const SupportMatrix& g,
                         std::size_t p, std::uint64_t k) {
  return {transition_matrix(t.times(), g.matrix, p), k, TransitionKind::network};
}

TransitionMatrix build_B(const ServiceTimeMatrix& t, const SupportMatrix& h,
                         std::size_t n, std::uint64_t k) {
  if (h.size() != static_cast<Eigen::Index>(n)) {
    throw InvalidInput("build_B: tandem support is " + std::to_string(h.size()) +
                       "x" + std::to_string(h.size()) + " but n = " +
                       std::to_string(n));
  }
  return {transition_matrix(t.times(), h.matrix, n), k, TransitionKind::tandem};
}

StateVector step(const StateVector& prev, const TransitionMatrix& a) {
  return {mat_vec(a.matrix, prev.x), prev.k + 1};
}

Trajectory simulate(const NetworkSpec& spec, const ScenarioSampler& sampler,
                    std::uint64_t cycles, const StateVector& x0,
                    const SimulationOptions& options) {
  if (cycles < 1) throw InvalidInput("simulate: need at least one cycle");
  if (sampler.size() != spec.size()) {
    throw InvalidInput("sampler has " + std::to_string(sampler.size()) +
                       " nodes, network has " + std::to_string(spec.size()));
  }
  require_state(spec, x0);
  const Recurrence rec = prepare(spec);

  Trajectory out;
  StateVector x = x0;
  if (options.checkpoint == 0) out.checkpoint = x;
  for (std::uint64_t k = 1; k <= cycles; ++k) {
    const ServiceTimeMatrix t = sampler.sample_cycle(k);
    x = step(x, build_A(t, rec.g, rec.p, k));
    if (k == options.checkpoint) out.checkpoint = x;
    if (options.norm_stride > 0 && (k % options.norm_stride == 0 || k == cycles)) {
      out.norms.push_back({k, norm(x.x)});
    }
  }
  out.final_state = std::move(x);
  return out;
}

std::vector<StateVector> simulate_table(const NetworkSpec& spec,
                                        const std::vector<Vector>& service_times,
                                        const StateVector& x0) {
  require_state(spec, x0);
  const Recurrence rec = prepare(spec);
  std::vector<StateVector> out;
  out.reserve(service_times.size());
  StateVector x = x0;
  for (std::size_t k = 0; k < service_times.size(); ++k) {
    x = step(x, build_A(ServiceTimeMatrix(service_times[k]), rec.g, rec.p, k + 1));
    out.push_back(x);
  }
  return out;
}

CycleTimeEstimate estimate_cycle_time(const NetworkSpec& spec,
                                      const ScenarioSampler& sampler,
                                      std::uint64_t cycles,
                                      std::size_t replications,
                                      const EstimateOptions& options) {
  if (cycles < 1) throw InvalidInput("estimate_cycle_time: need K >= 1");
  if (replications < 1) {
    throw InvalidInput("estimate_cycle_time: need at least one replication");
  }
  // Fail fast on bad input before spawning workers.
  prepare(spec);

  CycleTimeEstimate est;
  est.cycles = cycles;
  est.warmup = cycles / 2;
  est.replications = replications;
  est.replication_gamma.assign(replications, 0.0);
  std::vector<double> rates(replications, 0.0);

  const std::uint64_t stride =
      options.max_norm_samples == 0
          ? 0
          : std::max<std::uint64_t>(1, cycles / options.max_norm_samples);
  const StateVector x0 = StateVector::zeros(spec.size());

  auto run_one = [&](std::size_t r) {
    const auto stream = static_cast<std::uint32_t>(sampler.stream() + r);
    SimulationOptions sim;
    sim.checkpoint = est.warmup;
    sim.norm_stride = r == 0 ? stride : 0;
    Trajectory t = simulate(spec, sampler.with_stream(stream), cycles, x0, sim);
    est.replication_gamma[r] = replication_gamma(t, cycles, est.warmup);
    rates[r] = norm(t.final_state.x) / static_cast<double>(cycles);
    if (r == 0) est.norm_samples = std::move(t.norms);
  };

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, replications));
  if (threads <= 1) {
    for (std::size_t r = 0; r < replications; ++r) run_one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
          for (std::size_t r = next++; r < replications; r = next++) {
            try {
              run_one(r);
            } catch (...) {
              if (!failed.exchange(true)) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  // Merged in replication order so the result does not depend on scheduling.
  double sum = 0.0;
  double rate_sum = 0.0;
  for (std::size_t r = 0; r < replications; ++r) {
    sum += est.replication_gamma[r];
    rate_sum += rates[r];
  }
  const auto count = static_cast<double>(replications);
  est.gamma_hat = sum / count;
  est.norm_rate = rate_sum / count;
  if (replications > 1) {
    double ss = 0.0;
    for (double g : est.replication_gamma) ss += (g - est.gamma_hat) * (g - est.gamma_hat);
    est.std_error = std::sqrt(ss / (count - 1.0) / count);
  }
  return est;
}

double analytic_cycle_time(const std::vector<DistributionSpec>& timings) {
  if (timings.empty()) throw InvalidInput("analytic_cycle_time: no nodes");
  double best = 0.0;
  for (const auto& d : timings) best = std::max(best, mean(d));
  return best;
}

double analytic_cycle_time(const NetworkSpec& spec, const ScenarioSampler& sampler) {
  if (sampler.size() != spec.size()) {
    throw InvalidInput("sampler has " + std::to_string(sampler.size()) +
                       " nodes, network has " + std::to_string(spec.size()));
  }
  return analytic_cycle_time(sampler.distributions());
}

}  // namespace fjn

#pragma once

// Gillespie direct-method simulator with time-weighted occupancy.
//
// Reproducibility: the engine is std::mt19937_64 seeded with the 64-bit
// seed through its single-integer constructor, whose output sequence is fixed
// by the C++ standard.  Uniforms are formed from the top 53 bits of each word
// ((w >> 11) * 2^-53); waiting times are -log(1 - u) / a0 and the reaction is
// chosen by a linear scan of the cumulative propensities against u * a0.  No
// std::*_distribution is used, so trajectories are bit-identical across
// standard libraries.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "crn/kinetics.hpp"
#include "crn/network.hpp"

namespace crn {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SsaRng {
 public:
  explicit SsaRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

struct SsaOptions {
  double t_end = 1.0;
  std::uint64_t seed = 0;
  double burn_in_fraction = 0.0;   ///< occupancy recorded on [burn_in_fraction * t_end, t_end]
  std::size_t num_batches = 0;     ///< batch means of species counts over the recorded window
  std::size_t max_recorded_events = 0;
};

struct SsaResult {
  LatticeState final_state;
  double final_time = 0;
  std::uint64_t events = 0;
  bool absorbed = false;
  std::map<LatticeState, double> occupancy;   ///< time spent per state in the recorded window
  double recorded_time = 0;
  std::vector<RealVector> batch_means;        ///< per batch, time-averaged counts
  std::vector<std::pair<double, LatticeState>> trajectory;

  /// Occupancy normalized to a probability distribution.
  std::map<LatticeState, double> occupancy_distribution() const {
    std::map<LatticeState, double> out;
    for (const auto& [x, t] : occupancy) out[x] = t / recorded_time;
    return out;
  }
};

template <StochasticRates R>
SsaResult simulate_ssa(const ReactionNetwork& net, const R& rates, LatticeState x0, const SsaOptions& opt) {
  if (!(opt.t_end > 0)) throw SimulationError("t_end must be positive");
  if (x0.size() != net.num_species() || !is_nonnegative(x0)) throw SimulationError("invalid initial state");
  const std::size_t n = net.num_species();
  SsaRng rng(opt.seed);
  SsaResult res;
  const double t_rec = opt.burn_in_fraction * opt.t_end;
  const double window = opt.t_end - t_rec;
  const std::size_t nb = opt.num_batches;
  std::vector<RealVector> batch_sum(nb, RealVector(n, 0.0));
  const double batch_len = nb ? window / static_cast<double>(nb) : 0.0;

  auto accumulate = [&](const LatticeState& x, double from, double to) {
    from = std::max(from, t_rec);
    to = std::min(to, opt.t_end);
    if (to <= from) return;
    res.occupancy[x] += to - from;
    for (std::size_t b = 0; b < nb; ++b) {
      const double lo = t_rec + batch_len * static_cast<double>(b);
      const double hi = b + 1 == nb ? opt.t_end : lo + batch_len;
      const double overlap = std::min(to, hi) - std::max(from, lo);
      if (overlap <= 0) continue;
      for (std::size_t i = 0; i < n; ++i) batch_sum[b][i] += overlap * static_cast<double>(x[i]);
    }
  };

  LatticeState x = std::move(x0);
  double t = 0;
  std::vector<double> props(net.num_reactions());
  if (opt.max_recorded_events) res.trajectory.emplace_back(0.0, x);
  while (true) {
    double a0 = 0;
    for (std::size_t k = 0; k < props.size(); ++k) {
      props[k] = rates(k, x);
      a0 += props[k];
    }
    if (!std::isfinite(a0)) throw SimulationError("propensity overflow at " + to_string(x));
    if (a0 <= 0) {
      accumulate(x, t, opt.t_end);
      res.absorbed = true;
      t = opt.t_end;
      break;
    }
    const double dt = rng.exponential(a0);
    if (t + dt >= opt.t_end) {
      accumulate(x, t, opt.t_end);
      t = opt.t_end;
      break;
    }
    accumulate(x, t, t + dt);
    t += dt;
    const double target = rng.uniform() * a0;
    double cum = 0;
    std::size_t chosen = props.size() - 1;
    for (std::size_t k = 0; k < props.size(); ++k) {
      cum += props[k];
      if (target < cum && props[k] > 0) {
        chosen = k;
        break;
      }
    }
    while (props[chosen] <= 0) --chosen;   // rounding guard: never fire a zero-rate reaction
    x = add(x, net.reaction_vector(chosen));
    ++res.events;
    if (res.trajectory.size() < opt.max_recorded_events) res.trajectory.emplace_back(t, x);
  }
  res.final_state = x;
  res.final_time = t;
  res.recorded_time = window;
  for (std::size_t b = 0; b < nb; ++b) {
    const double len = b + 1 == nb ? opt.t_end - (t_rec + batch_len * static_cast<double>(b)) : batch_len;
    RealVector mean(n);
    for (std::size_t i = 0; i < n; ++i) mean[i] = batch_sum[b][i] / len;
    res.batch_means.push_back(std::move(mean));
  }
  return res;
}

struct BatchEstimate {
  double mean = 0;
  double std_error = 0;
};

/// Grand mean and standard error of species i from batch means.
inline BatchEstimate batch_estimate(const SsaResult& res, std::size_t i) {
  BatchEstimate out;
  const auto b = res.batch_means.size();
  if (b == 0) return out;
  for (const auto& m : res.batch_means) out.mean += m[i];
  out.mean /= static_cast<double>(b);
  if (b < 2) return out;
  double ss = 0;
  for (const auto& m : res.batch_means) ss += (m[i] - out.mean) * (m[i] - out.mean);
  out.std_error = std::sqrt(ss / static_cast<double>(b - 1) / static_cast<double>(b));
  return out;
}

}  // namespace crn

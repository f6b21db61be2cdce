#pragma once

// Finite continuous-time Markov chains on sets of lattice states:
// construction from a network, communicating-class decomposition and the
// stationary solve on a closed class.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crn/graph.hpp"
#include "crn/kinetics.hpp"
#include "crn/measure.hpp"
#include "crn/network.hpp"

namespace crn {

class ChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse generator on a finite, indexed state set.  Off-diagonal rates only.
class TruncatedChain {
 public:
  TruncatedChain() = default;
  explicit TruncatedChain(std::vector<LatticeState> states) : states_(std::move(states)) {
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (!index_.emplace(states_[i], i).second) throw ChainError("duplicate state " + to_string(states_[i]));
    out_.resize(states_.size());
    exit_rate_.assign(states_.size(), 0.0);
  }

  std::size_t size() const { return states_.size(); }
  const std::vector<LatticeState>& states() const { return states_; }
  const LatticeState& state(std::size_t i) const { return states_.at(i); }

  std::optional<std::size_t> index_of(const LatticeState& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  void add_rate(std::size_t from, std::size_t to, double rate) {
    if (rate < 0 || !std::isfinite(rate)) throw ChainError("transition rates must be finite and >= 0");
    if (from == to || rate == 0) return;
    out_[from][to] += rate;
  }
  void add_exit(std::size_t from, double rate) {
    if (rate > 0) exit_rate_[from] += rate;
  }

  /// q(x_i, x_j), 0 if absent.
  double rate(std::size_t i, std::size_t j) const {
    auto it = out_[i].find(j);
    return it == out_[i].end() ? 0.0 : it->second;
  }
  const std::map<std::size_t, double>& transitions(std::size_t i) const { return out_.at(i); }

  bool boundary_exit(std::size_t i) const { return exit_rate_.at(i) > 0; }
  double exit_rate(std::size_t i) const { return exit_rate_.at(i); }

  /// Total rate out of state i within the chain.
  double internal_out_rate(std::size_t i) const {
    double s = 0;
    for (const auto& [j, q] : out_[i]) s += q;
    return s;
  }

  std::size_t num_transitions() const {
    std::size_t s = 0;
    for (const auto& row : out_) s += row.size();
    return s;
  }

 private:
  std::vector<LatticeState> states_;
  std::map<LatticeState, std::size_t> index_;
  std::vector<std::map<std::size_t, double>> out_;
  std::vector<double> exit_rate_;
};

/// Chain on `states` with every in-set transition; transitions leaving the
/// set are recorded as boundary exits.
template <StochasticRates R>
TruncatedChain build_truncation(const ReactionNetwork& net, const R& rates, std::vector<LatticeState> states) {
  if (states.empty()) throw ChainError("truncation needs at least one state");
  TruncatedChain chain(std::move(states));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto x = chain.state(i);
    for (std::size_t k = 0; k < net.num_reactions(); ++k) {
      const double q = rates(k, x);
      if (!(q > 0)) continue;
      const auto next = add(x, net.reaction_vector(k));
      if (auto j = chain.index_of(next)) chain.add_rate(i, *j, q);
      else chain.add_exit(i, q);
    }
  }
  return chain;
}

template <StochasticRates R>
TruncatedChain build_box_truncation(const ReactionNetwork& net, const R& rates, std::int64_t box_max) {
  if (box_max < 0) throw ChainError("box must be non-empty");
  return build_truncation(net, rates, box_states(net.num_species(), 0, box_max));
}

/// How transitions leaving the state set are treated when deciding closedness.
enum class ExitPolicy {
  Strict,   ///< a class with a boundary exit is not closed
  Reflect,  ///< boundary exits are dropped (reflecting truncation)
};

struct IrreducibleDecomposition {
  std::vector<std::vector<std::size_t>> classes;   ///< ordered by smallest member
  std::vector<bool> closed;
  std::vector<std::size_t> class_of;

  std::vector<std::size_t> closed_classes() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (closed[c]) out.push_back(c);
    return out;
  }
};

inline IrreducibleDecomposition decompose(const TruncatedChain& chain, ExitPolicy policy = ExitPolicy::Strict) {
  const std::size_t n = chain.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, q] : chain.transitions(i)) adj[i].push_back(j);
  std::size_t ncomp = 0;
  const auto comp = strongly_connected_components(n, adj, &ncomp);

  // Renumber components by smallest member for a deterministic order.
  std::vector<std::ptrdiff_t> renum(ncomp, -1);
  IrreducibleDecomposition dec;
  dec.class_of.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (renum[comp[i]] < 0) {
      renum[comp[i]] = static_cast<std::ptrdiff_t>(dec.classes.size());
      dec.classes.emplace_back();
    }
    dec.class_of[i] = static_cast<std::size_t>(renum[comp[i]]);
    dec.classes[dec.class_of[i]].push_back(i);
  }
  dec.closed.assign(dec.classes.size(), true);
  for (std::size_t i = 0; i < n; ++i) {
    auto closed = dec.closed[dec.class_of[i]];
    if (policy == ExitPolicy::Strict && chain.boundary_exit(i)) closed = false;
    for (const auto& [j, q] : chain.transitions(i))
      if (dec.class_of[j] != dec.class_of[i]) closed = false;
  }
  return dec;
}

struct StationaryResult {
  std::size_t class_id = 0;
  std::vector<std::size_t> states;   ///< chain indices of the class
  std::vector<double> pi;            ///< aligned with `states`
  double residual = 0;               ///< || pi^T Q ||_inf on the class
  std::string method;                ///< "sparse-lu" or "power-iteration"
};

/// || pi^T Q ||_inf restricted to `members` (transitions leaving it ignored).
inline double generator_residual(const TruncatedChain& chain, const std::vector<std::size_t>& members,
                                 const std::vector<double>& pi) {
  std::map<std::size_t, std::size_t> local;
  for (std::size_t a = 0; a < members.size(); ++a) local[members[a]] = a;
  std::vector<double> flow(members.size(), 0.0);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (const auto& [j, q] : chain.transitions(members[a])) {
      auto it = local.find(j);
      if (it == local.end()) continue;
      flow[it->second] += pi[a] * q;
      flow[a] -= pi[a] * q;
    }
  }
  double r = 0;
  for (double f : flow) r = std::max(r, std::abs(f));
  return r;
}

namespace detail {

inline std::vector<double> power_iteration(const TruncatedChain& chain, const std::vector<std::size_t>& members,
                                           double tol, int max_iter) {
  std::map<std::size_t, std::size_t> local;
  for (std::size_t a = 0; a < members.size(); ++a) local[members[a]] = a;
  double max_out = 0;
  std::vector<double> out_rate(members.size(), 0.0);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (const auto& [j, q] : chain.transitions(members[a]))
      if (local.count(j)) out_rate[a] += q;
    max_out = std::max(max_out, out_rate[a]);
  }
  std::vector<double> pi(members.size(), 1.0 / static_cast<double>(members.size()));
  if (max_out == 0) return pi;
  const double unif = 1.05 * max_out;
  std::vector<double> next(members.size());
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t a = 0; a < members.size(); ++a) next[a] = pi[a] * (1.0 - out_rate[a] / unif);
    for (std::size_t a = 0; a < members.size(); ++a)
      for (const auto& [j, q] : chain.transitions(members[a])) {
        auto lt = local.find(j);
        if (lt != local.end()) next[lt->second] += pi[a] * q / unif;
      }
    double s = 0;
    for (double v : next) s += v;
    for (auto& v : next) v /= s;
    pi.swap(next);
    if (generator_residual(chain, members, pi) <= tol) break;
  }
  return pi;
}

}  // namespace detail

/// Solves pi^T Q = 0, sum pi = 1 on a closed class by sparse LU with the last
/// balance equation replaced by normalization.  Falls back to power iteration
/// on the uniformized kernel if the LU residual exceeds `tol`.
inline StationaryResult solve_stationary(const TruncatedChain& chain, const IrreducibleDecomposition& dec,
                                         std::size_t class_id, double tol = 1e-10) {
  if (class_id >= dec.classes.size()) throw ChainError("no such class");
  if (!dec.closed[class_id]) throw ChainError("stationary solve requires a closed class");
  StationaryResult res;
  res.class_id = class_id;
  res.states = dec.classes[class_id];
  const auto k = static_cast<Eigen::Index>(res.states.size());
  std::map<std::size_t, Eigen::Index> local;
  for (Eigen::Index a = 0; a < k; ++a) local[res.states[a]] = a;

  if (k == 1) {
    res.pi = {1.0};
    res.method = "trivial";
    return res;
  }

  // Row b of A = Q^T row b: sum_a pi_a q(a, b) - pi_b q(b, .) = 0.
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index a = 0; a < k; ++a) {
    double out = 0;
    for (const auto& [j, q] : chain.transitions(res.states[a])) {
      auto it = local.find(j);
      if (it == local.end()) continue;
      out += q;
      if (it->second != k - 1) trips.emplace_back(it->second, a, q);
    }
    if (a != k - 1) trips.emplace_back(a, a, -out);
    trips.emplace_back(k - 1, a, 1.0);
  }
  Eigen::SparseMatrix<double> mat(k, k);
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.makeCompressed();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  rhs[k - 1] = 1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(mat);
  lu.factorize(mat);
  bool ok = lu.info() == Eigen::Success;
  if (ok) {
    Eigen::VectorXd sol = lu.solve(rhs);
    ok = lu.info() == Eigen::Success && sol.allFinite();
    if (ok) {
      res.pi.assign(sol.data(), sol.data() + k);
      double total = 0;
      for (auto& v : res.pi) {
        if (v < 0) {
          if (v < -1e-12) ok = false;
          v = 0;
        }
        total += v;
      }
      for (auto& v : res.pi) v /= total;
      res.method = "sparse-lu";
    }
  }
  if (ok) res.residual = generator_residual(chain, res.states, res.pi);
  if (!ok || res.residual > tol) {
    res.pi = detail::power_iteration(chain, res.states, tol, 1'000'000);
    res.residual = generator_residual(chain, res.states, res.pi);
    res.method = "power-iteration";
  }
  if (res.residual > tol) throw ChainError("stationary solve did not reach the residual tolerance");
  return res;
}

/// pi as a map over lattice states (for use as a tabulated measure).
inline std::map<LatticeState, double> as_state_map(const TruncatedChain& chain, const StationaryResult& res) {
  std::map<LatticeState, double> out;
  for (std::size_t a = 0; a < res.states.size(); ++a) out[chain.state(res.states[a])] = res.pi[a];
  return out;
}

}  // namespace crn

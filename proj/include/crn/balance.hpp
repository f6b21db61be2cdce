#pragma once

// Complex balance for deterministic states and lattice measures, global
// balance (stationarity) checks, and the search for a positive complex
// balanced state of a mass-action system.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "crn/graph.hpp"
#include "crn/kinetics.hpp"
#include "crn/measure.hpp"
#include "crn/network.hpp"

namespace crn {

/// |lhs - rhs| <= abs + rel * max(|lhs|, |rhs|).
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-9;

  bool accepts(double lhs, double rhs) const {
    return std::abs(lhs - rhs) <= abs + rel * std::max(std::abs(lhs), std::abs(rhs));
  }
};

/// One side-by-side balance equation.
struct BalanceResidual {
  double lhs = 0;
  double rhs = 0;

  double absolute() const { return std::abs(lhs - rhs); }
  /// |lhs - rhs| / max(|lhs|, |rhs|), zero when both sides vanish.
  double relative() const {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0 ? absolute() / scale : 0.0;
  }
};

// ---------------------------------------------------------------------------
// Deterministic complex balance

struct StateBalanceResult {
  bool balanced = false;
  std::vector<BalanceResidual> per_complex;   ///< lhs = out-flow, rhs = in-flow
  double max_relative = 0;
};

inline StateBalanceResult is_complex_balanced_state(const ReactionNetwork& net, const KineticsSpec& spec,
                                                    const RealVector& c, Tolerance tol = {}) {
  StateBalanceResult res;
  res.per_complex.assign(net.num_complexes(), {});
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const double flux = det_rate(net, spec, k, c);
    res.per_complex[net.reaction(k).source].lhs += flux;
    res.per_complex[net.reaction(k).target].rhs += flux;
  }
  res.balanced = true;
  for (const auto& r : res.per_complex) {
    res.max_relative = std::max(res.max_relative, r.relative());
    if (!tol.accepts(r.lhs, r.rhs)) res.balanced = false;
  }
  return res;
}

enum class CbStatus { Found, NotWeaklyReversible, NoConvergence };

inline std::string to_string(CbStatus s) {
  switch (s) {
    case CbStatus::Found: return "found";
    case CbStatus::NotWeaklyReversible: return "not-weakly-reversible";
    case CbStatus::NoConvergence: return "no-convergence";
  }
  return "unknown";
}

struct CbStateResult {
  CbStatus status = CbStatus::NoConvergence;
  RealVector c;                 ///< valid when status == Found
  double final_residual = 0;    ///< max relative per-complex residual at the last iterate
  int iterations = 0;
  bool found() const { return status == CbStatus::Found; }
};

namespace detail {

// g_y(u) = (sum_{y->y'} kappa e^{y.u} - sum_{y'->y} kappa e^{y'.u}) / s_y(u),
// s_y the total flux through y, so every row is a relative residual.
inline void balance_system(const ReactionNetwork& net, const KineticsSpec& spec, const Eigen::VectorXd& u,
                           Eigen::VectorXd& g, Eigen::MatrixXd& jac) {
  const auto m = static_cast<Eigen::Index>(net.num_complexes());
  const auto n = static_cast<Eigen::Index>(net.num_species());
  g.setZero(m);
  jac.setZero(m, n);
  Eigen::VectorXd scale = Eigen::VectorXd::Zero(m);
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const auto& y = net.source(k);
    double dot = 0;
    for (Eigen::Index i = 0; i < n; ++i) dot += static_cast<double>(y[i]) * u[i];
    const double flux = spec.kappa[k] * std::exp(dot);
    const auto src = static_cast<Eigen::Index>(net.reaction(k).source);
    const auto tgt = static_cast<Eigen::Index>(net.reaction(k).target);
    g[src] += flux;
    g[tgt] -= flux;
    scale[src] += flux;
    scale[tgt] += flux;
    for (Eigen::Index i = 0; i < n; ++i) {
      jac(src, i) += flux * static_cast<double>(y[i]);
      jac(tgt, i) -= flux * static_cast<double>(y[i]);
    }
  }
  // The scale is frozen when differentiating; the step only needs a descent
  // direction for the scaled merit function.
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!(scale[j] > 0)) continue;
    g[j] /= scale[j];
    jac.row(j) /= scale[j];
  }
}

// Damped Gauss-Newton with a minimum-norm step (the solution set is a
// manifold, one point per compatibility class) and backtracking on |g|^2.
inline std::optional<Eigen::VectorXd> newton_balance(const ReactionNetwork& net, const KineticsSpec& spec,
                                                     Eigen::VectorXd u, int max_iter, int& iterations) {
  Eigen::VectorXd g, g_trial;
  Eigen::MatrixXd jac, jac_trial;
  balance_system(net, spec, u, g, jac);
  for (iterations = 0; iterations < max_iter; ++iterations) {
    RealVector c(static_cast<std::size_t>(u.size()));
    for (Eigen::Index i = 0; i < u.size(); ++i) c[i] = std::exp(u[i]);
    if (is_complex_balanced_state(net, spec, c, Tolerance{0, 1e-12}).balanced) return u;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);
    const Eigen::VectorXd step = cod.solve(-g);
    if (!step.allFinite()) return std::nullopt;
    double t = 1.0;
    const double f0 = g.squaredNorm();
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      Eigen::VectorXd trial = u + t * step;
      balance_system(net, spec, trial, g_trial, jac_trial);
      if (g_trial.allFinite() && g_trial.squaredNorm() < f0) {
        u = std::move(trial);
        g = g_trial;
        jac = jac_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  RealVector c(static_cast<std::size_t>(u.size()));
  for (Eigen::Index i = 0; i < u.size(); ++i) c[i] = std::exp(u[i]);
  if (is_complex_balanced_state(net, spec, c, Tolerance{0, 1e-9}).balanced) return u;
  return std::nullopt;
}

// Starting point from the Kirchhoff kernel of each (strongly connected)
// linkage class: c^y is proportional to the kernel entry of y within a class,
// which is linear in log c.
inline Eigen::VectorXd kernel_seed(const ReactionNetwork& net, const KineticsSpec& spec) {
  const auto link = linkage_classes(net);
  const auto n = static_cast<Eigen::Index>(net.num_species());
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (const auto& cls : link.classes) {
    const auto sz = static_cast<Eigen::Index>(cls.size());
    std::vector<Eigen::Index> local(net.num_complexes(), -1);
    for (Eigen::Index a = 0; a < sz; ++a) local[cls[a]] = a;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(sz, sz);
    for (std::size_t k = 0; k < net.num_reactions(); ++k) {
      const auto s = local[net.reaction(k).source];
      if (s < 0) continue;
      const auto t = local[net.reaction(k).target];
      lap(t, s) += spec.kappa[k];
      lap(s, s) -= spec.kappa[k];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
    Eigen::MatrixXd ker = lu.kernel();
    Eigen::VectorXd kv = ker.col(0);
    if (kv.sum() < 0) kv = -kv;
    for (Eigen::Index a = 1; a < sz; ++a) {
      if (!(kv[a] > 0) || !(kv[0] > 0)) continue;
      Eigen::VectorXd row(n);
      for (Eigen::Index i = 0; i < n; ++i)
        row[i] = static_cast<double>(net.complex(cls[a])[i] - net.complex(cls[0])[i]);
      rows.push_back(row);
      rhs.push_back(std::log(kv[a] / kv[0]));
    }
  }
  if (rows.empty()) return Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), n);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b[static_cast<Eigen::Index>(r)] = rhs[r];
  }
  return Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(a).solve(b);
}

}  // namespace detail

/// Positive complex balanced state of the deterministic mass-action system.
/// Only attempted for weakly reversible networks.  Newton starts from the
/// Kirchhoff-kernel seed (exact at deficiency zero); if that fails it restarts
/// once from u = log c = 0.  The returned c is verified at relative tolerance 1e-9.
inline CbStateResult find_complex_balanced_state(const ReactionNetwork& net, const KineticsSpec& spec,
                                                 int max_iter = 200) {
  spec.check_against(net);
  CbStateResult res;
  if (!is_weakly_reversible(net)) {
    res.status = CbStatus::NotWeaklyReversible;
    return res;
  }
  const auto n = static_cast<Eigen::Index>(net.num_species());
  int iters = 0;
  auto u = detail::newton_balance(net, spec, detail::kernel_seed(net, spec), max_iter, iters);
  res.iterations = iters;
  if (!u) {
    u = detail::newton_balance(net, spec, Eigen::VectorXd::Zero(n), max_iter, iters);
    res.iterations += iters;
  }
  Eigen::VectorXd last = u ? *u : Eigen::VectorXd::Zero(n);
  res.c.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) res.c[i] = std::exp(last[i]);
  res.final_residual = is_complex_balanced_state(net, spec, res.c, Tolerance{0, 1e-9}).max_relative;
  res.status = u ? CbStatus::Found : CbStatus::NoConvergence;
  if (!u) res.c.clear();
  return res;
}

/// Residual of  sum_{y->y'} kappa = sum_{y'->y} c^{y'-y} kappa  per complex.
inline std::vector<BalanceResidual> kappa_balance_residuals(const ReactionNetwork& net, const KineticsSpec& spec,
                                                            const RealVector& c) {
  std::vector<BalanceResidual> out(net.num_complexes());
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const auto src = net.reaction(k).source, tgt = net.reaction(k).target;
    out[src].lhs += spec.kappa[k];
    // c^{y'-y} for the reaction y' -> y entering tgt: exponent source - target.
    double w = 1.0;
    const auto diff = sub(net.source(k).coeffs, net.target(k).coeffs);
    for (std::size_t i = 0; i < diff.size(); ++i) w *= std::pow(c[i], static_cast<double>(diff[i]));
    out[tgt].rhs += w * spec.kappa[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lattice measures

enum class OnMissing { Skip, Throw };

struct MeasureCheck {
  bool ok = true;
  double max_relative = 0;
  double max_absolute = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::optional<LatticeState> worst_state;
  std::optional<std::size_t> worst_complex;   ///< complex-balance checks only
  std::optional<LatticeState> first_violation_state;
  std::optional<std::size_t> first_violation_complex;
};

/// Left: nu(x) sum_k lambda_k(x).  Right: sum_k nu(x - (y'-y)) lambda_k(x - (y'-y)).
/// nullopt if nu is needed but not evaluable.
template <StochasticRates R>
std::optional<BalanceResidual> stationary_residual(const ReactionNetwork& net, const R& rates, const LatticeMeasure& nu,
                                                   const LatticeState& x) {
  BalanceResidual res;
  double out_rate = 0;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) out_rate += rates(k, x);
  if (out_rate > 0) {
    auto v = nu(x);
    if (!v) return std::nullopt;
    res.lhs = *v * out_rate;
  }
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const LatticeState prev = add(x, sub(net.source(k).coeffs, net.target(k).coeffs));
    if (!is_nonnegative(prev)) continue;
    const double rate = rates(k, prev);
    if (rate == 0) continue;
    auto v = nu(prev);
    if (!v) return std::nullopt;
    res.rhs += *v * rate;
  }
  return res;
}

/// Flux balance of complex y at state x.
/// Left: sum_{y->y'} lambda(x) nu(x).  Right: sum_{y'->y} lambda(x+y'-y) nu(x+y'-y).
template <StochasticRates R>
std::optional<BalanceResidual> complex_balance_residual(const ReactionNetwork& net, const R& rates,
                                                        const LatticeMeasure& nu, const LatticeState& x,
                                                        std::size_t y) {
  BalanceResidual res;
  double out_rate = 0;
  for (auto k : net.outgoing(y)) out_rate += rates(k, x);
  if (out_rate > 0) {
    auto v = nu(x);
    if (!v) return std::nullopt;
    res.lhs = *v * out_rate;
  }
  for (auto k : net.incoming(y)) {
    const LatticeState prev = add(x, sub(net.source(k).coeffs, net.complex(y).coeffs));
    if (!is_nonnegative(prev)) continue;
    const double rate = rates(k, prev);
    if (rate == 0) continue;
    auto v = nu(prev);
    if (!v) return std::nullopt;
    res.rhs += *v * rate;
  }
  return res;
}

namespace detail {
inline void record(MeasureCheck& chk, const BalanceResidual& r, Tolerance tol, const LatticeState& x,
                   std::optional<std::size_t> y) {
  ++chk.checked;
  const bool worse = !chk.worst_state || r.relative() > chk.max_relative;
  if (worse) {
    chk.worst_state = x;
    chk.worst_complex = y;
  }
  chk.max_relative = std::max(chk.max_relative, r.relative());
  chk.max_absolute = std::max(chk.max_absolute, r.absolute());
  if (!tol.accepts(r.lhs, r.rhs)) {
    if (chk.ok) {
      chk.first_violation_state = x;
      chk.first_violation_complex = y;
    }
    chk.ok = false;
  }
}
}  // namespace detail

/// Global balance at every state of `domain`.
template <StochasticRates R>
MeasureCheck is_stationary_measure(const ReactionNetwork& net, const R& rates, const LatticeMeasure& nu,
                                   const std::vector<LatticeState>& domain, Tolerance tol = {},
                                   OnMissing on_missing = OnMissing::Skip) {
  MeasureCheck chk;
  for (const auto& x : domain) {
    auto r = stationary_residual(net, rates, nu, x);
    if (!r) {
      if (on_missing == OnMissing::Throw) throw MeasureError("measure not evaluable near " + to_string(x));
      ++chk.skipped;
      continue;
    }
    detail::record(chk, *r, tol, x, std::nullopt);
  }
  return chk;
}

/// Complex balance at every (x, y) with x in `domain`.
template <StochasticRates R>
MeasureCheck is_complex_balanced_measure(const ReactionNetwork& net, const R& rates, const LatticeMeasure& nu,
                                         const std::vector<LatticeState>& domain, Tolerance tol = {},
                                         OnMissing on_missing = OnMissing::Skip) {
  MeasureCheck chk;
  for (const auto& x : domain)
    for (std::size_t y = 0; y < net.num_complexes(); ++y) {
      auto r = complex_balance_residual(net, rates, nu, x, y);
      if (!r) {
        if (on_missing == OnMissing::Throw) throw MeasureError("measure not evaluable near " + to_string(x));
        ++chk.skipped;
        continue;
      }
      detail::record(chk, *r, tol, x, y);
    }
  return chk;
}

/// Fits nu(x) = K c^x / x! on the given positive states, returning c if every
/// one-step ratio nu(x+e_i)(x_i+1)/nu(x) agrees to `tol`.  Used to decide
/// whether a tabulated measure has the closed product form (mass action).
inline std::optional<RealVector> fit_poisson_product_form(const LatticeMeasure& nu,
                                                          const std::vector<LatticeState>& states,
                                                          Tolerance tol = {}) {
  if (states.empty()) return std::nullopt;
  const std::size_t n = states.front().size();
  RealVector c(n, -1.0);
  for (const auto& x : states) {
    auto vx = nu(x);
    if (!vx || !(*vx > 0)) continue;
    for (std::size_t i = 0; i < n; ++i) {
      LatticeState up = x;
      ++up[i];
      auto vu = nu(up);
      if (!vu) continue;
      const double ratio = *vu * static_cast<double>(x[i] + 1) / *vx;
      if (!(ratio > 0)) return std::nullopt;
      if (c[i] < 0) c[i] = ratio;
      else if (!tol.accepts(ratio, c[i])) return std::nullopt;
    }
  }
  for (double ci : c)
    if (ci < 0) return std::nullopt;
  return c;
}

}  // namespace crn

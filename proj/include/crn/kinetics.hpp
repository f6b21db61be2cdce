#pragma once

// Rate functions: deterministic mass action, stochastic mass action and
// stochastic product-form kinetics with per-species theta functions.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crn/network.hpp"

namespace crn {

class KineticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// theta(m) = m for m > 0, 0 otherwise.
struct LinearTheta {
  friend bool operator==(const LinearTheta&, const LinearTheta&) = default;
};

/// theta(m) = min(m, cap) for m > 0.  Saturating.
struct CappedTheta {
  double cap = 1.0;
  friend bool operator==(const CappedTheta&, const CappedTheta&) = default;
};

/// theta(1..k) tabulated; theta(m) for m > k extends either by the last value
/// (saturating) or linearly with the last increment (non-saturating).
struct TabulatedTheta {
  std::vector<double> values;
  bool extend_linearly = false;
  friend bool operator==(const TabulatedTheta&, const TabulatedTheta&) = default;
};

/// One theta_i: Z -> R_{>=0} with theta(m) = 0 iff m <= 0.
class Theta {
 public:
  using Form = std::variant<LinearTheta, CappedTheta, TabulatedTheta>;

  Theta() = default;
  explicit Theta(Form form) : form_(std::move(form)) { validate(); }

  static Theta linear() { return Theta{}; }
  static Theta capped(double cap) { return Theta{CappedTheta{cap}}; }
  static Theta tabulated(std::vector<double> values, bool extend_linearly) {
    return Theta{TabulatedTheta{std::move(values), extend_linearly}};
  }

  double operator()(std::int64_t m) const {
    if (m <= 0) return 0.0;
    if (std::holds_alternative<LinearTheta>(form_)) return static_cast<double>(m);
    if (const auto* c = std::get_if<CappedTheta>(&form_))
      return std::min(static_cast<double>(m), c->cap);
    const auto& t = std::get<TabulatedTheta>(form_);
    const auto k = static_cast<std::int64_t>(t.values.size());
    if (m <= k) return t.values[static_cast<std::size_t>(m - 1)];
    const double last = t.values.back();
    if (!t.extend_linearly) return last;
    const double step = k >= 2 ? t.values[k - 1] - t.values[k - 2] : last;
    return last + step * static_cast<double>(m - k);
  }

  bool is_linear() const { return std::holds_alternative<LinearTheta>(form_); }

  /// lim_{m -> inf} theta(m) = inf.
  bool non_saturating() const {
    if (is_linear()) return true;
    if (std::holds_alternative<CappedTheta>(form_)) return false;
    return std::get<TabulatedTheta>(form_).extend_linearly;
  }

  const Form& form() const { return form_; }

  /// DSL spelling: "linear", "capped(2)", "table(1,2,2) saturating".
  std::string describe() const;

  friend bool operator==(const Theta&, const Theta&) = default;

 private:
  void validate() const {
    if (const auto* c = std::get_if<CappedTheta>(&form_)) {
      if (!(c->cap > 0) || !std::isfinite(c->cap)) throw KineticsError("capped theta needs a positive cap");
    }
    if (const auto* t = std::get_if<TabulatedTheta>(&form_)) {
      if (t->values.empty()) throw KineticsError("tabulated theta needs at least one value");
      for (double v : t->values)
        if (!(v > 0) || !std::isfinite(v)) throw KineticsError("tabulated theta values must be positive");
      if (t->extend_linearly) {
        const auto k = t->values.size();
        const double step = k >= 2 ? t->values[k - 1] - t->values[k - 2] : t->values.back();
        if (!(step > 0)) throw KineticsError("linearly extended theta table must end increasing");
      }
    }
  }

  Form form_{LinearTheta{}};
};

namespace detail {
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

inline std::string Theta::describe() const {
  if (is_linear()) return "linear";
  if (const auto* c = std::get_if<CappedTheta>(&form_)) return "capped(" + detail::format_real(c->cap) + ")";
  const auto& t = std::get<TabulatedTheta>(form_);
  std::string out = "table(";
  for (std::size_t i = 0; i < t.values.size(); ++i) out += (i ? "," : "") + detail::format_real(t.values[i]);
  out += t.extend_linearly ? ") growing" : ") saturating";
  return out;
}

enum class KineticsKind { DeterministicMassAction, StochasticMassAction, StochasticProductForm };

inline std::string to_string(KineticsKind k) {
  switch (k) {
    case KineticsKind::DeterministicMassAction: return "deterministic-mass-action";
    case KineticsKind::StochasticMassAction: return "stochastic-mass-action";
    case KineticsKind::StochasticProductForm: return "stochastic-product-form";
  }
  return "unknown";
}

/// Rate constants shared by the deterministic and stochastic models, plus the
/// theta family.  `kappa[k]` belongs to reaction k of the owning network.
struct KineticsSpec {
  std::vector<double> kappa;
  std::vector<Theta> theta;
  KineticsKind kind = KineticsKind::StochasticMassAction;

  static KineticsSpec mass_action(std::vector<double> kappa, std::size_t num_species) {
    KineticsSpec s;
    s.kappa = std::move(kappa);
    s.theta.assign(num_species, Theta::linear());
    s.kind = KineticsKind::StochasticMassAction;
    s.validate();
    return s;
  }

  bool all_linear() const {
    return std::all_of(theta.begin(), theta.end(), [](const Theta& t) { return t.is_linear(); });
  }
  bool non_saturating() const {
    return std::all_of(theta.begin(), theta.end(), [](const Theta& t) { return t.non_saturating(); });
  }

  KineticsSpec with_kind(KineticsKind k) const {
    KineticsSpec s = *this;
    s.kind = k;
    return s;
  }

  void validate() const {
    for (double k : kappa)
      if (!(k > 0) || !std::isfinite(k)) throw KineticsError("rate constants must be positive and finite");
  }

  void check_against(const ReactionNetwork& net) const {
    validate();
    if (kappa.size() != net.num_reactions()) throw KineticsError("one rate constant per reaction required");
    if (theta.size() != net.num_species()) throw KineticsError("one theta function per species required");
  }

  friend bool operator==(const KineticsSpec&, const KineticsSpec&) = default;
};

// ---------------------------------------------------------------------------
// Rate evaluation

/// kappa * z^y.
inline double det_rate(const ReactionNetwork& net, const KineticsSpec& spec, std::size_t k,
                       const RealVector& z) {
  for (double v : z)
    if (v < 0) throw KineticsError("negative concentration");
  return spec.kappa.at(k) * monomial_pow(z, net.source(k).coeffs);
}

/// x!/(x-y)! with the indicator 1{x >= y}.
inline double falling_factorial(const IntVector& x, const IntVector& y) {
  double out = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return 0.0;
    for (std::int64_t j = 0; j < y[i]; ++j) out *= static_cast<double>(x[i] - j);
  }
  return out;
}

/// kappa * x!/(x-y)! 1{x >= y}.
inline double stoch_ma_rate(const ReactionNetwork& net, const KineticsSpec& spec, std::size_t k,
                            const LatticeState& x) {
  return spec.kappa.at(k) * falling_factorial(x, net.source(k).coeffs);
}

/// kappa * prod_i prod_{j=0}^{y_i-1} theta_i(x_i - j).
inline double product_form_rate(const ReactionNetwork& net, const KineticsSpec& spec, std::size_t k,
                                const LatticeState& x) {
  const auto& y = net.source(k);
  double out = spec.kappa.at(k);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::int64_t j = 0; j < y[i]; ++j) {
      out *= spec.theta.at(i)(x[i] - j);
      if (out == 0.0) return 0.0;
    }
  return out;
}

/// Any stochastic kinetics: a callable (reaction index, state) -> rate.
template <typename R>
concept StochasticRates = requires(const R& r, std::size_t k, const LatticeState& x) {
  { r(k, x) } -> std::convertible_to<double>;
};

/// Stochastic rates defined by a KineticsSpec.  Product-form kinetics with
/// linear thetas is evaluated through the mass-action formula; the two agree.
class SpecRates {
 public:
  SpecRates(const ReactionNetwork& net, const KineticsSpec& spec) : net_(&net), spec_(&spec) {
    spec.check_against(net);
  }
  double operator()(std::size_t k, const LatticeState& x) const {
    if (spec_->kind == KineticsKind::StochasticProductForm && !spec_->all_linear())
      return product_form_rate(*net_, *spec_, k, x);
    return stoch_ma_rate(*net_, *spec_, k, x);
  }

 private:
  const ReactionNetwork* net_;
  const KineticsSpec* spec_;
};

/// Arbitrary kinetics given by a finite table (reaction, state) -> rate; zero
/// elsewhere.  The support condition (rate > 0 only if x >= source) is
/// validated at construction.
class RateTable {
 public:
  RateTable(const ReactionNetwork& net, std::map<std::pair<std::size_t, LatticeState>, double> table)
      : table_(std::move(table)) {
    for (const auto& [key, rate] : table_) {
      const auto& [k, x] = key;
      if (k >= net.num_reactions()) throw KineticsError("rate table refers to an unknown reaction");
      if (x.size() != net.num_species() || !is_nonnegative(x))
        throw KineticsError("rate table state outside the lattice");
      if (!(rate >= 0) || !std::isfinite(rate)) throw KineticsError("rate table entries must be finite and >= 0");
      if (rate > 0 && !dominates(x, net.source(k).coeffs))
        throw KineticsError("rate table violates the support condition at reaction " + net.reaction_string(k) +
                            ", state " + to_string(x));
    }
  }
  double operator()(std::size_t k, const LatticeState& x) const {
    auto it = table_.find({k, x});
    return it == table_.end() ? 0.0 : it->second;
  }

 private:
  std::map<std::pair<std::size_t, LatticeState>, double> table_;
};

/// True iff the reaction fires at x with positive rate.
template <StochasticRates R>
bool is_active(const R& rates, std::size_t k, const LatticeState& x) {
  if (!is_nonnegative(x)) return false;
  return rates(k, x) > 0.0;
}

inline bool is_active(const ReactionNetwork& net, const KineticsSpec& spec, std::size_t k, const LatticeState& x) {
  return is_active(SpecRates(net, spec), k, x);
}

}  // namespace crn

#pragma once

// Measures on the lattice Z^n_{>=0}: tabulated on a finite set, or the
// closed-form product measure  nu(x) = c^x prod_i prod_{j=1}^{x_i} 1/theta_i(j).

#include <cmath>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "crn/kinetics.hpp"
#include "crn/network.hpp"

namespace crn {

class MeasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TabulatedMeasure {
  std::map<LatticeState, double> values;
  /// When false, states outside the table are not evaluable.
  bool zero_outside = false;
};

struct ProductFormMeasure {
  RealVector c;
  std::vector<Theta> theta;
};

class LatticeMeasure {
 public:
  using Form = std::variant<TabulatedMeasure, ProductFormMeasure>;

  explicit LatticeMeasure(Form form) : form_(std::move(form)) { validate(); }

  static LatticeMeasure tabulated(std::map<LatticeState, double> values, bool zero_outside = false) {
    return LatticeMeasure(TabulatedMeasure{std::move(values), zero_outside});
  }
  static LatticeMeasure zero() { return tabulated({}, true); }

  bool is_product_form() const { return std::holds_alternative<ProductFormMeasure>(form_); }
  const ProductFormMeasure& product_form() const { return std::get<ProductFormMeasure>(form_); }
  const TabulatedMeasure& table() const { return std::get<TabulatedMeasure>(form_); }

  /// nu(x); zero off the non-negative orthant, nullopt if x lies outside a
  /// tabulated domain.
  std::optional<double> operator()(const LatticeState& x) const {
    if (!is_nonnegative(x)) return 0.0;
    if (const auto* t = std::get_if<TabulatedMeasure>(&form_)) {
      auto it = t->values.find(x);
      if (it != t->values.end()) return it->second;
      if (t->zero_outside) return 0.0;
      return std::nullopt;
    }
    const auto& p = std::get<ProductFormMeasure>(form_);
    if (x.size() != p.c.size()) throw MeasureError("state dimension differs from measure dimension");
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::int64_t j = 1; j <= x[i]; ++j) v *= p.c[i] / p.theta[i](j);
    return v;
  }

  double at(const LatticeState& x) const {
    auto v = (*this)(x);
    if (!v) throw MeasureError("measure not evaluable at " + to_string(x));
    return *v;
  }

 private:
  void validate() const {
    if (const auto* t = std::get_if<TabulatedMeasure>(&form_)) {
      for (const auto& [x, v] : t->values)
        if (!(v >= 0) || !std::isfinite(v)) throw MeasureError("measure values must be finite and >= 0");
      return;
    }
    const auto& p = std::get<ProductFormMeasure>(form_);
    if (p.c.size() != p.theta.size()) throw MeasureError("c and theta differ in length");
    for (double ci : p.c)
      if (!(ci > 0) || !std::isfinite(ci)) throw MeasureError("product-form measure needs c > 0");
  }

  Form form_;
};

/// nu(x) = c^x prod_i prod_{j<=x_i} 1/theta_i(j).  For linear theta this is
/// c^x / x!, proportional to a product of Poisson distributions.
inline LatticeMeasure product_form_measure(const RealVector& c, const std::vector<Theta>& theta) {
  return LatticeMeasure(ProductFormMeasure{c, theta});
}

inline LatticeMeasure product_form_measure(const RealVector& c) {
  return product_form_measure(c, std::vector<Theta>(c.size(), Theta::linear()));
}

/// All states of [lo, hi]^n in lexicographic order.
inline std::vector<LatticeState> box_states(std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<LatticeState> out;
  if (hi < lo) return out;
  LatticeState x(n, lo);
  while (true) {
    out.push_back(x);
    std::size_t i = n;
    while (i > 0 && x[i - 1] == hi) x[--i] = lo;
    if (i == 0) return out;
    ++x[i - 1];
  }
}

/// Restriction of nu to `states`, renormalized to total mass one.
inline std::vector<double> normalized_restriction(const LatticeMeasure& nu, const std::vector<LatticeState>& states) {
  std::vector<double> out;
  double total = 0;
  for (const auto& x : states) {
    out.push_back(nu.at(x));
    total += out.back();
  }
  if (!(total > 0)) throw MeasureError("measure has no mass on the given states");
  for (auto& v : out) v /= total;
  return out;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace crn

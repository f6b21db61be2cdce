#pragma once

// Copies of a network in the lattice and the checks built on them.
//
// A copy f: C -> Z^n_{>=0} preserves every reaction vector, so on each linkage
// class it is a translation.  Copies are therefore stored as one offset per
// linkage class, f(y) = y + h[class(y)].

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crn/balance.hpp"
#include "crn/ctmc.hpp"
#include "crn/graph.hpp"
#include "crn/kinetics.hpp"
#include "crn/measure.hpp"
#include "crn/network.hpp"

namespace crn {

class CopyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Copy {
 public:
  Copy(const ReactionNetwork& net, const LinkageDecomposition& link, std::vector<IntVector> offsets)
      : offsets_(std::move(offsets)) {
    if (offsets_.size() != link.num_classes()) throw CopyError("one offset per linkage class required");
    image_.reserve(net.num_complexes());
    for (std::size_t j = 0; j < net.num_complexes(); ++j) {
      const auto& h = offsets_[link.class_of[j]];
      if (h.size() != net.num_species()) throw CopyError("offset has wrong dimension");
      image_.push_back(add(net.complex(j).coeffs, h));
      if (!is_nonnegative(image_.back()))
        throw CopyError("copy maps complex " + net.complex_string(j) + " outside the orthant");
    }
    for (std::size_t k = 0; k < net.num_reactions(); ++k) {
      if (sub(image_[net.reaction(k).target], image_[net.reaction(k).source]) != net.reaction_vector(k))
        throw CopyError("copy does not preserve reaction " + net.reaction_string(k));
    }
  }

  const std::vector<IntVector>& offsets() const { return offsets_; }
  const LatticeState& operator()(std::size_t complex) const { return image_.at(complex); }
  const std::vector<LatticeState>& images() const { return image_; }

  /// Distinct image points in lexicographic order.
  std::vector<LatticeState> image_set() const {
    std::set<LatticeState> s(image_.begin(), image_.end());
    return {s.begin(), s.end()};
  }

  bool is_injective() const { return image_set().size() == image_.size(); }

  /// f + v.
  Copy shifted(const ReactionNetwork& net, const LinkageDecomposition& link, const IntVector& v) const {
    std::vector<IntVector> h;
    for (const auto& o : offsets_) h.push_back(add(o, v));
    return Copy(net, link, std::move(h));
  }

  friend bool operator==(const Copy& a, const Copy& b) { return a.offsets_ == b.offsets_; }

 private:
  std::vector<IntVector> offsets_;
  std::vector<LatticeState> image_;
};

/// Copy with the same offset on every class, chosen so that f(y) = x.
inline Copy translation_copy(const ReactionNetwork& net, const LinkageDecomposition& link, std::size_t y,
                             const LatticeState& x) {
  if (x.size() != net.num_species()) throw CopyError("state has wrong dimension");
  if (!dominates(x, net.complex(y).coeffs))
    throw CopyError("translation copy needs x >= y (x = " + to_string(x) + ", y = " + net.complex_string(y) + ")");
  const auto h = sub(x, net.complex(y).coeffs);
  return Copy(net, link, std::vector<IntVector>(link.num_classes(), h));
}

inline Copy inclusion_copy(const ReactionNetwork& net, const LinkageDecomposition& link) {
  return Copy(net, link, std::vector<IntVector>(link.num_classes(), IntVector(net.num_species(), 0)));
}

/// Offsets of one linkage class keeping all of its images in [0, box_max]^n.
inline std::vector<IntVector> class_offsets(const ReactionNetwork& net, const std::vector<std::size_t>& cls,
                                            std::int64_t box_max) {
  const std::size_t n = net.num_species();
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t mn = std::numeric_limits<std::int64_t>::max(), mx = 0;
    for (auto j : cls) {
      mn = std::min(mn, net.complex(j)[i]);
      mx = std::max(mx, net.complex(j)[i]);
    }
    lo[i] = -mn;
    hi[i] = box_max - mx;
    if (hi[i] < lo[i]) return {};
  }
  std::vector<IntVector> out;
  IntVector h = lo;
  while (true) {
    out.push_back(h);
    std::size_t i = n;
    while (i > 0 && h[i - 1] == hi[i - 1]) {
      h[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return out;
    ++h[i - 1];
  }
}

/// Visits every copy with all images in [0, box_max]^n in lexicographic order
/// of the offset tuple.  The visitor returns false to stop early.
inline void for_each_copy(const ReactionNetwork& net, const LinkageDecomposition& link, std::int64_t box_max,
                          bool require_injective, const std::function<bool(const Copy&)>& visit) {
  if (box_max < 0) return;
  std::vector<std::vector<IntVector>> choices;
  for (const auto& cls : link.classes) {
    choices.push_back(class_offsets(net, cls, box_max));
    if (choices.back().empty()) return;
  }
  const std::size_t L = choices.size();
  std::vector<std::size_t> pick(L, 0);
  while (true) {
    std::vector<IntVector> offsets;
    for (std::size_t c = 0; c < L; ++c) offsets.push_back(choices[c][pick[c]]);
    Copy f(net, link, std::move(offsets));
    if (!require_injective || f.is_injective())
      if (!visit(f)) return;
    std::size_t c = L;
    while (c > 0 && pick[c - 1] + 1 == choices[c - 1].size()) pick[--c] = 0;
    if (c == 0) return;
    ++pick[c - 1];
  }
}

inline std::vector<Copy> enumerate_copies(const ReactionNetwork& net, std::int64_t box_max, bool require_injective) {
  const auto link = linkage_classes(net);
  std::vector<Copy> out;
  for_each_copy(net, link, box_max, require_injective, [&](const Copy& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Node balance and activity

struct NodeResidual {
  LatticeState x;
  BalanceResidual residual;   ///< lhs = nu(x) * out-flow, rhs = in-flow
};

struct NodeBalanceResult {
  bool balanced = true;
  bool evaluable = true;
  std::vector<NodeResidual> nodes;
  double max_relative = 0;
};

/// Node balance at every x in f(C), aggregating over all complexes mapped to x.
template <StochasticRates R>
NodeBalanceResult is_node_balanced(const ReactionNetwork& net, const R& rates, const LatticeMeasure& nu,
                                   const Copy& f, Tolerance tol = {}) {
  std::map<LatticeState, BalanceResidual> acc;
  for (const auto& x : f.image_set()) acc[x];
  NodeBalanceResult res;
  std::map<LatticeState, double> out_rate;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const auto& x = f(net.reaction(k).source);
    const double q = rates(k, x);
    if (q == 0) continue;
    out_rate[x] += q;
    auto v = nu(x);
    if (!v) {
      res.evaluable = false;
      continue;
    }
    acc[f(net.reaction(k).target)].rhs += *v * q;
  }
  for (const auto& [x, q] : out_rate) {
    auto v = nu(x);
    if (v) acc[x].lhs = *v * q;
  }
  for (const auto& [x, r] : acc) {
    res.nodes.push_back({x, r});
    res.max_relative = std::max(res.max_relative, r.relative());
    if (!tol.accepts(r.lhs, r.rhs)) res.balanced = false;
  }
  if (!res.evaluable) res.balanced = false;
  return res;
}

/// For every reaction y -> y': nu(f(y)) times the summed rate of reactions
/// sharing the edge f(y) -> f(y') is positive.
template <StochasticRates R>
bool is_active_copy(const ReactionNetwork& net, const R& rates, const LatticeMeasure& nu, const Copy& f) {
  std::map<std::pair<LatticeState, LatticeState>, double> edge_rate;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const auto& x = f(net.reaction(k).source);
    edge_rate[{x, f(net.reaction(k).target)}] += rates(k, x);
  }
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    const auto& x = f(net.reaction(k).source);
    auto v = nu(x);
    if (!v) return false;
    if (!(*v * edge_rate[{x, f(net.reaction(k).target)}] > 0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Chains on copies

/// Chain whose states are the union of the copies' images and whose rate
/// q(x, x') sums lambda_{y->y'}(x) over every copy and reaction with
/// f(y) = x, f(y') = x'.  States are in lexicographic order; zero-rate edges
/// are omitted.  The result has no boundary exits.
template <StochasticRates R>
TruncatedChain union_chain(const ReactionNetwork& net, const R& rates, const std::vector<Copy>& copies) {
  if (copies.empty()) throw CopyError("union chain needs at least one copy");
  std::set<LatticeState> all;
  for (const auto& f : copies)
    for (const auto& x : f.images()) all.insert(x);
  TruncatedChain chain(std::vector<LatticeState>(all.begin(), all.end()));
  for (const auto& f : copies)
    for (std::size_t k = 0; k < net.num_reactions(); ++k) {
      const auto& x = f(net.reaction(k).source);
      const double q = rates(k, x);
      if (!(q > 0)) continue;
      chain.add_rate(*chain.index_of(x), *chain.index_of(f(net.reaction(k).target)), q);
    }
  return chain;
}

/// The chain W_f of a single copy.
template <StochasticRates R>
TruncatedChain copy_chain(const ReactionNetwork& net, const R& rates, const Copy& f) {
  return union_chain(net, rates, std::vector<Copy>{f});
}

// ---------------------------------------------------------------------------
// Verifiers

struct CopyWitness {
  std::vector<IntVector> offsets;
  std::vector<LatticeState> images;
  double max_relative = 0;
};

inline CopyWitness make_witness(const Copy& f, double max_relative) {
  return CopyWitness{f.offsets(), f.images(), max_relative};
}

struct PairWitness {
  LatticeState x;
  std::size_t complex = 0;
  BalanceResidual residual;
};

struct AnyKineticsReport {
  std::int64_t box_max = 0;
  bool every_injective_copy_balanced = true;   ///< condition (1)
  bool complex_balanced = true;                ///< condition (2)
  bool every_copy_balanced = true;             ///< condition (3)
  std::size_t injective_copies = 0;
  std::size_t copies = 0;
  std::size_t pairs_checked = 0;
  std::size_t unevaluable = 0;
  std::optional<CopyWitness> injective_witness;
  std::optional<CopyWitness> copy_witness;
  std::optional<PairWitness> pair_witness;
  bool agree() const {
    return every_injective_copy_balanced == complex_balanced && complex_balanced == every_copy_balanced;
  }
};

/// Pairs (x, y) for which the translate x - y + (class of y) fits in the box.
inline std::vector<std::pair<LatticeState, std::size_t>> box_pairs(const ReactionNetwork& net,
                                                                   const LinkageDecomposition& link,
                                                                   std::int64_t box_max) {
  std::vector<std::pair<LatticeState, std::size_t>> out;
  const auto states = box_states(net.num_species(), 0, box_max);
  for (std::size_t y = 0; y < net.num_complexes(); ++y) {
    const auto& cls = link.classes[link.class_of[y]];
    for (const auto& x : states) {
      const auto h = sub(x, net.complex(y).coeffs);
      bool fits = true;
      for (auto j : cls) {
        const auto img = add(net.complex(j).coeffs, h);
        for (auto v : img)
          if (v < 0 || v > box_max) fits = false;
      }
      if (fits) out.emplace_back(x, y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Evaluates, on the box [0, box_max]^n, the three equivalent conditions:
/// every injective copy node balanced, nu complex balanced, every copy node
/// balanced.  Disagreement indicates an implementation fault.
template <StochasticRates R>
AnyKineticsReport verify_any_kinetics(const ReactionNetwork& net, const R& rates, const LatticeMeasure& nu,
                                      std::int64_t box_max, Tolerance tol = {}) {
  AnyKineticsReport rep;
  rep.box_max = box_max;
  const auto link = linkage_classes(net);
  for_each_copy(net, link, box_max, false, [&](const Copy& f) {
    const bool inj = f.is_injective();
    const auto nb = is_node_balanced(net, rates, nu, f, tol);
    if (!nb.evaluable) ++rep.unevaluable;
    ++rep.copies;
    if (!nb.balanced) {
      if (rep.every_copy_balanced) rep.copy_witness = make_witness(f, nb.max_relative);
      rep.every_copy_balanced = false;
    }
    if (inj) {
      ++rep.injective_copies;
      if (!nb.balanced) {
        if (rep.every_injective_copy_balanced) rep.injective_witness = make_witness(f, nb.max_relative);
        rep.every_injective_copy_balanced = false;
      }
    }
    return true;
  });
  for (const auto& [x, y] : box_pairs(net, link, box_max)) {
    auto r = complex_balance_residual(net, rates, nu, x, y);
    ++rep.pairs_checked;
    if (!r) {
      ++rep.unevaluable;
      if (rep.complex_balanced) rep.pair_witness = PairWitness{x, y, {}};
      rep.complex_balanced = false;
      continue;
    }
    if (!tol.accepts(r->lhs, r->rhs)) {
      if (rep.complex_balanced) rep.pair_witness = PairWitness{x, y, *r};
      rep.complex_balanced = false;
    }
  }
  return rep;
}

struct SingleCopyReport {
  std::int64_t box_max = 0;
  std::optional<CopyWitness> balanced_copy;      ///< active, injective, node balanced
  std::size_t injective_copies_examined = 0;
  bool complex_balanced_on_box = false;
  MeasureCheck box_check;
  std::vector<BalanceResidual> kappa_residuals;  ///< sum kappa_out vs sum c^{y'-y} kappa_in
  bool kappa_balanced = false;
  bool consistent() const {
    return balanced_copy.has_value() == complex_balanced_on_box && complex_balanced_on_box == kappa_balanced;
  }
};

/// Searches the box for an active injective node-balanced copy with respect
/// to the product-form measure built from c, and cross-checks complex balance.
inline SingleCopyReport verify_single_copy_theorem(const ReactionNetwork& net, const KineticsSpec& spec,
                                                   const RealVector& c, std::int64_t box_max, Tolerance tol = {}) {
  SingleCopyReport rep;
  rep.box_max = box_max;
  const auto nu = product_form_measure(c, spec.theta);
  const auto pf = spec.with_kind(KineticsKind::StochasticProductForm);
  const SpecRates rates(net, pf);
  const auto link = linkage_classes(net);
  for_each_copy(net, link, box_max, true, [&](const Copy& f) {
    ++rep.injective_copies_examined;
    if (!is_active_copy(net, rates, nu, f)) return true;
    const auto nb = is_node_balanced(net, rates, nu, f, tol);
    if (nb.balanced) {
      rep.balanced_copy = make_witness(f, nb.max_relative);
      return false;
    }
    return true;
  });
  rep.box_check = is_complex_balanced_measure(net, rates, nu, box_states(net.num_species(), 0, box_max), tol);
  rep.complex_balanced_on_box = rep.box_check.ok;
  rep.kappa_residuals = kappa_balance_residuals(net, spec, c);
  rep.kappa_balanced = std::all_of(rep.kappa_residuals.begin(), rep.kappa_residuals.end(),
                                   [&](const BalanceResidual& r) { return tol.accepts(r.lhs, r.rhs); });
  return rep;
}

enum class TranslationMode { Full, Probe };

enum class TranslationStatus {
  ComplexBalanced,      ///< every translate balanced; complex balance concluded and confirmed
  NotComplexBalanced,   ///< some translate unbalanced; no conclusion drawn
  HypothesisViolated,   ///< nu is not of product form (or kinetics is not mass action)
  TheoremInconsistent,  ///< conclusion contradicts the independent check
};

inline std::string to_string(TranslationStatus s) {
  switch (s) {
    case TranslationStatus::ComplexBalanced: return "complex-balanced";
    case TranslationStatus::NotComplexBalanced: return "not-complex-balanced";
    case TranslationStatus::HypothesisViolated: return "hypothesis-violated";
    case TranslationStatus::TheoremInconsistent: return "theorem-inconsistent";
  }
  return "unknown";
}

struct TranslationReport {
  TranslationMode mode = TranslationMode::Probe;
  std::int64_t degree = 0;             ///< d = max |y|_1 over reaction sources
  IntVector grid_max;                  ///< translates v range over prod_i {0..grid_max[i]}
  bool copy_active = false;
  bool all_translates_balanced = true;
  std::size_t translates_checked = 0;
  std::optional<IntVector> first_unbalanced_v;
  bool hypothesis_holds = false;       ///< mass action and nu proportional to c^x/x!
  std::optional<RealVector> fitted_c;
  bool complex_balanced_check = false; ///< independent complex-balance check of nu on a box
  bool kappa_balanced = false;
  /// max over (x in f(C), v) of |P(x, v) - node residual / nu(x + v)|, where
  /// P(x, v) = sum_{f(y)=x} (x+v)!/(x+v-y)! (sum kappa_out - sum c^{y'-y} kappa_in).
  double polynomial_identity_error = 0;
  double max_polynomial_value = 0;
  TranslationStatus status = TranslationStatus::NotComplexBalanced;
};

/// Polynomial P(x, v) of the node-balance identity under a Poisson product measure.
inline double translation_polynomial(const ReactionNetwork& net, const KineticsSpec& spec, const RealVector& c,
                                     const Copy& f, const LatticeState& x, const IntVector& v) {
  const auto kres = kappa_balance_residuals(net, spec, c);
  const auto z = add(x, v);
  double p = 0;
  for (std::size_t y = 0; y < net.num_complexes(); ++y) {
    if (f(y) != x) continue;
    p += falling_factorial(z, net.complex(y).coeffs) * (kres[y].lhs - kres[y].rhs);
  }
  return p;
}

/// Largest coefficient of each species over reaction sources.  The node
/// residual of f + v, divided by nu(x + v), is a polynomial in v whose degree
/// in v_i is at most this bound, so it vanishes identically once it vanishes
/// on the grid prod_i {0..D_i}.
inline IntVector source_degree_per_species(const ReactionNetwork& net) {
  IntVector d(net.num_species(), 0);
  for (std::size_t k = 0; k < net.num_reactions(); ++k)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], net.source(k)[i]);
  return d;
}

/// States of prod_i {0..hi[i]} in lexicographic order.
inline std::vector<LatticeState> grid_states(const IntVector& hi) {
  std::vector<LatticeState> out;
  LatticeState x(hi.size(), 0);
  while (true) {
    out.push_back(x);
    std::size_t i = hi.size();
    while (i > 0 && x[i - 1] == hi[i - 1]) x[--i] = 0;
    if (i == 0) return out;
    ++x[i - 1];
  }
}

/// Checks whether f + v is node balanced for v on the probe grid (probe
/// mode) or on {0..side}^n (full mode), and relates the outcome to complex
/// balance of nu.  `side` <= 0 in full mode selects 2d + 2.
inline TranslationReport verify_translation_family_theorem(const ReactionNetwork& net, const KineticsSpec& spec,
                                                           const LatticeMeasure& nu, const Copy& f,
                                                           TranslationMode mode, std::int64_t side = 0,
                                                           Tolerance tol = {}) {
  TranslationReport rep;
  rep.mode = mode;
  rep.degree = net.max_source_degree();
  rep.grid_max = mode == TranslationMode::Probe
                     ? source_degree_per_species(net)
                     : IntVector(net.num_species(), side > 0 ? side : 2 * rep.degree + 2);
  const std::int64_t reach = *std::max_element(rep.grid_max.begin(), rep.grid_max.end());
  const auto ma = spec.with_kind(KineticsKind::StochasticMassAction);
  const SpecRates rates(net, ma);
  const auto link = linkage_classes(net);
  const std::size_t n = net.num_species();

  rep.copy_active = is_active_copy(net, rates, nu, f);

  // Hypothesis: mass action and nu proportional to c^x / x!.
  const std::int64_t fit_side = std::max<std::int64_t>(reach + net.max_coefficient() + 1, 4);
  if (nu.is_product_form()) {
    const auto& pf = nu.product_form();
    const bool linear = std::all_of(pf.theta.begin(), pf.theta.end(), [](const Theta& t) { return t.is_linear(); });
    if (linear) rep.fitted_c = pf.c;
  } else {
    std::vector<LatticeState> fit_states;
    for (const auto& x : box_states(n, 0, fit_side)) fit_states.push_back(x);
    rep.fitted_c = fit_poisson_product_form(nu, fit_states, tol);
  }
  rep.hypothesis_holds = spec.all_linear() && rep.fitted_c.has_value();

  for (const auto& v : grid_states(rep.grid_max)) {
    const Copy g = f.shifted(net, link, v);
    const auto nb = is_node_balanced(net, rates, nu, g, tol);
    ++rep.translates_checked;
    if (!nb.balanced && rep.all_translates_balanced) {
      rep.all_translates_balanced = false;
      rep.first_unbalanced_v = v;
    }
    if (rep.fitted_c) {
      for (const auto& node : nb.nodes) {
        const LatticeState x = sub(node.x, v);
        const double p = translation_polynomial(net, ma, *rep.fitted_c, f, x, v);
        auto nz = nu(node.x);
        if (!nz || !(*nz > 0)) continue;
        const double scaled = (node.residual.lhs - node.residual.rhs) / *nz;
        rep.max_polynomial_value = std::max(rep.max_polynomial_value, std::abs(p));
        const double scale = std::max(1.0, (node.residual.lhs + node.residual.rhs) / *nz);
        rep.polynomial_identity_error = std::max(rep.polynomial_identity_error, std::abs(p - scaled) / scale);
      }
    }
  }

  // Independent check: complex balance of nu on a box around the translates.
  const std::int64_t check_side = std::min<std::int64_t>(fit_side, 12);
  rep.complex_balanced_check = is_complex_balanced_measure(net, rates, nu, box_states(n, 0, check_side), tol).ok;
  if (rep.fitted_c) {
    const auto kr = kappa_balance_residuals(net, ma, *rep.fitted_c);
    rep.kappa_balanced =
        std::all_of(kr.begin(), kr.end(), [&](const BalanceResidual& r) { return tol.accepts(r.lhs, r.rhs); });
  }

  if (!rep.hypothesis_holds) {
    rep.status = TranslationStatus::HypothesisViolated;
  } else {
    const bool premise = rep.all_translates_balanced && (mode == TranslationMode::Full || rep.copy_active);
    if (premise) {
      rep.status = rep.complex_balanced_check && rep.kappa_balanced ? TranslationStatus::ComplexBalanced
                                                                     : TranslationStatus::TheoremInconsistent;
    } else {
      rep.status = rep.complex_balanced_check && rep.all_translates_balanced == false && rep.kappa_balanced
                       ? TranslationStatus::TheoremInconsistent
                       : TranslationStatus::NotComplexBalanced;
    }
  }
  return rep;
}

struct BoxTheoremReport {
  std::int64_t m1 = 0;
  std::int64_t enumeration_box = 0;
  bool stationary_on_cube = false;
  MeasureCheck stationary_check;
  bool positive_on_examined = true;
  std::size_t copies_examined = 0;
  bool condition_holds = true;                 ///< every injective copy meeting the cube is balanced
  std::optional<CopyWitness> witness;
  std::optional<bool> complex_balanced_on_cube;  ///< evaluated only when the condition holds
};

inline bool intersects_cube(const Copy& f, std::int64_t m1) {
  for (const auto& x : f.images())
    if (std::all_of(x.begin(), x.end(), [m1](auto v) { return v <= m1; })) return true;
  return false;
}

/// Node balance of every injective copy that meets [0, M1]^n.  Copies are
/// drawn from the enumeration box of side M1 + (largest complex coordinate).
template <StochasticRates R>
BoxTheoremReport verify_box_theorem(const ReactionNetwork& net, const R& rates, const LatticeMeasure& nu,
                                    std::int64_t m1, Tolerance tol = {}) {
  BoxTheoremReport rep;
  rep.m1 = m1;
  rep.enumeration_box = m1 + net.max_coefficient();
  const auto cube = box_states(net.num_species(), 0, m1);
  rep.stationary_check = is_stationary_measure(net, rates, nu, cube, tol);
  rep.stationary_on_cube = rep.stationary_check.ok;
  const auto link = linkage_classes(net);
  if (net.num_reactions() == 0) {
    rep.complex_balanced_on_cube = true;
    return rep;
  }
  for_each_copy(net, link, rep.enumeration_box, true, [&](const Copy& f) {
    if (!intersects_cube(f, m1)) return true;
    ++rep.copies_examined;
    for (const auto& x : f.images()) {
      auto v = nu(x);
      if (!v || !(*v > 0)) rep.positive_on_examined = false;
    }
    const auto nb = is_node_balanced(net, rates, nu, f, tol);
    if (!nb.balanced && rep.condition_holds) {
      rep.condition_holds = false;
      rep.witness = make_witness(f, nb.max_relative);
    }
    return true;
  });
  if (rep.condition_holds) rep.complex_balanced_on_cube = is_complex_balanced_measure(net, rates, nu, cube, tol).ok;
  return rep;
}

}  // namespace crn

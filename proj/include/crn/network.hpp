#pragma once

// Core reaction-network types: species, complexes, reactions and the
// validated network triple.  All indices are 0-based.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crn {

using IntVector = std::vector<std::int64_t>;
using RealVector = std::vector<double>;

/// A lattice state x in Z^n_{>=0}.  Kept as a plain integer vector so states
/// can be used as map keys and compared lexicographically.
using LatticeState = IntVector;

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Species {
  std::size_t index = 0;
  std::string name;

  friend bool operator==(const Species&, const Species&) = default;
};

struct Complex {
  IntVector coeffs;

  std::size_t size() const { return coeffs.size(); }
  std::int64_t operator[](std::size_t i) const { return coeffs[i]; }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](auto v) { return v == 0; });
  }
  std::int64_t l1_norm() const {
    return std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0});
  }

  friend bool operator==(const Complex&, const Complex&) = default;
  friend auto operator<=>(const Complex&, const Complex&) = default;
};

struct Reaction {
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Reaction&, const Reaction&) = default;
  friend auto operator<=>(const Reaction&, const Reaction&) = default;
};

// ---------------------------------------------------------------------------
// Vector utilities

/// Indices i with v_i != 0 (0-based).
template <typename T>
std::vector<std::size_t> support(const std::vector<T>& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != T{0}) out.push_back(i);
  return out;
}

/// x^v = prod x_i^{v_i} with 0^0 = 1.
inline double monomial_pow(const RealVector& x, const IntVector& v) {
  if (x.size() != v.size()) throw std::invalid_argument("monomial_pow: length mismatch");
  double out = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (v[i] < 0) throw std::invalid_argument("monomial_pow: negative exponent");
    if (v[i] == 0) continue;
    out *= std::pow(x[i], static_cast<double>(v[i]));
  }
  return out;
}

/// Componentwise a >= b.
inline bool dominates(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

inline bool is_nonnegative(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](auto c) { return c >= 0; });
}

inline IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

/// The triple (S, C, R).  Construction validates every structural invariant;
/// an instance is immutable afterwards.
class ReactionNetwork {
 public:
  ReactionNetwork() = default;

  ReactionNetwork(std::vector<std::string> species_names, std::vector<Complex> complexes,
                  std::vector<Reaction> reactions)
      : complexes_(std::move(complexes)), reactions_(std::move(reactions)) {
    for (std::size_t i = 0; i < species_names.size(); ++i)
      species_.push_back(Species{i, std::move(species_names[i])});
    validate();
    out_.assign(complexes_.size(), {});
    in_.assign(complexes_.size(), {});
    for (std::size_t k = 0; k < reactions_.size(); ++k) {
      out_[reactions_[k].source].push_back(k);
      in_[reactions_[k].target].push_back(k);
    }
  }

  std::size_t num_species() const { return species_.size(); }
  std::size_t num_complexes() const { return complexes_.size(); }
  std::size_t num_reactions() const { return reactions_.size(); }

  const std::vector<Species>& species() const { return species_; }
  const std::vector<Complex>& complexes() const { return complexes_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }

  const Complex& complex(std::size_t j) const { return complexes_.at(j); }
  const Reaction& reaction(std::size_t k) const { return reactions_.at(k); }
  const Complex& source(std::size_t k) const { return complexes_[reactions_[k].source]; }
  const Complex& target(std::size_t k) const { return complexes_[reactions_[k].target]; }

  /// Reactions leaving / entering complex j.
  const std::vector<std::size_t>& outgoing(std::size_t j) const { return out_.at(j); }
  const std::vector<std::size_t>& incoming(std::size_t j) const { return in_.at(j); }

  /// y' - y for reaction k.
  IntVector reaction_vector(std::size_t k) const {
    return sub(target(k).coeffs, source(k).coeffs);
  }

  std::optional<std::size_t> find_species(const std::string& name) const {
    for (const auto& s : species_)
      if (s.name == name) return s.index;
    return std::nullopt;
  }

  std::optional<std::size_t> find_complex(const Complex& c) const {
    for (std::size_t j = 0; j < complexes_.size(); ++j)
      if (complexes_[j] == c) return j;
    return std::nullopt;
  }

  std::optional<std::size_t> find_reaction(std::size_t src, std::size_t tgt) const {
    for (std::size_t k = 0; k < reactions_.size(); ++k)
      if (reactions_[k].source == src && reactions_[k].target == tgt) return k;
    return std::nullopt;
  }

  /// Human-readable complex, e.g. "A+2B" or "0".
  std::string complex_string(std::size_t j) const {
    const auto& c = complexes_.at(j);
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += '+';
      if (c[i] != 1) out += std::to_string(c[i]);
      out += species_[i].name;
    }
    return out.empty() ? "0" : out;
  }

  std::string reaction_string(std::size_t k) const {
    return complex_string(reactions_.at(k).source) + "->" + complex_string(reactions_.at(k).target);
  }

  /// Largest l1 norm of a reaction source complex (d in the probe-set construction).
  std::int64_t max_source_degree() const {
    std::int64_t d = 0;
    for (std::size_t k = 0; k < reactions_.size(); ++k) d = std::max(d, source(k).l1_norm());
    return d;
  }

  /// Largest single coordinate over all complexes.
  std::int64_t max_coefficient() const {
    std::int64_t d = 0;
    for (const auto& c : complexes_)
      for (auto v : c.coeffs) d = std::max(d, v);
    return d;
  }

  friend bool operator==(const ReactionNetwork& a, const ReactionNetwork& b) {
    return a.species_ == b.species_ && a.complexes_ == b.complexes_ && a.reactions_ == b.reactions_;
  }

 private:
  void validate() const {
    const std::size_t n = species_.size();
    std::set<std::string> names;
    for (const auto& s : species_) {
      if (s.name.empty()) throw NetworkError("species name must be nonempty");
      if (!names.insert(s.name).second) throw NetworkError("duplicate species name '" + s.name + "'");
    }
    std::set<Complex> seen_complexes;
    for (const auto& c : complexes_) {
      if (c.size() != n) throw NetworkError("complex has wrong dimension");
      if (!is_nonnegative(c.coeffs)) throw NetworkError("complex has a negative coefficient");
      if (!seen_complexes.insert(c).second) throw NetworkError("duplicate complex");
    }
    std::set<Reaction> seen_reactions;
    std::vector<bool> used(complexes_.size(), false);
    for (const auto& r : reactions_) {
      if (r.source >= complexes_.size() || r.target >= complexes_.size())
        throw NetworkError("reaction refers to an unknown complex");
      if (r.source == r.target) throw NetworkError("self-loop reaction");
      if (!seen_reactions.insert(r).second) throw NetworkError("duplicate reaction");
      used[r.source] = used[r.target] = true;
    }
    for (std::size_t j = 0; j < complexes_.size(); ++j)
      if (!used[j]) throw NetworkError("complex does not appear in any reaction");
    for (std::size_t i = 0; i < n; ++i) {
      bool present = std::any_of(complexes_.begin(), complexes_.end(),
                                 [i](const Complex& c) { return c[i] != 0; });
      if (!present) throw NetworkError("species '" + species_[i].name + "' appears in no complex");
    }
  }

  std::vector<Species> species_;
  std::vector<Complex> complexes_;
  std::vector<Reaction> reactions_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

}  // namespace crn

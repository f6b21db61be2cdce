#pragma once

// Seeded random networks and DSL texts for property tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crn/graph.hpp"
#include "crn/kinetics.hpp"
#include "crn/network.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<std::string> species_names(std::size_t n) {
  static const char* names[] = {"A", "B", "C", "D", "E", "F"};
  return {names, names + n};
}

/// m distinct complexes over n species with coefficients in [0, max_coef].
inline std::vector<crn::Complex> distinct_complexes(Rng& rng, std::size_t n, std::size_t m, std::int64_t max_coef) {
  std::set<crn::IntVector> seen;
  std::vector<crn::Complex> out;
  while (out.size() < m) {
    crn::IntVector v(n);
    for (auto& c : v) c = uniform_int(rng, 0, max_coef);
    if (seen.insert(v).second) out.push_back(crn::Complex{v});
  }
  return out;
}

/// Arbitrary valid network: n <= max_species, 2 <= m <= max_complexes.
inline crn::ReactionNetwork random_network(Rng& rng, std::size_t max_species, std::size_t max_complexes) {
  while (true) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_species)));
    std::int64_t room = 1;
    for (std::size_t i = 0; i < n; ++i) room *= 4;
    const auto m = static_cast<std::size_t>(
        uniform_int(rng, 2, std::min<std::int64_t>(room, static_cast<std::int64_t>(max_complexes))));
    auto cx = distinct_complexes(rng, n, m, 3);
    std::set<crn::Reaction> rs;
    // Every complex takes part in at least one reaction.
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t other;
      do other = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1));
      while (other == j);
      if (uniform_int(rng, 0, 1)) rs.insert({j, other});
      else rs.insert({other, j});
    }
    const auto extra = uniform_int(rng, 0, static_cast<std::int64_t>(m));
    for (std::int64_t e = 0; e < extra; ++e) {
      auto a = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1));
      auto b = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1));
      if (a != b) rs.insert({a, b});
    }
    try {
      return crn::ReactionNetwork(species_names(n), cx, {rs.begin(), rs.end()});
    } catch (const crn::NetworkError&) {
      // a species absent from every complex; draw again
    }
  }
}

/// Weakly reversible network of deficiency zero, n <= max_species.  Each
/// linkage class is a directed cycle with optional chords.
inline crn::ReactionNetwork random_wr_deficiency_zero(Rng& rng, std::size_t max_species) {
  while (true) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_species)));
    const auto ell = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    std::vector<std::size_t> sizes;
    std::size_t m = 0;
    for (std::size_t c = 0; c < ell; ++c) {
      sizes.push_back(static_cast<std::size_t>(uniform_int(rng, 2, 3)));
      m += sizes.back();
    }
    if (m - ell > n || m > static_cast<std::size_t>(std::pow(3.0, static_cast<double>(n)))) continue;
    auto cx = distinct_complexes(rng, n, m, 2);
    std::set<crn::Reaction> rs;
    std::size_t base = 0;
    for (auto sz : sizes) {
      for (std::size_t i = 0; i < sz; ++i) rs.insert({base + i, base + (i + 1) % sz});
      for (std::size_t i = 0; i < sz; ++i)
        if (uniform_int(rng, 0, 2) == 0) rs.insert({base + (i + 1) % sz, base + i});
      base += sz;
    }
    try {
      crn::ReactionNetwork net(species_names(n), cx, {rs.begin(), rs.end()});
      if (crn::deficiency(net).delta == 0) return net;
    } catch (const crn::NetworkError&) {
    }
  }
}

inline std::vector<double> random_kappa(Rng& rng, std::size_t r) {
  std::vector<double> k(r);
  for (auto& v : k) v = uniform_real(rng, 0.5, 2.0);
  return k;
}

inline std::string spaces(Rng& rng) { return std::string(static_cast<std::size_t>(uniform_int(rng, 0, 2)), ' '); }

/// Writes a complex with randomized spelling: optional "1" coefficients,
/// split repeated terms ("A + A" for 2A) and varied spacing.
inline std::string spell_complex(Rng& rng, const crn::Complex& c, const std::vector<std::string>& names) {
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t left = c[i];
    while (left > 0) {
      const std::int64_t part = left > 1 && uniform_int(rng, 0, 3) == 0 ? 1 : left;
      std::string t;
      if (part != 1 || uniform_int(rng, 0, 4) == 0) t += std::to_string(part) + spaces(rng);
      terms.push_back(t + names[i]);
      left -= part;
    }
  }
  if (terms.empty()) return "0";
  std::shuffle(terms.begin(), terms.end(), rng);
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) out += (t ? spaces(rng) + "+" + spaces(rng) : "") + terms[t];
  return out;
}

inline std::string random_rate(Rng& rng) {
  std::ostringstream os;
  os.precision(17);
  switch (uniform_int(rng, 0, 2)) {
    case 0: os << uniform_int(rng, 1, 9); break;
    case 1: os << uniform_real(rng, 0.001, 100.0); break;
    default: os << uniform_real(rng, 1, 9) << "e" << uniform_int(rng, -3, 3); break;
  }
  return os.str();
}

/// Random DSL text: comments, blank lines, theta headers, "->" and "<->".
inline std::string random_dsl(Rng& rng) {
  const auto net = random_network(rng, 4, 6);
  std::vector<std::string> names;
  for (const auto& s : net.species()) names.push_back(s.name);
  std::ostringstream os;
  if (uniform_int(rng, 0, 1)) os << "# generated\n";
  std::set<std::size_t> done;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    if (done.count(k)) continue;
    done.insert(k);
    const auto& r = net.reaction(k);
    auto rev = net.find_reaction(r.target, r.source);
    os << spaces(rng) << spell_complex(rng, net.complex(r.source), names) << spaces(rng);
    if (rev && !done.count(*rev) && uniform_int(rng, 0, 1)) {
      done.insert(*rev);
      os << "<->" << spaces(rng) << spell_complex(rng, net.complex(r.target), names) << " ;" << spaces(rng)
         << random_rate(rng) << "," << spaces(rng) << random_rate(rng);
    } else {
      os << "->" << spaces(rng) << spell_complex(rng, net.complex(r.target), names) << " ; " << random_rate(rng);
    }
    if (uniform_int(rng, 0, 4) == 0) os << "  # note";
    os << "\n";
    if (uniform_int(rng, 0, 5) == 0) os << "\n";
  }
  for (const auto& name : names) {
    switch (uniform_int(rng, 0, 5)) {
      case 0: os << "theta " << name << " = linear\n"; break;
      case 1: os << "theta " << name << " = capped(" << uniform_int(rng, 1, 5) << ")\n"; break;
      case 2:
        os << "theta " << name << " = table(" << uniform_int(rng, 1, 3) << ", " << uniform_int(rng, 4, 6) << ")"
           << (uniform_int(rng, 0, 1) ? " growing" : " saturating") << "\n";
        break;
      default: break;
    }
  }
  return os.str();
}

}  // namespace gen

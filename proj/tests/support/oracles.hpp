#pragma once

// Independent reference computations for the test suite.  Nothing here
// calls into the library's algorithms beyond the network container.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <map>
#include <vector>

#include "crn/network.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Rat = boost::rational<Big>;

/// Rank by Gaussian elimination over the rationals.
inline std::size_t rational_rank(const std::vector<std::vector<std::int64_t>>& rows_in) {
  if (rows_in.empty()) return 0;
  std::vector<std::vector<Rat>> a;
  for (const auto& r : rows_in) {
    std::vector<Rat> row;
    for (auto v : r) row.emplace_back(Big(v));
    a.push_back(std::move(row));
  }
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == Rat(0)) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == Rat(0)) continue;
      const Rat f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Weakly connected components by depth-first search.
inline std::size_t count_linkage_classes(const crn::ReactionNetwork& net) {
  const std::size_t m = net.num_complexes();
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    adj[net.reaction(k).source].push_back(net.reaction(k).target);
    adj[net.reaction(k).target].push_back(net.reaction(k).source);
  }
  std::vector<bool> seen(m, false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return count;
}

inline std::size_t stoichiometric_rank(const crn::ReactionNetwork& net) {
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) rows.push_back(net.reaction_vector(k));
  return rational_rank(rows);
}

inline std::int64_t deficiency(const crn::ReactionNetwork& net) {
  return static_cast<std::int64_t>(net.num_complexes()) - static_cast<std::int64_t>(count_linkage_classes(net)) -
         static_cast<std::int64_t>(stoichiometric_rank(net));
}

/// Reachability closure: every reaction's target reaches its source.
inline bool weakly_reversible(const crn::ReactionNetwork& net) {
  const std::size_t m = net.num_complexes();
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (std::size_t j = 0; j < m; ++j) reach[j][j] = true;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) reach[net.reaction(k).source][net.reaction(k).target] = true;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (std::size_t k = 0; k < net.num_reactions(); ++k)
    if (!reach[net.reaction(k).target][net.reaction(k).source]) return false;
  return true;
}

/// Every map f: C -> [0, box]^n with f(y') - f(y) = y' - y on each reaction,
/// found by exhaustive search over images.  Returned as image tuples.
inline std::vector<std::vector<crn::LatticeState>> brute_force_copies(const crn::ReactionNetwork& net,
                                                                      std::int64_t box) {
  const std::size_t n = net.num_species(), m = net.num_complexes();
  std::vector<crn::LatticeState> points;
  {
    crn::LatticeState x(n, 0);
    while (true) {
      points.push_back(x);
      std::size_t i = n;
      while (i > 0 && x[i - 1] == box) x[--i] = 0;
      if (i == 0) break;
      ++x[i - 1];
    }
  }
  std::vector<std::vector<crn::LatticeState>> out;
  std::vector<std::size_t> pick(m, 0);
  while (true) {
    bool ok = true;
    for (std::size_t k = 0; k < net.num_reactions() && ok; ++k) {
      const auto& a = points[pick[net.reaction(k).source]];
      const auto& b = points[pick[net.reaction(k).target]];
      if (crn::sub(b, a) != net.reaction_vector(k)) ok = false;
    }
    if (ok) {
      std::vector<crn::LatticeState> img;
      for (auto p : pick) img.push_back(points[p]);
      out.push_back(std::move(img));
    }
    std::size_t j = m;
    while (j > 0 && pick[j - 1] + 1 == points.size()) pick[--j] = 0;
    if (j == 0) break;
    ++pick[j - 1];
  }
  return out;
}

inline double poisson_pmf(double lambda, std::int64_t k) {
  return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) - std::lgamma(static_cast<double>(k) + 1));
}

/// Stationary law of the birth / trimolecular-loss chain on {2..N}:
/// pi(m+1) / pi(m) = k1 / (k2 (m+1) m (m-1)), normalized.
inline std::map<std::int64_t, double> cubic_death_law(double k1, double k2, std::int64_t N) {
  std::map<std::int64_t, double> pi;
  double w = 1.0, total = 0;
  for (std::int64_t m = 2; m <= N; ++m) {
    pi[m] = w;
    total += w;
    w *= k1 / (k2 * static_cast<double>((m + 1) * m * (m - 1)));
  }
  for (auto& [m, v] : pi) v /= total;
  return pi;
}

inline double cubic_death_mean(double k1, double k2, std::int64_t N) {
  double s = 0;
  for (const auto& [m, v] : cubic_death_law(k1, k2, N)) s += static_cast<double>(m) * v;
  return s;
}

}  // namespace oracle

#pragma once

// Graph invariants of a reaction network: linkage classes, (weak)
// reversibility, the stoichiometric subspace and the deficiency, the latter
// computed twice (combinatorially and as a kernel dimension).

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "crn/kinetics.hpp"
#include "crn/linalg.hpp"
#include "crn/network.hpp"

namespace crn {

struct LinkageDecomposition {
  std::vector<std::size_t> class_of;               ///< complex -> class
  std::vector<std::vector<std::size_t>> classes;   ///< increasing complex indices
  std::size_t num_classes() const { return classes.size(); }
};

struct StoichiometricData {
  std::vector<IntVector> reaction_vectors;
  std::size_t dim = 0;
  std::vector<std::size_t> basis_reactions;        ///< reactions whose vectors form a basis
  std::vector<IntVector> basis;
};

struct ComplexSpaceMap {
  std::vector<IntVector> dvectors;   ///< e_{y'} - e_y per reaction, length m
  std::size_t d_dim = 0;             ///< rank of the d-vectors
  linalg::IntMatrix phi;             ///< n x m, column j is complex j
};

struct DeficiencyReport {
  std::size_t m = 0;
  std::size_t ell = 0;
  std::size_t s = 0;
  std::int64_t delta = 0;
  std::int64_t delta_kernel = 0;
};

class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Weakly connected components of (C, R), numbered by smallest member.
inline LinkageDecomposition linkage_classes(const ReactionNetwork& net) {
  const std::size_t m = net.num_complexes();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& r : net.reactions()) {
    auto a = find(r.source), b = find(r.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  LinkageDecomposition out;
  out.class_of.assign(m, 0);
  std::vector<std::ptrdiff_t> root_class(m, -1);
  for (std::size_t j = 0; j < m; ++j) {
    auto root = find(j);
    if (root_class[root] < 0) {
      root_class[root] = static_cast<std::ptrdiff_t>(out.classes.size());
      out.classes.emplace_back();
    }
    out.class_of[j] = static_cast<std::size_t>(root_class[root]);
    out.classes[out.class_of[j]].push_back(j);
  }
  return out;
}

/// Tarjan's algorithm; returns component id per vertex.
inline std::vector<std::size_t> strongly_connected_components(std::size_t num_vertices,
                                                              const std::vector<std::vector<std::size_t>>& adj,
                                                              std::size_t* num_components = nullptr) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(num_vertices, kUnvisited), low(num_vertices, 0), comp(num_vertices, kUnvisited);
  std::vector<bool> on_stack(num_vertices, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, ncomp = 0;

  // Iterative to keep deep chains (long birth-death truncations) off the call stack.
  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < num_vertices; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& fr = call.back();
      const auto v = fr.v;
      if (fr.next_edge < adj[v].size()) {
        const auto w = adj[v][fr.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          auto w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  if (num_components) *num_components = ncomp;
  return comp;
}

/// Every reaction lies on a directed cycle, i.e. each linkage class is one
/// strongly connected component.
inline bool is_weakly_reversible(const ReactionNetwork& net) {
  const std::size_t m = net.num_complexes();
  std::vector<std::vector<std::size_t>> adj(m);
  for (const auto& r : net.reactions()) adj[r.source].push_back(r.target);
  const auto scc = strongly_connected_components(m, adj);
  for (const auto& r : net.reactions())
    if (scc[r.source] != scc[r.target]) return false;
  return true;
}

inline bool is_reversible(const ReactionNetwork& net) {
  for (const auto& r : net.reactions())
    if (!net.find_reaction(r.target, r.source)) return false;
  return true;
}

inline StoichiometricData stoichiometric_subspace(const ReactionNetwork& net) {
  StoichiometricData out;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) out.reaction_vectors.push_back(net.reaction_vector(k));
  const auto mat = linalg::IntMatrix::from_columns(net.num_species(), out.reaction_vectors);
  const auto ech = linalg::bareiss_echelon(mat);
  out.dim = ech.rank;
  out.basis_reactions = ech.pivot_columns;
  for (auto k : ech.pivot_columns) out.basis.push_back(out.reaction_vectors[k]);
  return out;
}

/// d-vectors in R^m and the map phi: e_y -> y.
inline ComplexSpaceMap complex_space_map(const ReactionNetwork& net) {
  const std::size_t m = net.num_complexes();
  ComplexSpaceMap out;
  for (const auto& r : net.reactions()) {
    IntVector d(m, 0);
    d[r.target] += 1;
    d[r.source] -= 1;
    out.dvectors.push_back(std::move(d));
  }
  out.d_dim = linalg::rank(linalg::IntMatrix::from_columns(m, out.dvectors));
  out.phi = linalg::IntMatrix(net.num_species(), m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < net.num_species(); ++i) out.phi(i, j) = net.complex(j)[i];
  return out;
}

/// dim ker(phi restricted to D), computed from a basis of D and the rank of
/// its image under phi.
inline std::size_t phi_kernel_dimension(const ComplexSpaceMap& map) {
  const std::size_t m = map.phi.cols;
  const auto dmat = linalg::IntMatrix::from_columns(m, map.dvectors);
  const auto ech = linalg::bareiss_echelon(dmat);
  std::vector<IntVector> basis;
  for (auto j : ech.pivot_columns) basis.push_back(map.dvectors[j]);
  const auto bmat = linalg::IntMatrix::from_columns(m, basis);
  const auto image = map.phi * bmat;
  return basis.size() - linalg::rank(image);
}

inline DeficiencyReport deficiency(const ReactionNetwork& net) {
  DeficiencyReport rep;
  rep.m = net.num_complexes();
  rep.ell = linkage_classes(net).num_classes();
  rep.s = stoichiometric_subspace(net).dim;
  rep.delta = static_cast<std::int64_t>(rep.m) - static_cast<std::int64_t>(rep.ell) - static_cast<std::int64_t>(rep.s);

  const auto map = complex_space_map(net);
  if (map.d_dim != rep.m - rep.ell)
    throw InconsistencyError("rank of d-vectors (" + std::to_string(map.d_dim) + ") differs from m - ell");
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    linalg::IntMatrix d = linalg::IntMatrix::from_columns(rep.m, {map.dvectors[k]});
    if ((map.phi * d).column(0) != net.reaction_vector(k))
      throw InconsistencyError("phi(d) differs from the reaction vector of " + net.reaction_string(k));
  }
  rep.delta_kernel = static_cast<std::int64_t>(phi_kernel_dimension(map));
  if (rep.delta != rep.delta_kernel || rep.delta < 0)
    throw InconsistencyError("deficiency routes disagree: " + std::to_string(rep.delta) + " vs " +
                             std::to_string(rep.delta_kernel));
  return rep;
}

/// Identifier-safe rendering of a complex: "A_2B", or "0" for the zero complex.
inline std::string complex_identifier(const ReactionNetwork& net, std::size_t j) {
  const auto& c = net.complex(j);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '_';
    if (c[i] != 1) out += std::to_string(c[i]);
    out += net.species()[i].name;
  }
  return out.empty() ? "0" : out;
}

/// The network with one extra species A_y per complex, complexes y + A_y and
/// reactions y + A_y -> y' + A_{y'}.  It always has deficiency zero.
inline ReactionNetwork build_auxiliary_network(const ReactionNetwork& net) {
  const std::size_t n = net.num_species(), m = net.num_complexes();
  std::vector<std::string> names;
  std::set<std::string> taken;
  for (const auto& s : net.species()) {
    names.push_back(s.name);
    taken.insert(s.name);
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::string base = "AUX_" + complex_identifier(net, j);
    std::string name = base;
    for (int suffix = 2; taken.count(name); ++suffix) name = base + "_" + std::to_string(suffix);
    taken.insert(name);
    names.push_back(name);
  }
  std::vector<Complex> complexes;
  for (std::size_t j = 0; j < m; ++j) {
    Complex c{IntVector(n + m, 0)};
    std::copy(net.complex(j).coeffs.begin(), net.complex(j).coeffs.end(), c.coeffs.begin());
    c.coeffs[n + j] = 1;
    complexes.push_back(std::move(c));
  }
  return ReactionNetwork(std::move(names), std::move(complexes), net.reactions());
}

/// Rate constants carried over to the auxiliary network (reaction order is preserved).
inline KineticsSpec auxiliary_kinetics(const ReactionNetwork& net, const KineticsSpec& spec) {
  KineticsSpec out = spec;
  out.theta.resize(net.num_species() + net.num_complexes(), Theta::linear());
  return out;
}

}  // namespace crn

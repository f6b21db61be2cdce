// Walks through copies of the cubic death network 0 -> A, 3A -> 2A and the
// Poisson pair, printing which copies are node balanced for their stationary laws.

#include <cstdio>

#include "crn/crn.hpp"

using namespace crn;

namespace {

void show_copy(const ReactionNetwork& net, const Copy& f, const NodeBalanceResult& nb) {
  std::printf("  copy");
  for (std::size_t j = 0; j < net.num_complexes(); ++j)
    std::printf(" %s->%s", net.complex_string(j).c_str(), to_string(f(j)).c_str());
  std::printf("  %s (max rel residual %.2e)\n", nb.balanced ? "node balanced" : "not balanced", nb.max_relative);
}

}  // namespace

int main() {
  auto cd = parse_network("0 -> A ; 1\n3A -> 2A ; 1\n");
  const SpecRates cd_rates(cd.network, cd.kinetics);
  const auto link = linkage_classes(cd.network);

  const auto chain = build_box_truncation(cd.network, cd_rates, 60);
  const auto dec = decompose(chain, ExitPolicy::Reflect);
  const auto law = solve_stationary(chain, dec, dec.closed_classes().at(0));
  auto table = as_state_map(chain, law);
  table[{0}] = 0.0;
  table[{1}] = 0.0;
  const auto pi = LatticeMeasure::tabulated(table);

  std::printf("cubic death, stationary law on {2..60} (%s, residual %.1e)\n", law.method.c_str(), law.residual);
  std::printf("deficiency %lld\n", static_cast<long long>(deficiency(cd.network).delta));
  for (std::int64_t v = 0; v <= 4; ++v) {
    const Copy f(cd.network, link, {IntVector{2 + v}, IntVector{v}});
    show_copy(cd.network, f, is_node_balanced(cd.network, cd_rates, pi, f, Tolerance{}));
  }
  const auto g = translation_copy(cd.network, link, 0, {4});
  show_copy(cd.network, g, is_node_balanced(cd.network, cd_rates, pi, g, Tolerance{}));

  auto pp = parse_network("0 -> A + B ; 1\nA + B -> A ; 1\nA -> 0 ; 1\n");
  const SpecRates pp_rates(pp.network, pp.kinetics);
  const auto nu = product_form_measure({1.0, 1.0});
  const auto rep = verify_any_kinetics(pp.network, pp_rates, nu, 6, Tolerance{});
  std::printf("\npoisson pair, nu = 1/(a! b!) on box 6\n");
  std::printf("  injective copies %zu, all node balanced: %s\n", rep.injective_copies,
              rep.every_injective_copy_balanced ? "yes" : "no");
  std::printf("  complex balanced on %zu pairs: %s\n", rep.pairs_checked, rep.complex_balanced ? "yes" : "no");
  return rep.agree() ? 0 : 1;
}

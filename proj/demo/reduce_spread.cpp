// Start from the solid spread of PG(7,2) and replace a few solids by
// sub-partitions, checking each intermediate partition.

#include <iostream>

#include "vsp/vsp.hpp"

int main() {
  const auto F = vsp::make_field(2);
  auto P = vsp::desarguesian_spread(8, 4, F);
  auto T = P.realized_type();
  std::cout << "start: " << vsp::format_type(T) << "\n";

  // solids sit at the front of the element list, so index 0 is always a solid
  // until all of them are gone
  for (int rule : {5, 6, 4, 6, 5}) {
    P = vsp::expand_element(P, 0, rule);
    T = vsp::apply_reduction(T, rule);
    auto rep = vsp::verify_partition(P);
    std::cout << "rule " << rule << ": " << vsp::format_type(rep.type)
              << (rep.valid ? "  valid" : "  INVALID")
              << (rep.type == T ? "" : "  (type differs from the predicted one)") << "\n";
    if (!rep.valid || !(rep.type == T)) return 1;
  }

  auto tails = vsp::check_tails(T, vsp::load_known_table());
  std::cout << "supertail filters " << (tails.accepted ? "accept" : "reject") << " the final type\n";
  return tails.accepted ? 0 : 1;
}

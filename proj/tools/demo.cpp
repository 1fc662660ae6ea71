// Walkthrough for the partition (1,2): generators, a Verma slice, the
// classifier and a central character.

#include "wgb/hwt.hpp"
#include "wgb/tableau.hpp"
#include "wgb/walg.hpp"

#include <iostream>

int main() {
  using namespace wgb;
  Pyramid P = build_pyramid({1, 2});
  GeneratorSet G = build_generator_set(P);
  for (std::size_t k = 0; k < G.size(); ++k)
    std::cout << G.at(k).name << ": " << G.at(k).value.sorted_terms().size() << " terms\n";

  Tableau A = parse_tableau(P, "3;1,2");
  VermaSlice V = build_verma(G, A.entries, 8);
  auto pv = finite_dim_probe(V);
  std::cout << "tableau " << format_tableau(A) << ": " << to_string(classify(A)) << ", slice "
            << (pv.closed ? "closed, dimension " + std::to_string(pv.total_dim) : std::string("open")) << '\n';

  for (const auto& cv : central_character(G, A.entries, 2))
    std::cout << "G_" << cv.k << " acts by " << to_string(cv.via_psi) << '\n';
}

// Twisting 50a2 by 5 and watching its torsion grow over Q(sqrt 5).

#include <twistlab/quadtorsion.hpp>
#include <twistlab/theorems.hpp>

#include <iostream>

int main() {
  using namespace twistlab;
  auto E = parse_curve("[1,0,1,-76,298]");
  std::cout << "E            " << E.to_string() << "\n";
  std::cout << "conductor    " << conductor(E) << "\n";
  std::cout << "E(Q)_tors    " << torsion_subgroup(E).to_string() << "\n";

  auto R = growth_report(E, Integer(5));
  std::cout << "E^5 minimal  " << R.twist.to_string() << "\n";
  std::cout << "E^5(Q)_tors  " << R.twist_torsion.to_string() << "\n";
  std::cout << "odd E(L)     " << R.odd_L_torsion.to_string() << "\n";

  for (const auto& v : run_all(E, Integer(5)))
    std::cout << to_string(v.theorem_id) << ": hypotheses " << v.hypotheses_hold << "\n";
}

// A system whose conditions hold at a single irreducible node while the
// Kronecker lift is reducible.

#include <iostream>

#include "cswitch/cswitch.hpp"

int main() {
    using namespace cswitch;
    const auto sys = generators::example_weakness();
    const auto r = boundedness::boundedness_structure(sys);
    std::cout << report::to_json(r).dump(2) << "\n";
    const auto lift = lift::lift_irreducible(sys);
    std::cout << "lift: " << to_string(lift.status) << " via " << to_string(lift.method)
              << ", invariant subspace dim " << lift.witness_dim() << "\n";
}

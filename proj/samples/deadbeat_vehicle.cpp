// Dead-beat check for the trailer left-inverter error system, constrained
// versus arbitrary switching.

#include <iostream>

#include "cswitch/cswitch.hpp"

int main() {
    using namespace cswitch;
    const auto sys = generators::gen_vehicle();
    const auto v = deadbeat::gurvits_constrained(sys);
    std::cout << "constrained dead-beat: " << std::boolalpha << v.is_deadbeat << " (horizon "
              << v.minimal_horizon.value_or(0) << ", bound " << v.horizon_bound << ")\n";
    std::cout << "arbitrary switching dead-beat: " << deadbeat::gurvits_arbitrary(sys.matrices()) << "\n";
    std::cout << "brute force agrees: " << (deadbeat::deadbeat_bruteforce(sys) == v.is_deadbeat) << "\n";
}

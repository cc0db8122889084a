// Escape and connectivity lengths on the Cerny family against 1 + n(m-1)
// and 1 + n(m-2).

#include <iostream>

#include "cswitch/cswitch.hpp"

int main() {
    using namespace cswitch;
    std::cout << "n m escape bound connect bound\n";
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t m = 3; m <= 5; ++m) {
            const auto sys = generators::gen_cerny({n, m, false});
            linalg::Subspace<Rational> x(n);
            Vector<Rational> e1(n, Rational(0));
            e1[0] = 1;
            x.add(e1);
            const auto esc = boundedness::escape_cycle_length(sys, 0, x);
            const auto con = boundedness::shortest_nonzero_path_length(sys, 0, m - 1);
            std::cout << n << " " << m << " " << esc.value_or(0) << " " << boundedness::escape_bound(n, m) << " "
                      << con.value_or(0) << " " << boundedness::connect_bound(n, m) << "\n";
        }
}

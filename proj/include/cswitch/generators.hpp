#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cswitch/system.hpp"

namespace cswitch::generators {

struct CernyParams {
    std::size_t n = 2;  // matrix dimension
    std::size_t m = 3;  // node count
    /// Also add the edge 0 -> 1 labeled 1 that completes the letter-1
    /// transformation of the textbook automaton (it merges node 0 into 1).
    bool reset_edge = false;
};

/// Cerny-family system: A_1 is the upper shift (A_1(i,i+1) = 1), A_2 has a
/// single 1 at (n,1). Nodes 0..m-1; label 2 advances i -> i+1 mod m, label
/// 1 is a self-loop on every node except node 0.
inline RationalSystem gen_cerny(const CernyParams& p) {
    if (p.n < 1) throw Error(ErrorKind::invalid_argument, "cerny: n must be at least 1");
    if (p.m < 2) throw Error(ErrorKind::invalid_argument, "cerny: m must be at least 2");
    Matrix<Rational> a1(p.n, p.n), a2(p.n, p.n);
    for (std::size_t i = 0; i + 1 < p.n; ++i) a1(i, i + 1) = 1;
    a2(p.n - 1, 0) = 1;
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < p.m; ++v) {
        edges.push_back({v, (v + 1) % p.m, Mode{2}});
        if (v != 0) edges.push_back({v, v, Mode{1}});
    }
    if (p.reset_edge) edges.push_back({0, 1, Mode{1}});
    return RationalSystem(LabeledGraph(p.m, std::move(edges)), MatrixSet<Rational>(p.n, {a1, a2}),
                          "cerny-n" + std::to_string(p.n) + "-m" + std::to_string(p.m));
}

/// Q(x, y) = [[1, x], [-1/y, -x/y]] = u_y v_x^T with v_x = (1, x), u_y = (1, -1/y).
inline Matrix<Rational> vehicle_q(const Rational& x, const Rational& y) {
    return Matrix<Rational>{{Rational(1), x}, {Rational(-1) / y, -x / y}};
}

/// Error system of the two-trailer left inverter. Mode and node (i, j)
/// (i, j in {1, 2}) have index 2(i-1) + (j-1); the edge (i, j) -> (j, k)
/// carries mode (j, k), whose matrix is Q(a_j, a_k).
inline RationalSystem gen_vehicle(const Rational& a1 = Rational(1, 2), const Rational& a2 = Rational(1, 3)) {
    if (a1 == 0 || a2 == 0) throw Error(ErrorKind::zero_parameter, "vehicle parameters must be nonzero");
    const Rational a[2] = {a1, a2};
    std::vector<Matrix<Rational>> q;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            q.push_back(vehicle_q(a[i], a[j]));
            names.push_back("T" + std::to_string(i + 1) + "T" + std::to_string(j + 1));
        }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) edges.push_back({2 * i + j, 2 * j + k, Mode{2 * j + k + 1}});
    return RationalSystem(LabeledGraph(4, std::move(edges)), MatrixSet<Rational>(2, std::move(q)), "vehicle", std::move(names));
}

/// Two nodes; node 0 has a self-loop labeled 1 and the 2-labeled edges go
/// 0 -> 1 -> 0, so every 2 is immediately followed by another 2 and the
/// pattern 1 2 1 cannot occur. A_1 is a unipotent Jordan block, A_2 the swap.
inline RationalSystem example1() {
    return RationalSystem(LabeledGraph(2, {{0, 0, Mode{1}}, {0, 1, Mode{2}}, {1, 0, Mode{2}}}),
                          MatrixSet<Rational>(2, {Matrix<Rational>{{1, 1}, {0, 1}}, Matrix<Rational>{{0, 1}, {1, 0}}}), "example1");
}

/// Scalar cycle u -> w (A_1 = 1), w -> u (A_2 = 0).
inline RationalSystem example2() {
    return RationalSystem(LabeledGraph(2, {{0, 1, Mode{1}}, {1, 0, Mode{2}}}),
                          MatrixSet<Rational>(1, {Matrix<Rational>{{1}}, Matrix<Rational>{{0}}}), "example2", {"u", "w"});
}

/// Nodes left (0), middle (1), right (2); mode 2 moves right, mode 1 returns
/// to the left node, so mode 2 occurs at most twice in a row. A_1 is the
/// swap, A_2 = diag(0, 1).
inline RationalSystem example_weakness() {
    return RationalSystem(
        LabeledGraph(3, {{0, 0, Mode{1}}, {0, 1, Mode{2}}, {1, 0, Mode{1}}, {1, 2, Mode{2}}, {2, 0, Mode{1}}}),
        MatrixSet<Rational>(2, {Matrix<Rational>{{0, 1}, {1, 0}}, Matrix<Rational>{{0, 0}, {0, 1}}}), "ex-weakness",
        {"left", "middle", "right"});
}

inline const std::vector<std::string_view>& example_ids() {
    static const std::vector<std::string_view> ids{"ex1", "ex2", "ex-weakness"};
    return ids;
}

/// One of example_ids(); UnknownExampleId otherwise.
inline RationalSystem gen_example(std::string_view id) {
    if (id == "ex1") return example1();
    if (id == "ex2") return example2();
    if (id == "ex-weakness") return example_weakness();
    throw Error(ErrorKind::unknown_example, "'" + std::string(id) + "' (known: ex1, ex2, ex-weakness)");
}

}  // namespace cswitch::generators

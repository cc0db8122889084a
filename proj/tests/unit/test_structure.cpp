// Irreducibility oracle, nodal conditions, CJSR bounds, reports.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cswitch/cswitch.hpp"
#include "support/random_systems.hpp"

using namespace cswitch;
namespace ct = cswitch::testing;

namespace {

Matrix<Rational> q(std::initializer_list<std::initializer_list<Rational>> rows) { return Matrix<Rational>(rows); }

Matrix<double> rotation(double t) { return Matrix<double>{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}}; }

template <Field T>
bool verifies(const IrreducibilityVerdict<T>& v, const std::vector<Matrix<T>>& set) {
    return witness_verifies(v, std::span<const Matrix<T>>(set));
}

RationalSystem single_node(std::vector<Matrix<Rational>> ms) {
    std::vector<Edge> loops;
    for (std::size_t k = 0; k < ms.size(); ++k) loops.push_back({0, 0, Mode{k + 1}});
    const std::size_t n = ms.front().rows();
    return RationalSystem(LabeledGraph(1, std::move(loops)), MatrixSet<Rational>(n, std::move(ms)));
}

RationalSystem relabel(const RationalSystem& sys, const std::vector<NodeId>& perm) {
    std::vector<Edge> es;
    for (const auto& e : sys.graph().edges()) es.push_back({perm[e.source], perm[e.destination], e.mode});
    return RationalSystem(LabeledGraph(sys.node_count(), std::move(es)), sys.matrix_set());
}

}  // namespace

TEST(Irreducibility, ExampleOneSetIsIrreducible) {
    const auto set = generators::example1().matrices();
    const auto v = is_irreducible_set(set);
    EXPECT_EQ(v.status, IrreducibilityStatus::irreducible);
    EXPECT_EQ(v.method, IrreducibilityMethod::algebra_full);
}

TEST(Irreducibility, RotationIsIrreducible) {
    const std::vector<Matrix<double>> set{rotation(1.0)};
    const auto v = is_irreducible_set(set);
    EXPECT_EQ(v.status, IrreducibilityStatus::irreducible);
    EXPECT_NE(v.method, IrreducibilityMethod::algebra_full);
}

TEST(Irreducibility, JordanBlockAloneIsReducible) {
    const std::vector<Matrix<Rational>> set{q({{1, 1}, {0, 1}})};
    const auto v = is_irreducible_set(set);
    ASSERT_EQ(v.status, IrreducibilityStatus::reducible);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(*v.witness, linalg::Subspace<Rational>::span(2, {{1, 0}}));
    EXPECT_TRUE(verifies(v, set));
}

TEST(Irreducibility, DimensionOneIsIrreducible) {
    EXPECT_TRUE(is_irreducible_set(std::vector{q({{0}})}).irreducible());
}

TEST(Irreducibility, IrrationalCommonEigenlineIsFoundNumerically) {
    // both matrices are polynomials in [[0,1],[2,0]], eigenlines (1, +-sqrt 2)
    const std::vector<Matrix<Rational>> set{q({{0, 1}, {2, 0}}), q({{1, 1}, {2, 1}})};
    const auto v = is_irreducible_set(set);
    ASSERT_EQ(v.status, IrreducibilityStatus::reducible);
    EXPECT_FALSE(v.witness);
    ASSERT_TRUE(v.numeric_witness);
    EXPECT_TRUE(verifies(v, set));
    EXPECT_TRUE(ct::oracle_reducible_2x2(set));
}

TEST(Irreducibility, QuaternionCommutantIsHonestlyUnknownOrIrreducible) {
    // left multiplication by i and j on the quaternions: irreducible over the
    // reals, algebra of dimension 4 < 16
    const std::vector<Matrix<Rational>> set{q({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}),
                                            q({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}})};
    const auto v = is_irreducible_set(set);
    EXPECT_NE(v.status, IrreducibilityStatus::reducible);
    EXPECT_EQ(v.algebra_dim, 4u);
    if (v.status == IrreducibilityStatus::unknown_numerical) {
        ASSERT_TRUE(v.achieved_minimum);
        EXPECT_GT(*v.achieved_minimum, 1e-8);
    }
}

TEST(Irreducibility, AgreesWithLineSearchOracleForTwoByTwo) {
    std::mt19937_64 rng(101);
    int reducible = 0, irreducible = 0;
    for (int i = 0; i < 400; ++i) {
        std::vector<Matrix<Rational>> set;
        for (std::size_t k = 0, m = 1 + rng() % 3; k < m; ++k) set.push_back(ct::random_integer_matrix(rng, 2, 3));
        const auto v = is_irreducible_set(set);
        ASSERT_NE(v.status, IrreducibilityStatus::unknown_numerical);
        EXPECT_EQ(v.reducible(), ct::oracle_reducible_2x2(set)) << "case " << i;
        EXPECT_TRUE(verifies(v, set));
        (v.reducible() ? reducible : irreducible)++;
    }
    EXPECT_GT(reducible, 20);
    EXPECT_GT(irreducible, 20);
}

TEST(Irreducibility, LayersNeverContradict) {
    std::mt19937_64 rng(102);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + rng() % 2;
        std::vector<Matrix<Rational>> set;
        for (std::size_t k = 0, m = 1 + rng() % 3; k < m; ++k) set.push_back(ct::random_matrix(rng, n, 3, 0.2));
        const std::span<const Matrix<Rational>> s(set);
        const auto alg = irreducibility::algebra(s, n);
        const auto l2 = irreducibility::seed_closure_layer(s, alg);
        if (alg.dim() == n * n && l2) {
            EXPECT_FALSE(l2->reducible()) << "case " << i;
        }
        if (l2 && l2->reducible()) {
            EXPECT_TRUE(verifies(*l2, set));
        }
        const auto l3 = irreducibility::sphere_layer(s, alg);
        if (alg.dim() == n * n) {
            EXPECT_FALSE(l3.reducible()) << "case " << i;
        }
        if (l3.reducible()) {
            EXPECT_TRUE(verifies(l3, set));
        }
    }
}

TEST(Irreducibility, FloatInputGetsATolerance) {
    const std::vector<Matrix<double>> set{Matrix<double>{{1.0, 1.0}, {0.0, 1.0}}};
    const auto v = is_irreducible_set(set);
    EXPECT_TRUE(v.reducible());
    EXPECT_TRUE(v.tolerance);
}

TEST(NodeIrreducible, WeaknessExample) {
    const auto sys = generators::example_weakness();
    EXPECT_TRUE(boundedness::node_irreducible(sys, 0).irreducible());
    const auto middle = boundedness::node_irreducible(sys, 1);
    ASSERT_TRUE(middle.reducible());
    ASSERT_TRUE(middle.witness);
    EXPECT_EQ(*middle.witness, linalg::Subspace<Rational>::span(2, {{0, 1}}));
    const auto marks = boundedness::mark_irreducible_nodes(sys);
    EXPECT_EQ(marks.irreducible, graph::NodeSet{0});
    EXPECT_TRUE(marks.unknown.empty());
}

TEST(NodeIrreducible, SingleNodeReducesToTheSet) {
    const auto sys = single_node(generators::example1().matrices());
    EXPECT_TRUE(boundedness::node_irreducible(sys, 0).irreducible());
    EXPECT_EQ(boundedness::mark_irreducible_nodes(sys).irreducible, graph::NodeSet{0});
}

TEST(NodeIrreducible, RequiresStrongConnectivity) {
    const RationalSystem chain(LabeledGraph(2, {{0, 1, Mode{1}}}), MatrixSet<Rational>(1, {q({{1}})}));
    try {
        boundedness::node_irreducible(chain, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_strongly_connected);
    }
}

TEST(NodeIrreducible, SpanAgreesWithCycleEnumeration) {
    std::mt19937_64 rng(103);
    ct::RandomSystemSpec spec;
    spec.strongly_connected = true;
    spec.max_n = 2;
    spec.max_nodes = 3;
    spec.max_edges = 6;
    for (int i = 0; i < 60; ++i) {
        const auto sys = ct::random_system(rng, spec);
        for (NodeId v = 0; v < sys.node_count(); ++v)
            EXPECT_EQ(boundedness::node_irreducible(sys, v).status, boundedness::node_irreducible_by_enumeration(sys, v).status);
    }
}

TEST(NodeIrreducible, InvariantUnderRelabeling) {
    std::mt19937_64 rng(104);
    ct::RandomSystemSpec spec;
    spec.strongly_connected = true;
    spec.max_nodes = 3;
    spec.zero_weight = 2;
    for (int i = 0; i < 40; ++i) {
        const auto sys = ct::random_system(rng, spec);
        std::vector<NodeId> perm(sys.node_count());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto moved = relabel(sys, perm);
        for (NodeId v = 0; v < sys.node_count(); ++v)
            EXPECT_EQ(boundedness::node_irreducible(sys, v).status, boundedness::node_irreducible(moved, perm[v]).status);
    }
}

TEST(Connectivity, Examples) {
    const auto w = generators::example_weakness();
    for (NodeId v = 0; v < 3; ++v)
        for (NodeId u = 0; u < 3; ++u) EXPECT_TRUE(boundedness::linearly_connected_pair(w, v, u));
    EXPECT_TRUE(boundedness::is_linearly_connected(w));
    const RationalSystem dead(LabeledGraph(2, {{0, 0, Mode{1}}, {0, 1, Mode{2}}, {1, 0, Mode{1}}}),
                              MatrixSet<Rational>(1, {q({{1}}), q({{0}})}));
    EXPECT_FALSE(boundedness::linearly_connected_pair(dead, 0, 1));
    const auto r = boundedness::linear_connectivity(dead);
    EXPECT_FALSE(r.linearly_connected);
    EXPECT_EQ(r.failing_pair, (std::pair<NodeId, NodeId>{0, 1}));
    EXPECT_FALSE(boundedness::is_linearly_connected(generators::gen_vehicle().as<double>()));
}

TEST(Connectivity, InvertibleMatricesConnectEverything) {
    std::mt19937_64 rng(105);
    ct::RandomSystemSpec spec;
    spec.strongly_connected = true;
    for (int i = 0; i < 30; ++i) {
        auto sys = ct::random_system(rng, spec);
        std::vector<Matrix<Rational>> inv;
        for (std::size_t k = 0; k < sys.matrices().size(); ++k) {
            Matrix<Rational> m = Matrix<Rational>::identity(sys.n());
            for (std::size_t c = 1; c < sys.n(); ++c) m(0, c) = static_cast<int>(k + c);
            inv.push_back(m);
        }
        const RationalSystem s2(sys.graph(), MatrixSet<Rational>(sys.n(), inv));
        EXPECT_TRUE(boundedness::is_linearly_connected(s2));
    }
}

TEST(Escape, CernyLengths) {
    for (std::size_t n : {2u, 3u})
        for (std::size_t m : {3u, 4u, 5u}) {
            const auto sys = generators::gen_cerny({n, m});
            const auto x = linalg::Subspace<Rational>::span(n, {linalg::Subspace<Rational>::unit(n, 0)});
            EXPECT_EQ(boundedness::escape_cycle_length(sys, 0, x), 1 + n * (m - 1));
        }
    const auto sys = generators::gen_cerny({2, 3});
    EXPECT_EQ(boundedness::escape_cycle_length(sys, 1, linalg::Subspace<Rational>::span(2, {{0, 1}})), 1u);
}

TEST(Escape, CernyExtremalProduct) {
    for (std::size_t n : {2u, 3u})
        for (std::size_t m : {3u, 4u}) {
            const auto sys = generators::gen_cerny({n, m});
            const auto& a1 = sys.matrices()[0];
            const auto& a2 = sys.matrices()[1];
            // A_2 (A_1^{n-1} A_2)^{m-1}: leave node 0 by label 2, then per node n-1 loops and an advance
            std::vector<Edge> es{{0, 1, Mode{2}}};
            for (NodeId v = 1; v < m; ++v) {
                for (std::size_t k = 0; k + 1 < n; ++k) es.push_back({v, v, Mode{1}});
                es.push_back({v, (v + 1) % m, Mode{2}});
            }
            const Path c(es);
            EXPECT_EQ(c.length(), 1 + n * (m - 1));
            Matrix<Rational> block = a2;
            for (std::size_t k = 0; k + 1 < n; ++k) block = a1 * block;
            Matrix<Rational> expected = a2;
            for (std::size_t k = 0; k + 1 < m; ++k) expected = expected * block;
            EXPECT_EQ(path_product(sys, c), expected);
        }
}

TEST(Escape, ErrorsAndBound) {
    const auto sys = generators::gen_cerny({2, 3});
    EXPECT_THROW(boundedness::escape_cycle_length(sys, 0, linalg::Subspace<Rational>::full(2)), Error);
    std::mt19937_64 rng(106);
    ct::RandomSystemSpec spec;
    spec.strongly_connected = true;
    spec.min_n = 2;
    for (int i = 0; i < 60; ++i) {
        const auto s = ct::random_system(rng, spec);
        const auto x = linalg::Subspace<Rational>::span(s.n(), {linalg::Subspace<Rational>::unit(s.n(), 0)});
        for (NodeId v = 0; v < s.node_count(); ++v) {
            const auto k = boundedness::escape_cycle_length(s, v, x);
            // brute force over explicit cycles of bounded length
            std::optional<std::size_t> brute;
            auto cycles = graph::enumerate_paths(s.graph(), v, v, boundedness::escape_bound(s.n(), s.node_count()));
            while (auto c = cycles.next())
                if (!linalg::is_invariant(x, std::vector{path_product(s, *c)})) {
                    brute = c->length();
                    break;
                }
            EXPECT_EQ(k, brute);
        }
    }
}

TEST(Structure, WeaknessExampleHolds) {
    const auto r = boundedness::boundedness_structure(generators::example_weakness());
    EXPECT_TRUE(r.conditions_hold);
    EXPECT_EQ(r.conditions, boundedness::Conditions::hold);
    EXPECT_TRUE(r.linearly_connected);
    EXPECT_TRUE(r.unavoidable);
    EXPECT_EQ(r.irreducible_nodes, graph::NodeSet{0});
    EXPECT_FALSE(r.all_nodes_irreducible);
    ASSERT_TRUE(r.cjsr);
    EXPECT_LE(r.cjsr->lower, r.cjsr->upper);
    EXPECT_GT(r.cjsr->lower, 0.0);
}

TEST(Structure, ExampleOneFails) {
    const auto r = boundedness::boundedness_structure(generators::example1());
    EXPECT_FALSE(r.conditions_hold);
    EXPECT_EQ(r.conditions, boundedness::Conditions::fail);
}

TEST(Structure, SingleIrreducibleNodeHoldsWithAllNodesFlag) {
    const auto r = boundedness::boundedness_structure(single_node(generators::example1().matrices()));
    EXPECT_TRUE(r.conditions_hold);
    EXPECT_TRUE(r.all_nodes_irreducible);
}

TEST(Structure, ConditionsAreTheConjunction) {
    std::mt19937_64 rng(107);
    ct::RandomSystemSpec spec;
    spec.strongly_connected = true;
    spec.max_nodes = 3;
    for (int i = 0; i < 40; ++i) {
        const auto r = boundedness::boundedness_structure(ct::random_system(rng, spec));
        if (r.conditions != boundedness::Conditions::indeterminate) {
            EXPECT_EQ(r.conditions_hold, r.linearly_connected && r.unavoidable);
        }
        if (r.cjsr) {
            EXPECT_LE(r.cjsr->lower, r.cjsr->upper * (1 + 1e-12));
        }
    }
}

TEST(Structure, RefusesDisconnectedGraphs) {
    const RationalSystem chain(LabeledGraph(2, {{0, 1, Mode{1}}}), MatrixSet<Rational>(1, {q({{1}})}));
    EXPECT_THROW(boundedness::boundedness_structure(chain), Error);
}

TEST(Cjsr, Examples) {
    const auto ex1 = boundedness::cjsr_bounds(generators::example1(), 4);
    EXPECT_GE(ex1.lower, 1.0);
    const auto veh = boundedness::cjsr_bounds(generators::gen_vehicle(), 8);
    EXPECT_EQ(veh.upper, 0.0);
    const auto ident = single_node({Matrix<Rational>::identity(2), Matrix<Rational>::identity(2)});
    for (std::size_t d = 1; d <= 5; ++d) {
        const auto b = boundedness::cjsr_bounds(ident, d);
        EXPECT_DOUBLE_EQ(b.lower, 1.0);
        EXPECT_DOUBLE_EQ(b.upper, 1.0);
    }
    EXPECT_THROW(boundedness::cjsr_bounds(generators::example1(), 30, 100), CapExceeded);
}

TEST(Cjsr, LowerNeverExceedsUpperOnRandomSystems) {
    std::mt19937_64 rng(108);
    for (int i = 0; i < 80; ++i) {
        const auto sys = ct::random_system(rng);
        const auto b = boundedness::cjsr_bounds(sys, 5);
        EXPECT_LE(b.lower, b.upper * (1 + 1e-12) + 1e-12);
    }
}

TEST(Lift, WeaknessLiftIsReducibleWithKnownSubspace) {
    const auto sys = generators::example_weakness();
    const auto v = lift::lift_irreducible(sys);
    ASSERT_TRUE(v.reducible());
    ASSERT_TRUE(v.witness);
    const auto dense = lift::build_lift(sys).dense();
    EXPECT_TRUE(verifies(v, dense));
    // {(x, y, z) : y, z in im A_2}: coordinates 0, 1, 3, 5
    linalg::Subspace<Rational> known(6);
    for (std::size_t i : {0u, 1u, 3u, 5u}) known.add(linalg::Subspace<Rational>::unit(6, i));
    EXPECT_TRUE(linalg::is_invariant(known, dense));
    EXPECT_TRUE(v.witness->contains(known));
}

TEST(Lift, IrreducibleLiftImpliesIrreducibleNodes) {
    std::mt19937_64 rng(109);
    ct::RandomSystemSpec spec;
    spec.strongly_connected = true;
    spec.max_n = 2;
    spec.max_nodes = 2;
    spec.max_edges = 6;
    spec.zero_weight = 1;
    spec.nilpotent_rate = 0.0;
    int lifted_irreducible = 0;
    for (int i = 0; i < 60; ++i) {
        const auto sys = ct::random_system(rng, spec);
        if (!lift::lift_irreducible(sys).irreducible()) continue;
        ++lifted_irreducible;
        for (NodeId v = 0; v < sys.node_count(); ++v) EXPECT_TRUE(boundedness::node_irreducible(sys, v).irreducible());
    }
    EXPECT_GT(lifted_irreducible, 5);
}

TEST(Lift, SingleNodeIrreducibleSet) {
    EXPECT_TRUE(lift::lift_irreducible(single_node(generators::example1().matrices())).irreducible());
}

TEST(Report, JsonIsDeterministic) {
    const auto sys = generators::example_weakness();
    const auto a = report::to_json(boundedness::boundedness_structure(sys)).dump();
    const auto b = report::to_json(boundedness::boundedness_structure(sys)).dump();
    EXPECT_EQ(a, b);
    const auto d = report::to_json(deadbeat::gurvits_constrained(generators::example1()), generators::example1());
    EXPECT_EQ(d["witness"]["length"], 4);
    EXPECT_EQ(d["is_deadbeat"], false);
}

// Data model, file format, graph combinatorics and the named generators.

#include <gtest/gtest.h>

#include <random>

#include "cswitch/cswitch.hpp"
#include "support/random_systems.hpp"

using namespace cswitch;
using cswitch::testing::random_system;
using cswitch::testing::RandomSystemSpec;
namespace ct = cswitch::testing;

namespace {

Matrix<Rational> q(std::initializer_list<std::initializer_list<Rational>> rows) { return Matrix<Rational>(rows); }

/// Reachability by repeated boolean matrix squaring of I + adjacency.
bool reach_closure_connected(const LabeledGraph& g) {
    const std::size_t m = g.node_count();
    std::vector<std::vector<bool>> r(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) r[i][i] = true;
    for (const auto& e : g.edges()) r[e.source][e.destination] = true;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    for (const auto& row : r)
        for (bool b : row)
            if (!b) return false;
    return true;
}

/// Every cycle of length <= |V| avoids no node of vstar.
bool unavoidable_bruteforce(const LabeledGraph& g, const graph::NodeSet& vstar) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto s = graph::enumerate_paths(g, v, v, g.node_count());
        while (auto c = s.next()) {
            bool hit = false;
            for (const auto& e : c->edges()) hit = hit || vstar.contains(e.source);
            if (!hit) return false;
        }
    }
    return true;
}

}  // namespace

TEST(Rational, ParsesAndFormatsInLowestTerms) {
    EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-3"), Rational(-3));
    EXPECT_EQ(format_rational(Rational(2, 4)), "1/2");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("1.5"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Path, RejectsNonConsecutiveEdges) {
    EXPECT_THROW(Path({{0, 1, Mode{1}}, {0, 1, Mode{1}}}), Error);
    EXPECT_THROW(Path(std::vector<Edge>{}), Error);
    Path p({{0, 1, Mode{1}}, {1, 0, Mode{2}}});
    EXPECT_EQ(p.length(), 2u);
    EXPECT_TRUE(p.is_cycle());
    EXPECT_TRUE(p.is_simple_cycle());
    EXPECT_FALSE(Path({{0, 0, Mode{1}}, {0, 0, Mode{1}}}).is_simple_cycle());
}

TEST(LabeledGraph, RejectsDuplicateTriplesButAllowsParallelLabels) {
    EXPECT_THROW(LabeledGraph(2, {{0, 1, Mode{1}}, {0, 1, Mode{1}}}), Error);
    EXPECT_NO_THROW(LabeledGraph(2, {{0, 1, Mode{1}}, {0, 1, Mode{2}}}));
    EXPECT_THROW(LabeledGraph(2, {{0, 2, Mode{1}}}), Error);
}

TEST(SwitchedSystem, RejectsUnknownLabelAndBadShapes) {
    EXPECT_THROW(RationalSystem(LabeledGraph(1, {{0, 0, Mode{3}}}), MatrixSet<Rational>(1, {q({{1}}), q({{2}})})), Error);
    try {
        RationalSystem(LabeledGraph(1, {{0, 0, Mode{3}}}), MatrixSet<Rational>(1, {q({{1}}), q({{2}})}));
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unknown_label);
    }
    EXPECT_THROW(MatrixSet<Rational>(2, {q({{1}})}), Error);
}

TEST(Validate, ReportsConnectivityAndCoverage) {
    const auto r = validate_system(generators::example2());
    EXPECT_TRUE(r.strongly_connected);
    EXPECT_TRUE(r.labels_covered);
    const RationalSystem disjoint(LabeledGraph(2, {{0, 0, Mode{1}}, {1, 1, Mode{1}}}), MatrixSet<Rational>(1, {q({{1}})}));
    EXPECT_FALSE(validate_system(disjoint).strongly_connected);
    const RationalSystem unused(LabeledGraph(1, {{0, 0, Mode{1}}}), MatrixSet<Rational>(1, {q({{1}}), q({{2}})}));
    const auto ru = validate_system(unused);
    EXPECT_FALSE(ru.labels_covered);
    EXPECT_EQ(ru.unused_labels, std::vector<std::size_t>{2});
    EXPECT_FALSE(ru.warnings.empty());
}

TEST(Validate, StrongConnectivityMatchesReachabilityClosure) {
    std::mt19937_64 rng(11);
    RandomSystemSpec spec;
    spec.max_nodes = 6;
    spec.max_edges = 10;
    for (int i = 0; i < 300; ++i) {
        const auto sys = random_system(rng, spec);
        EXPECT_EQ(validate_system(sys).strongly_connected, reach_closure_connected(sys.graph()));
    }
}

TEST(Io, ParsesExampleOneDocument) {
    const std::string doc = R"({"name": "example1", "n": 2, "scalar": "rational",
        "matrices": [[[1, 1], [0, 1]], [[0, 1], [1, 0]]],
        "edges": [[0, 0, 1], [0, 1, 2], [1, 0, 2]]})";
    const auto sys = io::parse_system_as<Rational>(doc);
    EXPECT_EQ(sys.matrices()[0], q({{1, 1}, {0, 1}}));
    EXPECT_EQ(sys, generators::example1());
}

TEST(Io, ErrorsCarryKinds) {
    auto kind_of = [](const std::string& text) {
        try {
            io::parse_system(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::invalid_argument;
    };
    EXPECT_EQ(kind_of(R"({"n": 1, "scalar": "rational", "matrices": [[[1]]], "edges": []})"), ErrorKind::empty_graph);
    EXPECT_EQ(kind_of(R"({"n": 1, "scalar": "rational", "matrices": [[["1/0"]]], "edges": [[0,0,1]]})"), ErrorKind::malformed_rational);
    EXPECT_EQ(kind_of(R"({"n": 1, "scalar": "rational", "matrices": [[[0.5]]], "edges": [[0,0,1]]})"), ErrorKind::malformed_rational);
    EXPECT_EQ(kind_of(R"({"n": 2, "scalar": "rational", "matrices": [[[1]]], "edges": [[0,0,1]]})"), ErrorKind::dimension_mismatch);
    EXPECT_EQ(kind_of(R"({"n": 1, "scalar": "rational", "matrices": [[[1]]], "edges": [[0,0,3]]})"), ErrorKind::unknown_label);
    EXPECT_EQ(kind_of(R"({"n": 1, "scalar": "rational", "matrices": [[[1]]], "edges": [[0,0,1]], "extra": 1})"), ErrorKind::schema);
    EXPECT_EQ(kind_of("{\n  \"n\": 1,\n  oops\n}"), ErrorKind::syntax);
    try {
        io::parse_system("{\n  \"n\": 1,\n  oops\n}");
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Io, SerializesCanonically) {
    const std::string text = io::serialize_system(generators::example2());
    EXPECT_EQ(text, io::serialize_system(generators::example2()));
    EXPECT_NE(text.find("[0, 1, 1]"), std::string::npos);
    EXPECT_NE(text.find("[1, 0, 2]"), std::string::npos);
    const RationalSystem half(LabeledGraph(1, {{0, 0, Mode{1}}}), MatrixSet<Rational>(1, {q({{Rational(2, 4)}})}));
    EXPECT_NE(io::serialize_system(half).find("\"1/2\""), std::string::npos);
    // edges given out of order come back sorted
    const RationalSystem shuffled(LabeledGraph(2, {{1, 0, Mode{1}}, {0, 1, Mode{1}}}), MatrixSet<Rational>(1, {q({{1}})}));
    const std::string s = io::serialize_system(shuffled);
    EXPECT_LT(s.find("[0, 1, 1]"), s.find("[1, 0, 1]"));
}

TEST(Io, RoundTripsRandomSystems) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto sys = random_system(rng);
        const auto back = io::parse_system_as<Rational>(io::serialize_system(sys));
        EXPECT_EQ(back, sys);
    }
    const auto big = RationalSystem(LabeledGraph(1, {{0, 0, Mode{1}}}),
                                    MatrixSet<Rational>(1, {q({{parse_rational("123456789012345678901234567890/7")}})}));
    EXPECT_EQ(io::parse_system_as<Rational>(io::serialize_system(big)), big);
}

TEST(Io, RoundTripsFloatsExactly) {
    const FloatSystem sys(LabeledGraph(1, {{0, 0, Mode{1}}}), MatrixSet<double>(2, {Matrix<double>{{0.1, 1.0 / 3.0}, {-2.5e-17, 7.0}}}));
    const auto back = io::parse_system_as<double>(io::serialize_system(sys));
    EXPECT_EQ(back, sys);
}

TEST(Graph, StrongConnectivityExamples) {
    EXPECT_TRUE(graph::strongly_connected(generators::example2().graph()));
    EXPECT_FALSE(graph::strongly_connected(LabeledGraph(2, {{0, 1, Mode{1}}})));
    for (std::size_t m = 2; m <= 6; ++m) EXPECT_TRUE(graph::strongly_connected(generators::gen_cerny({2, m}).graph()));
}

TEST(Graph, EnumeratePathsExampleTwo) {
    const auto g = generators::example2().graph();
    auto s = graph::enumerate_paths(g, 0, std::nullopt, 2);
    const auto p1 = s.next();
    const auto p2 = s.next();
    ASSERT_TRUE(p1 && p2);
    EXPECT_FALSE(s.next());
    EXPECT_EQ(*p1, Path({{0, 1, Mode{1}}}));
    EXPECT_EQ(*p2, Path({{0, 1, Mode{1}}, {1, 0, Mode{2}}}));
    const LabeledGraph self_loop(1, {{0, 0, Mode{1}}});
    auto loop = graph::enumerate_paths(self_loop, 0, std::nullopt, 3);
    EXPECT_EQ(loop.drain_count(), 3u);
}

TEST(Graph, PathCountsMatchAdjacencyPowers) {
    const auto g = generators::gen_cerny({2, 3}).graph();
    const std::size_t m = g.node_count();
    std::vector<std::vector<long>> a(m, std::vector<long>(m, 0)), p(m, std::vector<long>(m, 0));
    for (const auto& e : g.edges()) ++a[e.source][e.destination];
    for (std::size_t i = 0; i < m; ++i) p[i][i] = 1;
    for (std::size_t len = 1; len <= 6; ++len) {
        std::vector<std::vector<long>> next(m, std::vector<long>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t j = 0; j < m; ++j) next[i][j] += p[i][k] * a[k][j];
        p = next;
        for (NodeId v = 0; v < m; ++v) {
            long row = 0;
            for (long x : p[v]) row += x;
            EXPECT_EQ(static_cast<long>(ct::paths_of_length(g, v, len).size()), row) << "v=" << v << " len=" << len;
        }
    }
}

TEST(Graph, EnumeratedPathsAreConsecutiveAndOrdered) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto sys = random_system(rng);
        auto s = graph::enumerate_paths(sys.graph(), 0, std::nullopt, 4);
        std::size_t last_len = 0;
        while (auto p = s.next()) {
            EXPECT_GE(p->length(), last_len);
            last_len = p->length();
            EXPECT_EQ(p->source(), 0u);
            for (std::size_t k = 0; k + 1 < p->edges().size(); ++k)
                EXPECT_EQ(p->edges()[k].destination, p->edges()[k + 1].source);
        }
    }
}

TEST(Graph, SimpleCyclesOfTheWeaknessExample) {
    const auto g = generators::example_weakness().graph();
    std::vector<std::vector<std::size_t>> labels;
    auto s = graph::simple_cycles_through(g, 0, 3);
    while (auto c = s.next()) {
        EXPECT_TRUE(c->is_simple_cycle());
        labels.push_back(c->labels());
    }
    const std::vector<std::vector<std::size_t>> expected{{1}, {2, 1}, {2, 2, 1}};
    EXPECT_EQ(labels, expected);
    const LabeledGraph self_loop(1, {{0, 0, Mode{1}}});
    auto loop = graph::simple_cycles_through(self_loop, 0, 4);
    EXPECT_EQ(loop.drain_count(), 1u);
    const auto cerny_graph = generators::gen_cerny({2, 3}).graph();
    auto cerny = graph::simple_cycles_through(cerny_graph, 0, 6);
    const auto first = cerny.next();
    ASSERT_TRUE(first);
    EXPECT_EQ(first->length(), 3u);
}

TEST(Graph, Unavoidability) {
    const auto g = generators::example_weakness().graph();
    EXPECT_TRUE(graph::is_unavoidable(g, {0}));
    EXPECT_FALSE(graph::is_unavoidable(g, {}));
    EXPECT_TRUE(graph::is_unavoidable(g, {0, 1, 2}));
    EXPECT_FALSE(graph::is_unavoidable(g, {1, 2}));
}

TEST(Graph, UnavoidabilityMatchesShortCycleSearch) {
    std::mt19937_64 rng(17);
    RandomSystemSpec spec;
    spec.max_nodes = 5;
    spec.max_edges = 10;
    for (int i = 0; i < 200; ++i) {
        const auto sys = random_system(rng, spec);
        const auto& g = sys.graph();
        for (unsigned mask = 0; mask < (1u << g.node_count()); ++mask) {
            graph::NodeSet vs;
            for (NodeId v = 0; v < g.node_count(); ++v)
                if (mask & (1u << v)) vs.insert(v);
            EXPECT_EQ(graph::is_unavoidable(g, vs), unavoidable_bruteforce(g, vs));
        }
    }
}

TEST(Generators, CernyShape) {
    const auto sys = generators::gen_cerny({2, 3});
    EXPECT_EQ(sys.matrices()[0], q({{0, 1}, {0, 0}}));
    EXPECT_EQ(sys.matrices()[1], q({{0, 0}, {1, 0}}));
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t m = 2; m <= 6; ++m) {
            const auto s = generators::gen_cerny({n, m});
            const auto r = validate_system(s);
            EXPECT_TRUE(r.strongly_connected);
            EXPECT_EQ(s.node_count(), m);
            std::size_t without_loop = 0;
            for (NodeId v = 0; v < m; ++v) {
                bool loop = false;
                for (std::size_t k : s.graph().out_edges(v)) loop = loop || s.graph().edge(k).destination == v;
                if (!loop) ++without_loop;
            }
            EXPECT_EQ(without_loop, 1u);
        }
}

TEST(Generators, VehicleShape) {
    const auto sys = generators::gen_vehicle();
    EXPECT_EQ(sys.node_count(), 4u);
    EXPECT_EQ(sys.graph().edge_count(), 8u);
    EXPECT_EQ(sys.matrices()[1], generators::vehicle_q(Rational(1, 2), Rational(1, 3)));
    EXPECT_THROW(generators::gen_vehicle(Rational(0), Rational(1)), Error);
}

TEST(Generators, NamedExamples) {
    EXPECT_EQ(generators::gen_example("ex1").matrices().size(), 2u);
    const auto ex2 = generators::gen_example("ex2");
    EXPECT_EQ(ex2.n(), 1u);
    EXPECT_EQ(ex2.matrices()[0], q({{1}}));
    EXPECT_EQ(ex2.matrices()[1], q({{0}}));
    const auto w = generators::gen_example("ex-weakness");
    EXPECT_EQ(w.matrices()[0], q({{0, 1}, {1, 0}}));
    EXPECT_EQ(w.matrices()[1], q({{0, 0}, {0, 1}}));
    EXPECT_EQ(w.node_count(), 3u);
    try {
        generators::gen_example("ex9");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unknown_example);
    }
}

TEST(Generators, ExampleOneForbidsOneTwoOne) {
    // the label sequence 1 2 1 labels no path
    const auto g = generators::example1().graph();
    for (const auto& p : ct::paths_of_length(g, std::nullopt, 6)) {
        const auto l = p.labels();
        for (std::size_t i = 0; i + 2 < l.size(); ++i) EXPECT_FALSE(l[i] == 1 && l[i + 1] == 2 && l[i + 2] == 1);
    }
}

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"

#include "actdate/simulation.hpp"
#include "test_support.hpp"

using namespace actdate;

TEST_CASE("alpha_for_density") {
    CHECK(alpha_for_density(0.5) == 0.0);
    CHECK(alpha_for_density(0.1) == doctest::Approx(-std::log(9.0)).epsilon(1e-15));
    CHECK(alpha_for_density(0.1) == doctest::Approx(-2.19722).epsilon(1e-5));
    for (double d : {0.1, 0.25, 0.37, 0.5})
        CHECK(std::abs(connection_probability(1300.0, 1300.0, {alpha_for_density(d), 1.0, 1.0}) - d) <= 1e-12);
    CHECK_THROWS_AS(alpha_for_density(0.0), InvalidInput);
    CHECK_THROWS_AS(alpha_for_density(1.0), InvalidInput);
    CHECK_THROWS_AS(alpha_for_density(-0.2), InvalidInput);
}

TEST_CASE("beta_for_span") {
    const double beta = beta_for_span(0.0, 80.0, 1e-6);
    CHECK(beta == doctest::Approx(std::log(1e6 - 1.0) / 6400.0).epsilon(1e-15));
    CHECK(beta == doctest::Approx(2.15865e-3).epsilon(1e-5));

    for (double d : {0.1, 0.3, 0.5}) {
        const double alpha = alpha_for_density(d);
        const ModelParams p{alpha, beta_for_span(alpha, 80.0, 1e-6), 20.0};
        CHECK(connection_probability(1200.0, 1280.0, p) == doctest::Approx(1e-6).epsilon(1e-9));
    }
    CHECK_THROWS_AS(beta_for_span(0.0, 0.0, 1e-6), InvalidInput);
    CHECK_THROWS_AS(beta_for_span(0.0, 80.0, 1.0), InvalidInput);
    // log(1/0.9 - 1) + 0 < 0
    CHECK_THROWS_AS(beta_for_span(0.0, 80.0, 0.9), InvalidInput);
}

TEST_CASE("generated density at equal activity dates matches the Bernoulli law") {
    SimConfig c;
    c.n = 142;  // 10011 pairs
    c.z_low = c.z_high = 1300.0;
    c.target_density = 0.5;
    c.seed = 99;
    const auto out = generate(c);
    // With d = 0.5 the graph is connected, so the component is the whole graph.
    REQUIRE(out.graph.num_vertices() == c.n);
    const double pairs = 0.5 * 142.0 * 141.0;
    const double density = static_cast<double>(out.graph.num_edges()) / pairs;
    const double se = std::sqrt(0.25 / pairs);
    CHECK(std::abs(density - 0.5) < 3.0 * se);
}

TEST_CASE("edge frequency over repeated draws at a low density") {
    SimConfig c;
    c.n = 60;
    c.target_density = 0.3;
    c.life_span = 80.0;
    std::size_t trials = 0, hits = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        c.seed = seed;
        c.z_low = c.z_high = 1300.0;
        const auto out = generate(c);
        // every pair at distance 0, so probability d
        trials += static_cast<std::size_t>(0.5 * 60 * 59);
        hits += out.graph.num_edges();
        REQUIRE(out.graph.num_vertices() == c.n);
    }
    const double rate = static_cast<double>(hits) / static_cast<double>(trials);
    CHECK(trials >= 10000);
    CHECK(std::abs(rate - 0.3) < 3.0 * std::sqrt(0.3 * 0.7 / static_cast<double>(trials)));
}

TEST_CASE("uniform dates fall between the endpoints' activity dates") {
    SimConfig c;
    c.target_density = 0.4;
    c.date_model = DateModel::uniform;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        c.seed = seed;
        const auto out = generate(c);
        REQUIRE(out.graph.num_edges() > 0);
        for (const Edge& e : out.graph.edges()) {
            const double lo = std::min(out.z_true[e.u], out.z_true[e.v]);
            const double hi = std::max(out.z_true[e.u], out.z_true[e.v]);
            CHECK(e.date >= lo);
            CHECK(e.date <= hi);
        }
    }
}

TEST_CASE("uniform date with coincident activity dates is that date") {
    SimConfig c;
    c.n = 10;
    c.z_low = c.z_high = 1333.0;
    c.target_density = 0.5;
    c.date_model = DateModel::uniform;
    const auto out = generate(c);
    for (const Edge& e : out.graph.edges())
        CHECK(e.date == 1333.0);
}

TEST_CASE("generation is deterministic in the seed") {
    SimConfig c;
    c.target_density = 0.27;
    c.seed = 4242;
    c.rewire_fraction = 0.05;
    const auto a = generate(c);
    const auto b = generate(c);
    CHECK(std::equal(a.graph.edges().begin(), a.graph.edges().end(), b.graph.edges().begin(), b.graph.edges().end()));
    CHECK(a.z_true == b.z_true);
    CHECK(a.original_ids == b.original_ids);
    c.seed = 4243;
    CHECK_FALSE(generate(c).z_true == a.z_true);
}

TEST_CASE("generated output honours the component and discard contracts") {
    SimConfig c;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        c.seed = seed;
        c.target_density = 0.1 + 0.02 * static_cast<double>(seed);
        const auto out = generate(c);
        const std::size_t m = out.graph.num_vertices();
        CHECK(out.z_true.size() == m);
        CHECK(out.original_ids.size() == m);
        CHECK(out.accepted == (m >= 2 && out.graph.num_edges() >= m + 3));
        CHECK(out.edges_per_vertex == doctest::Approx(static_cast<double>(out.graph.num_edges()) / m));
        CHECK(out.params_true.sigma == 20.0);
        CHECK(largest_connected_component(out.graph).graph.num_vertices() == m);
    }
}

TEST_CASE("rewiring") {
    std::mt19937_64 g_rng(5);
    const auto g = testing::random_graph(100, 0.0606, g_rng);

    SUBCASE("zero fraction is the identity") {
        Rng rng(1);
        const auto r = rewire(g, 0.0, rng);
        CHECK(r.selected == 0);
        CHECK(std::equal(g.edges().begin(), g.edges().end(), r.graph.edges().begin(), r.graph.edges().end()));
    }
    SUBCASE("edge count, dates and simplicity are preserved") {
        for (double f : {0.01, 0.05, 0.3, 0.9}) {
            Rng rng(7);
            const auto r = rewire(g, f, rng);
            CHECK(r.selected == static_cast<std::size_t>(std::llround(f * g.num_edges())));
            CHECK(r.graph.num_edges() == g.num_edges());
            std::multiset<double> before, after;
            for (const Edge& e : g.edges())
                before.insert(e.date);
            std::size_t changed = 0;
            for (std::size_t k = 0; k < g.num_edges(); ++k) {
                after.insert(r.graph.edge(k).date);
                const Edge &o = g.edge(k), &n = r.graph.edge(k);
                CHECK(o.date == n.date);
                if (o.u != n.u || o.v != n.v) {
                    ++changed;
                    // one endpoint survives
                    CHECK((n.u == o.u || n.u == o.v || n.v == o.u || n.v == o.v));
                }
            }
            CHECK(before == after);
            CHECK(changed == r.selected - r.skipped);
            // TimestampedGraph's constructor would have thrown on loops or duplicates.
        }
    }
    SUBCASE("five percent of 300 edges selects 15") {
        std::vector<Edge> edges;
        std::mt19937_64 rng2(9);
        while (edges.size() < 300) {
            Vertex a = rng2() % 100, b = rng2() % 100;
            if (a == b)
                continue;
            auto key = std::minmax(a, b);
            if (std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e.u == key.first && e.v == key.second; }))
                continue;
            edges.push_back({key.first, key.second, 1300.0});
        }
        Rng rng(3);
        CHECK(rewire(TimestampedGraph(100, edges), 0.05, rng).selected == 15);
    }
    SUBCASE("a complete graph cannot be rewired and every attempt is skipped") {
        std::vector<Edge> edges;
        for (Vertex i = 0; i < 6; ++i)
            for (Vertex j = i + 1; j < 6; ++j)
                edges.push_back({i, j, 1300.0});
        Rng rng(4);
        const auto r = rewire(TimestampedGraph(6, edges), 0.5, rng);
        CHECK(r.selected == 8);  // round(7.5)
        CHECK(r.skipped == r.selected);
    }
    SUBCASE("invalid fraction") {
        Rng rng(1);
        CHECK_THROWS_AS(rewire(g, 1.0, rng), InvalidInput);
        CHECK_THROWS_AS(rewire(g, -0.1, rng), InvalidInput);
    }
}

namespace {

// Independent breadth-first labelling used as the oracle.
std::vector<std::vector<Vertex>> bfs_components(const TimestampedGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<Vertex>> nbrs(n);
    for (const Edge& e : g.edges()) {
        nbrs[e.u].push_back(e.v);
        nbrs[e.v].push_back(e.u);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::vector<Vertex>> comps;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<Vertex> comp;
        std::queue<Vertex> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            comp.push_back(v);
            for (Vertex w : nbrs[v])
                if (!seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(comp);
    }
    return comps;
}

}  // namespace

TEST_CASE("largest connected component") {
    SUBCASE("connected graph is returned unchanged") {
        const TimestampedGraph g(3, {{0, 1, 1.0}, {1, 2, 2.0}});
        const auto c = largest_connected_component(g);
        CHECK(c.graph.same_as(g));
        CHECK(c.original_ids == std::vector<Vertex>{0, 1, 2});
    }
    SUBCASE("three-vertex component beats the two-vertex one") {
        const TimestampedGraph g(5, {{0, 4, 1.0}, {1, 2, 2.0}, {2, 3, 3.0}});
        const auto c = largest_connected_component(g);
        CHECK(c.original_ids == std::vector<Vertex>{1, 2, 3});
        CHECK(c.graph.same_as(TimestampedGraph(3, {{0, 1, 2.0}, {1, 2, 3.0}})));
    }
    SUBCASE("ties go to the component with the smallest id") {
        const TimestampedGraph g(4, {{2, 3, 1.0}, {0, 1, 2.0}});
        CHECK(largest_connected_component(g).original_ids == std::vector<Vertex>{0, 1});
    }
    SUBCASE("empty graph") {
        const auto c = largest_connected_component(TimestampedGraph{});
        CHECK(c.graph.num_vertices() == 0);
    }
    SUBCASE("matches a BFS oracle on random graphs") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            const auto g = testing::random_graph(20, 0.08, rng);
            const auto comps = bfs_components(g);
            std::size_t best = 0;
            for (std::size_t k = 1; k < comps.size(); ++k)
                if (comps[k].size() > comps[best].size())
                    best = k;
            const auto c = largest_connected_component(g);
            REQUIRE(c.original_ids == comps[best]);

            std::map<std::pair<Vertex, Vertex>, double> expected;
            std::set<Vertex> members(comps[best].begin(), comps[best].end());
            for (const Edge& e : g.edges())
                if (members.count(e.u))
                    expected[{e.u, e.v}] = e.date;
            std::map<std::pair<Vertex, Vertex>, double> got;
            for (const Edge& e : c.graph.edges())
                got[std::minmax(c.original_ids[e.u], c.original_ids[e.v])] = e.date;
            CHECK(got == expected);
            for (Vertex v = 0; v < c.graph.num_vertices(); ++v) {
                const Vertex orig = c.original_ids[v];
                CHECK(c.graph.degree(v) == g.degree(orig));
            }
        }
    }
}

TEST_CASE("config validation") {
    SimConfig c;
    c.target_density = 1.0;
    CHECK_THROWS_AS(generate(c), InvalidInput);
    c = {};
    c.z_low = 1500.0;
    CHECK_THROWS_AS(generate(c), InvalidInput);
    c = {};
    c.rewire_fraction = 1.0;
    CHECK_THROWS_AS(generate(c), InvalidInput);
}

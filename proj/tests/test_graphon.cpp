#include <doctest.h>

#include <random>

#include "gcm/graph.hpp"
#include "gcm/graphon.hpp"

using namespace gcm;

namespace {

// independent oracle: plain recursion over vertex assignments, no component
// factorization, no budget logic
Rational brute_density(const Graph& h, const StepData<Rational>& d) {
    std::size_t n = d.weights.size(), v = h.vertex_count();
    std::vector<std::size_t> f(v);
    Rational total = 0;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == v) {
            Rational term = 1;
            for (std::size_t j = 0; j < v; ++j) term *= d.weights[f[j]];
            for (auto [a, b] : h.edges()) term *= d.values[f[a]][f[b]];
            total += term;
            return;
        }
        for (std::size_t b = 0; b < n; ++b) {
            f[i] = b;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return total;
}

StepData<Rational> rand_step(std::mt19937& rng, int nblocks) {
    std::uniform_int_distribution<int> num(0, 6), wnum(1, 6);
    StepData<Rational> d;
    Rational sum = 0;
    for (int i = 0; i < nblocks; ++i) {
        d.weights.emplace_back(wnum(rng), 1);
        sum += d.weights.back();
    }
    for (auto& w : d.weights) w /= sum;
    d.values.assign(nblocks, std::vector<Rational>(nblocks));
    for (int i = 0; i < nblocks; ++i)
        for (int j = i; j < nblocks; ++j)
            d.values[i][j] = d.values[j][i] = Rational(num(rng), 6);
    return d;
}

Graph random_graph(std::mt19937& rng, int maxv) {
    std::uniform_int_distribution<int> nv(1, maxv), coin(0, 1);
    int v = nv(rng);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            if (coin(rng)) edges.emplace_back(a, b);
    return Graph(v, std::move(edges));
}

}  // namespace

TEST_CASE("density matches the brute-force oracle exactly") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto d = rand_step(rng, 1 + trial % 3);
        Graph h = random_graph(rng, 5);
        StepGraphon w = StepGraphon::rational(d);
        CHECK(density(h, w).rat() == brute_density(h, d));
    }
}

TEST_CASE("refinement invariance") {
    // splitting a block into two equal halves with identical rows is a
    // different presentation of the same graphon
    StepData<Rational> coarse;
    coarse.weights = {Rational(1, 2), Rational(1, 2)};
    coarse.values = {{Rational(1, 3), Rational(3, 4)},
                     {Rational(3, 4), Rational(1, 5)}};
    StepData<Rational> fine;
    fine.weights = {Rational(1, 4), Rational(1, 4), Rational(1, 2)};
    fine.values = {{Rational(1, 3), Rational(1, 3), Rational(3, 4)},
                   {Rational(1, 3), Rational(1, 3), Rational(3, 4)},
                   {Rational(3, 4), Rational(3, 4), Rational(1, 5)}};
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Graph h = random_graph(rng, 5);
        CHECK(density(h, StepGraphon::rational(coarse)).rat() ==
              density(h, StepGraphon::rational(fine)).rat());
    }
}

TEST_CASE("complement identities") {
    std::mt19937 rng(13);
    Graph k2 = complete_graph(2);
    for (int trial = 0; trial < 50; ++trial) {
        StepGraphon w = StepGraphon::rational(rand_step(rng, 1 + trial % 3));
        CHECK(density(k2, w).rat() + density(k2, complement(w)).rat() == 1);
        CHECK(complement(complement(w)).to_json() == w.to_json());
    }
}

TEST_CASE("cycle density equals brute force") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = rand_step(rng, 1 + trial % 3);
        StepGraphon w = StepGraphon::rational(d);
        for (int n : {3, 4, 5, 6})
            CHECK(cycle_density(n, w).rat() == brute_density(cycle_graph(n), d));
    }
}

TEST_CASE("isolated vertices and the empty product") {
    StepData<Rational> d;
    d.weights = {Rational(1, 3), Rational(2, 3)};
    d.values = {{Rational(1, 2), Rational(1, 4)},
                {Rational(1, 4), Rational(1, 7)}};
    StepGraphon w = StepGraphon::rational(d);
    CHECK(density(Graph(4, {}), w).rat() == 1);  // weights sum to 1
    Graph k2_plus_isolated(4, {{0, 1}});
    CHECK(density(k2_plus_isolated, w).rat() ==
          density(complete_graph(2), w).rat());
}

TEST_CASE("budget enforcement") {
    StepData<Rational> d;
    d.weights = {Rational(1, 2), Rational(1, 2)};
    d.values = {{Rational(1, 2), Rational(1, 2)},
                {Rational(1, 2), Rational(1, 2)}};
    StepGraphon w = StepGraphon::rational(d);
    CHECK_THROWS_AS(density(complete_graph(7), w, 64), budget_error);
    CHECK_NOTHROW(density(complete_graph(7), w, 128));
}

TEST_CASE("json mode detection and round trip") {
    StepGraphon exact = StepGraphon::from_json(
        R"({"weights": ["1/2", "1/2"], "matrix": [["1/3", "1"], ["1", "1/3"]]})");
    CHECK(exact.mode() == NumericMode::rational);
    CHECK(StepGraphon::from_json(exact.to_json()).to_json() == exact.to_json());

    StepGraphon fl = StepGraphon::from_json(
        R"({"weights": [0.5, 0.5], "matrix": [[0.25, 1.0], [1.0, 0.25]]})");
    CHECK(fl.mode() == NumericMode::floating);
    CHECK(density(complete_graph(2), fl).as_double() == doctest::Approx(0.625));
}

TEST_CASE("validation rejects malformed graphons") {
    CHECK_THROWS_AS(StepGraphon::rational(
                        {{Rational(1, 2)}, {{Rational(1, 2)}}}),
                    domain_error);  // weights don't sum to 1
    CHECK_THROWS_AS(StepGraphon::rational({{Rational(1)}, {{Rational(2)}}}),
                    domain_error);  // entry > 1
    CHECK_THROWS_AS(
        StepGraphon::rational({{Rational(1, 2), Rational(1, 2)},
                               {{Rational(0), Rational(1)},
                                {Rational(1, 2), Rational(0)}}}),
        domain_error);  // asymmetric
}

TEST_CASE("density json carries mode and error bound") {
    StepData<Float> d;
    d.weights = {Float(1)};
    d.values = {{Float("0.5")}};
    Density v = density(complete_graph(2), StepGraphon::floating(d));
    CHECK(v.to_json().find("error_bound") != std::string::npos);
    Density r = density(complete_graph(2),
                        StepGraphon::rational({{Rational(1)}, {{Rational(1, 2)}}}));
    CHECK(r.to_string() == "1/2");
}

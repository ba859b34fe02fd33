#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rtg/engine.hpp"
#include "rtg/graphgame.hpp"

using namespace rtg;

namespace {

std::vector<std::uint8_t> edge_set(int n, const std::vector<std::pair<int, int>> &es) {
    EdgeIndex ei(n);
    std::vector<std::uint8_t> s(ei.edge_count(), 0);
    for (auto &[u, v] : es)
        s[ei.index(u, v)] = 1;
    return s;
}

} // namespace

TEST_CASE("edge index is a bijection") {
    for (int n : {2, 3, 7, 12}) {
        EdgeIndex ei(n);
        CHECK(ei.edge_count() == n * (n - 1) / 2);
        std::set<int> seen;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int e = ei.index(u, v);
                CHECK(ei.index(v, u) == e);
                CHECK(ei.pair_of(e) == std::make_pair(u, v));
                seen.insert(e);
            }
        CHECK(static_cast<int>(seen.size()) == ei.edge_count());
    }
    EdgeIndex e5(5);
    CHECK_THROWS_AS(e5.index(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(e5.pair_of(10), std::invalid_argument);
}

TEST_CASE("balanced tournament partitions the edges") {
    for (int n : {2, 4, 5, 6, 9, 10}) {
        auto t = build_balanced_tournament(n);
        EdgeIndex ei(n);
        std::vector<int> covered(ei.edge_count(), 0);
        int lo = (n - 1) / 2, hi = (n - 1 + 1) / 2;
        for (int v = 0; v < n; ++v) {
            int sz = static_cast<int>(t.sets[v].size());
            CHECK(sz >= lo);
            CHECK(sz <= hi);
            for (int e : t.sets[v]) {
                CHECK(t.owner[e] == v);
                auto [a, b] = ei.pair_of(e);
                CHECK((a == v || b == v));
                ++covered[e];
            }
        }
        for (int e = 0; e < ei.edge_count(); ++e)
            CHECK(covered[e] == 1);
    }
    // n=4 out-degree multiset is {1,1,2,2}; n=2 is {0,1}
    auto t4 = build_balanced_tournament(4);
    std::vector<int> d4;
    for (auto &s : t4.sets)
        d4.push_back(static_cast<int>(s.size()));
    std::sort(d4.begin(), d4.end());
    CHECK(d4 == std::vector<int>{1, 1, 2, 2});
}

TEST_CASE("graph view tracks claims and free pool") {
    GraphView view(5);
    CHECK(view.free_edges == 10);
    int e01 = view.edges.index(0, 1);
    view.apply(Player::Maker, e01);
    CHECK(view.maker.has_edge(0, 1));
    CHECK_FALSE(view.edge_free(e01));
    CHECK(view.free_edges == 9);
    CHECK_THROWS_AS(view.apply(Player::Breaker, e01), std::invalid_argument);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 9; ++i) {
        int e = view.sample_free(rng);
        REQUIRE(e >= 0);
        view.apply(Player::Breaker, e);
    }
    CHECK(view.sample_free(rng) == -1);
}

TEST_CASE("unopposed expander play reaches the degree target") {
    const int n = 20;
    StrategyConfig cfg;
    cfg.d = 2;
    cfg.beta = 0.2;
    std::mt19937_64 rng(21);
    MakerExpanderStrategy maker(n, cfg, 1.0, 99);
    UniformRandomStrategy breaker(1);
    auto rec = play_game(EdgeIndex(n).edge_count(), min_degree_win_condition(n, 2),
                         maker, breaker, 1.0, rng);
    CHECK(rec.outcome == Outcome::MakerWin);
    CHECK_FALSE(rec.forfeit.has_value());
    CHECK(maker.stage_complete());
    CHECK(maker.completion_turn() == static_cast<long>(n) * 2);
}

TEST_CASE("expander strategy holds the degree target under random opposition") {
    const int n = 30;
    StrategyConfig cfg;
    cfg.d = 3;
    cfg.beta = 0.3; // keeps the simulated sub-boxes non-degenerate at this n
    int completed = 0, degree_ok = 0, trials = 20;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(300 + t);
        MakerExpanderStrategy maker(n, cfg, 0.7, 1000 + t);
        UniformRandomStrategy breaker(2000 + t);
        auto rec = play_game(EdgeIndex(n).edge_count(), min_degree_win_condition(n, 3),
                             maker, breaker, 0.7, rng);
        if (rec.forfeit)
            continue;
        ++completed;
        degree_ok += rec.outcome == Outcome::MakerWin ? 1 : 0;
    }
    CHECK(completed >= trials * 7 / 10);
    CHECK(degree_ok == completed); // completion implies the degree bound
}

TEST_CASE("connect-components move joins the two smallest components") {
    GraphView view(6);
    view.apply(Player::Maker, view.edges.index(0, 1));
    view.apply(Player::Maker, view.edges.index(2, 3));
    // components {0,1},{2,3},{4},{5}: the two singletons go first
    auto mv = maker_connect_components_move(view);
    REQUIRE(mv.has_value());
    CHECK(*mv == view.edges.index(4, 5));
    view.apply(Player::Maker, *mv);

    // now {0,1},{2,3},{4,5}: ties resolve to the lowest minimum vertex
    auto mv2 = maker_connect_components_move(view);
    REQUIRE(mv2.has_value());
    CHECK(*mv2 == view.edges.index(0, 2));

    // blocked pair falls back to a later pair
    GraphView blocked(4);
    blocked.apply(Player::Maker, blocked.edges.index(0, 1));
    blocked.apply(Player::Breaker, blocked.edges.index(2, 3));
    // components {2},{3},{0,1}; edge {2,3} is gone, so {2} joins {0,1}
    auto mv3 = maker_connect_components_move(blocked);
    REQUIRE(mv3.has_value());
    CHECK(*mv3 == blocked.edges.index(0, 2));

    GraphView one(3);
    one.apply(Player::Maker, one.edges.index(0, 1));
    one.apply(Player::Maker, one.edges.index(1, 2));
    CHECK_FALSE(maker_connect_components_move(one).has_value());
}

TEST_CASE("unopposed hamiltonicity play builds a hamiltonian graph") {
    const int n = 20;
    StrategyConfig cfg;
    cfg.d = 2;
    std::mt19937_64 rng(77);
    MakerHamiltonicityStrategy maker(n, cfg, 1.0, 5);
    UniformRandomStrategy breaker(6);
    auto rec = play_game(EdgeIndex(n).edge_count(),
                         hamiltonicity_win_condition(n, 200000), maker, breaker, 1.0,
                         rng);
    CHECK(rec.outcome == Outcome::MakerWin);
    CHECK_FALSE(rec.forfeit.has_value());
}

TEST_CASE("hamiltonicity strategy advances through its stages") {
    const int n = 16;
    StrategyConfig cfg;
    cfg.d = 2;
    std::mt19937_64 rng(78);
    MakerHamiltonicityStrategy maker(n, cfg, 1.0, 7);
    UniformRandomStrategy breaker(8);
    PlayOptions opts;
    opts.early_stop = false;
    play_game(EdgeIndex(n).edge_count(), hamiltonicity_win_condition(n, 200000), maker,
              breaker, 1.0, rng, opts);
    CHECK(maker.stage() == MakerStage::Done);
    CHECK(maker.hamiltonian_detected());
    CHECK(maker.stage_turns(MakerStage::Expander) == static_cast<long>(n) * 2);
}

TEST_CASE("unopposed k-connectivity play is k-connected") {
    const int n = 14;
    StrategyConfig cfg;
    cfg.k = 2;
    cfg.d = 3;
    std::mt19937_64 rng(90);
    MakerKConnectivityStrategy maker(n, cfg, 1.0, 11);
    UniformRandomStrategy breaker(12);
    auto rec = play_game(EdgeIndex(n).edge_count(), k_connectivity_win_condition(n, 2),
                         maker, breaker, 1.0, rng);
    CHECK(rec.outcome == Outcome::MakerWin);
}

TEST_CASE("isolation breaker wins against a rare random maker") {
    const int n = 30;
    const double p = 0.1;
    StrategyConfig cfg;
    int breaker_wins = 0, trials = 30;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(500 + t);
        UniformRandomStrategy maker(600 + t);
        BreakerIsolationStrategy breaker(n, cfg, p);
        auto rec = play_game(EdgeIndex(n).edge_count(), min_degree_win_condition(n, 1),
                             maker, breaker, p, rng);
        breaker_wins += rec.outcome == Outcome::BreakerWin ? 1 : 0;
    }
    CHECK(breaker_wins >= trials * 6 / 10);
}

TEST_CASE("isolation breaker respects its clique target override") {
    StrategyConfig cfg;
    cfg.clique_target = 3;
    BreakerIsolationStrategy breaker(8, cfg, 0.2);
    BoardState board(EdgeIndex(8).edge_count());
    // unopposed stage one: first three moves build the clique on {0,1,2}
    EdgeIndex ei(8);
    std::vector<int> moves;
    for (int i = 0; i < 3; ++i) {
        auto mv = breaker.next_move(board);
        REQUIRE(mv.has_value());
        moves.push_back(*mv);
        board.claim(Player::Breaker, *mv);
        breaker.on_claim(Player::Breaker, *mv);
    }
    CHECK(moves[0] == ei.index(0, 1)); // vertex 1 joins 0
    // absorption runs at the next move request, completing the clique
    auto mv = breaker.next_move(board);
    REQUIRE(mv.has_value());
    CHECK(breaker.clique_size() == 3);
    CHECK(breaker.in_stage_two());
}

TEST_CASE("star attack targets the minimum maker-degree vertex") {
    const int n = 4;
    EdgeIndex ei(n);
    StarAttackBreaker b(n);
    BoardState board(ei.edge_count());
    int e01 = ei.index(0, 1);
    board.claim(Player::Maker, e01);
    b.on_claim(Player::Maker, e01);
    auto mv = b.next_move(board);
    REQUIRE(mv.has_value());
    // maker degrees (1,1,0,0): vertex 2 wins the tie, lowest free edge there
    CHECK(*mv == ei.index(0, 2));
}

TEST_CASE("graph win conditions on hand-built graphs") {
    const int n = 4;
    auto path = edge_set(n, {{0, 1}, {1, 2}, {2, 3}});
    auto cycle = edge_set(n, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

    CHECK(min_degree_win_condition(n, 1).wins(path));
    CHECK_FALSE(min_degree_win_condition(n, 2).wins(path));
    CHECK(min_degree_win_condition(n, 2).wins(cycle));

    CHECK_FALSE(hamiltonicity_win_condition(n).wins(path));
    CHECK(hamiltonicity_win_condition(n).wins(cycle));

    CHECK(k_connectivity_win_condition(n, 1).wins(path));
    CHECK_FALSE(k_connectivity_win_condition(n, 2).wins(path));
    CHECK(k_connectivity_win_condition(n, 2).wins(cycle));
    CHECK_FALSE(k_connectivity_win_condition(n, 3).wins(cycle));
}

TEST_CASE("default expander fraction formula") {
    StrategyConfig cfg;
    double v1 = cfg.default_delta_expander(1);
    CHECK(v1 == doctest::Approx(std::pow(44.0 * std::exp(1.0), -8.0)));
    CHECK(cfg.default_delta_expander(2) < v1);
}

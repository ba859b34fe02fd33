#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rtg/engine.hpp"
#include "rtg/oracle.hpp"

using namespace rtg;

namespace {

WinCondition single_element_win() {
    WinCondition wc;
    wc.monotone = true;
    wc.wins = [](const std::vector<std::uint8_t> &m) { return m[0] != 0; };
    return wc;
}

WinCondition full_board_win() {
    WinCondition wc;
    wc.monotone = true;
    wc.wins = [](const std::vector<std::uint8_t> &m) {
        for (auto b : m)
            if (!b)
                return false;
        return true;
    };
    return wc;
}

WinCondition never_win() {
    WinCondition wc;
    wc.monotone = true;
    wc.wins = [](const std::vector<std::uint8_t> &) { return false; };
    return wc;
}

// always plays a fixed element, free or not
struct FixedElementStrategy : Strategy {
    int e;
    explicit FixedElementStrategy(int elem) : e(elem) {}
    std::optional<int> next_move(const BoardState &) override { return e; }
};

} // namespace

TEST_CASE("turn sequence degenerate coins") {
    std::mt19937_64 rng(1);
    auto all_m = sample_turn_sequence(5, 1.0, rng);
    for (Player p : all_m.bits)
        CHECK(p == Player::Maker);
    auto all_b = sample_turn_sequence(5, 0.0, rng);
    for (Player p : all_b.bits)
        CHECK(p == Player::Breaker);
    CHECK(all_m.length() == 5);
    CHECK_THROWS_AS(sample_turn_sequence(5, 1.5, rng), std::invalid_argument);
}

TEST_CASE("turn sequence fair coin count") {
    std::mt19937_64 rng(42);
    auto seq = sample_turn_sequence(1000000, 0.5, rng);
    long makers = 0;
    for (Player p : seq.bits)
        makers += p == Player::Maker ? 1 : 0;
    // 4 sigma around the binomial mean, sigma = 500
    CHECK(makers > 500000 - 2000);
    CHECK(makers < 500000 + 2000);
}

TEST_CASE("play_game degenerate coins") {
    std::mt19937_64 rng(7);
    LowestIndexStrategy a, b;
    auto rec = play_game(6, full_board_win(), a, b, 1.0, rng);
    CHECK(rec.outcome == Outcome::MakerWin);
    CHECK(rec.moves.size() == 6);

    LowestIndexStrategy c, d;
    auto rec2 = play_game(6, never_win(), c, d, 0.0, rng);
    CHECK(rec2.outcome == Outcome::BreakerWin);
}

TEST_CASE("single element win frequency tracks the coin") {
    const int trials = 100000;
    long wins = 0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(1000 + t);
        LowestIndexStrategy a, b;
        auto rec = play_game(1, single_element_win(), a, b, 0.3, rng);
        wins += rec.outcome == Outcome::MakerWin ? 1 : 0;
    }
    double freq = static_cast<double>(wins) / trials;
    // 4 sigma for Bernoulli(0.3) over 1e5 trials
    CHECK(freq > 0.3 - 0.006);
    CHECK(freq < 0.3 + 0.006);
}

TEST_CASE("claimed-element move is a forfeit of that player") {
    std::mt19937_64 rng(3);
    FixedElementStrategy maker(0), breaker(0);
    auto rec = play_game(4, never_win(), maker, breaker, 0.5, rng);
    REQUIRE(rec.forfeit.has_value());
    // whoever moved second targeted the claimed element 0
    CHECK(rec.forfeit->turn == 1);
    CHECK(rec.forfeit->who == rec.turn_bits[1]);
    CHECK(rec.outcome ==
          (rec.forfeit->who == Player::Maker ? Outcome::BreakerWin : Outcome::MakerWin));
}

TEST_CASE("fallback forfeit policy continues with the lowest free element") {
    std::mt19937_64 rng(3);
    FixedElementStrategy maker(0), breaker(0);
    PlayOptions opts;
    opts.forfeit_policy = ForfeitPolicy::Fallback;
    auto rec = play_game(4, never_win(), maker, breaker, 0.5, rng, opts);
    REQUIRE(rec.forfeit.has_value());
    CHECK(rec.moves.size() == 4); // game ran to the end
    // elements are claimed in index order under the fallback
    for (int t = 0; t < 4; ++t)
        CHECK(rec.moves[t].second == t);
}

TEST_CASE("mirror of lowest-index claims elements in order") {
    std::mt19937_64 rng(11);
    auto m = mirror_strategy(std::make_unique<LowestIndexStrategy>());
    auto b = mirror_strategy(std::make_unique<LowestIndexStrategy>());
    auto rec = play_game(3, never_win(), *m, *b, 0.5, rng);
    REQUIRE(rec.moves.size() == 3);
    for (int t = 0; t < 3; ++t)
        CHECK(rec.moves[t].second == t);
}

TEST_CASE("mirror product law at reduced scale") {
    // Maker set size should behave like Bin(200, 0.4)
    const int trials = 2000, n = 200;
    const double q = 0.4;
    double sum = 0, sum2 = 0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(5000 + t);
        auto m = mirror_strategy(std::make_unique<LowestIndexStrategy>());
        auto b = mirror_strategy(std::make_unique<LowestIndexStrategy>());
        auto rec = play_game(n, never_win(), *m, *b, q, rng);
        long size = 0;
        for (auto &[who, e] : rec.moves)
            size += who == Player::Maker ? 1 : 0;
        sum += size;
        sum2 += static_cast<double>(size) * size;
    }
    double mean = sum / trials;
    double var = sum2 / trials - mean * mean;
    CHECK(mean > 80 - 8);
    CHECK(mean < 80 + 8);
    CHECK(var > 0.7 * 48);
    CHECK(var < 1.3 * 48);
}

TEST_CASE("uniform random strategy basics") {
    BoardState board(3);
    board.claim(Player::Maker, 0);
    board.claim(Player::Breaker, 2);
    UniformRandomStrategy s(9);
    auto mv = s.next_move(board);
    REQUIRE(mv.has_value());
    CHECK(*mv == 1); // only free element

    BoardState empty(1);
    empty.claim(Player::Maker, 0);
    UniformRandomStrategy s2(9);
    CHECK_FALSE(s2.next_move(empty).has_value());
}

TEST_CASE("uniform random first moves are uniform") {
    std::vector<int> counts(10, 0);
    for (int t = 0; t < 10000; ++t) {
        BoardState board(10);
        UniformRandomStrategy s(777 + t);
        ++counts[*s.next_move(board)];
    }
    for (int e = 0; e < 10; ++e) {
        CHECK(counts[e] > 800);
        CHECK(counts[e] < 1200);
    }
}

TEST_CASE("interval partition shapes") {
    auto a = partition_into_intervals(10, 3);
    REQUIRE(a.size() == 4);
    CHECK(a[0].length() == 3);
    CHECK(a[3].length() == 1);
    CHECK(a[0].start == 1);
    CHECK(a[3].end == 10);

    auto b = partition_into_intervals(9, 3);
    REQUIRE(b.size() == 3);
    for (auto &iv : b)
        CHECK(iv.length() == 3);

    auto c = partition_into_intervals(5, 10);
    REQUIRE(c.size() == 1);
    CHECK(c[0].length() == 5);
}

TEST_CASE("interval annotation splits the realized sequence") {
    std::mt19937_64 rng(13);
    auto seq = sample_turn_sequence(100, 0.3, rng);
    auto ivs = partition_into_intervals(100, 7);
    annotate_intervals(ivs, seq);
    long makers = 0, total = 0;
    for (auto &iv : ivs) {
        CHECK(iv.maker_turns + iv.breaker_turns == iv.length());
        makers += iv.maker_turns;
        total += iv.length();
    }
    CHECK(total == 100);
    long direct = 0;
    for (Player p : seq.bits)
        direct += p == Player::Maker ? 1 : 0;
    CHECK(makers == direct);
}

TEST_CASE("replay determinism and record round trip") {
    auto play_once = [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        UniformRandomStrategy a(seed ^ 1), b(seed ^ 2);
        PlayOptions opts;
        opts.seed = seed;
        return play_game(20, full_board_win(), a, b, 0.6, rng, opts);
    };
    auto r1 = play_once(99), r2 = play_once(99);
    CHECK(r1.to_json() == r2.to_json());

    auto back = GameRecord::from_json(r1.to_json());
    CHECK(back.to_json() == r1.to_json());
}

TEST_CASE("ownership conservation") {
    std::mt19937_64 rng(17);
    UniformRandomStrategy a(1), b(2);
    auto rec = play_game(50, never_win(), a, b, 0.5, rng);
    CHECK(rec.moves.size() == 50);
    std::vector<int> seen(50, 0);
    for (auto &[who, e] : rec.moves)
        ++seen[e];
    for (int e = 0; e < 50; ++e)
        CHECK(seen[e] == 1); // pairwise distinct, full coverage
}

TEST_CASE("monotone early stop soundness on random families") {
    std::mt19937_64 fam_rng(2024);
    auto fams = enumerate_monotone_families(8, 12, fam_rng);
    for (std::size_t f = 0; f < fams.size(); ++f) {
        WinCondition wc = fams[f].as_win_condition();
        REQUIRE(wc.monotone);
        for (int t = 0; t < 100; ++t) {
            std::uint64_t seed = f * 1000 + t;
            auto run = [&](bool early) {
                std::mt19937_64 rng(seed);
                UniformRandomStrategy a(seed ^ 3), b(seed ^ 4);
                PlayOptions opts;
                opts.early_stop = early;
                return play_game(8, wc, a, b, 0.5, rng, opts).outcome;
            };
            CHECK(run(true) == run(false));
        }
    }
}

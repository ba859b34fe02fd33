// Core random-turn game loop: coin-toss scheduling, board ownership,
// the strategy contract and replayable game records.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtg {

enum class Player : std::uint8_t { Maker = 0, Breaker = 1 };

inline Player other(Player p) {
    return p == Player::Maker ? Player::Breaker : Player::Maker;
}

inline char player_char(Player p) { return p == Player::Maker ? 'M' : 'B'; }

// Realized coin tosses for a whole game. bits[i] is the player moving at
// turn i; each bit is Maker independently with probability q.
struct TurnSequence {
    std::vector<Player> bits;
    double q = 0.5;

    std::size_t length() const { return bits.size(); }
};

TurnSequence sample_turn_sequence(std::size_t len, double q, std::mt19937_64 &rng);

enum class Cell : std::int8_t { Free = 0, Maker = 1, Breaker = 2 };

// Ownership of each board element. Ownership never changes once set.
struct BoardState {
    explicit BoardState(int n);

    int n_elements = 0;
    std::vector<Cell> owner;
    std::vector<std::uint8_t> maker_mask; // maker_mask[e] != 0 iff Maker owns e
    int maker_count = 0;
    int breaker_count = 0;

    int free_count() const { return n_elements - maker_count - breaker_count; }
    bool is_free(int e) const { return owner[e] == Cell::Free; }
    void claim(Player p, int e);
};

// Predicate over Maker's element set. When `monotone` is declared, adding an
// element must never turn a win into a loss.
struct WinCondition {
    std::function<bool(const std::vector<std::uint8_t> &maker_set)> wins;
    bool monotone = false;
};

// A strategy is bound to a single game. on_claim is invoked after every
// claim by either player (including the strategy's own); next_move returns
// a free element, or nullopt to signal a forfeit.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual void on_claim(Player /*who*/, int /*element*/) {}
    virtual std::optional<int> next_move(const BoardState &board) = 0;
};

enum class Outcome : std::uint8_t { MakerWin = 0, BreakerWin = 1 };

struct Forfeit {
    Player who;
    int turn; // 0-based turn index at which the forfeit occurred
};

enum class ForfeitPolicy : std::uint8_t { Strict, Fallback };

struct PlayOptions {
    bool early_stop = false;
    ForfeitPolicy forfeit_policy = ForfeitPolicy::Strict;
    std::uint64_t seed = 0; // recorded only; rng is passed in by the caller
};

struct GameRecord {
    std::uint64_t seed = 0;
    double q = 0.5;
    int n_elements = 0;
    std::vector<Player> turn_bits;                // realized coin tosses
    std::vector<std::pair<Player, int>> moves;    // (player, element), in order
    Outcome outcome = Outcome::BreakerWin;
    std::optional<Forfeit> forfeit;

    std::string to_json() const;
    static GameRecord from_json(const std::string &text);
};

// Runs the game for exactly n_elements turns (the board is exhausted then),
// or until an early Maker win (when early_stop and the condition is
// monotone), or until a strict forfeit.
GameRecord play_game(int n_elements, const WinCondition &wc, Strategy &maker,
                     Strategy &breaker, double q, std::mt19937_64 &rng,
                     const PlayOptions &opts = {});

// Baseline adversary: claims a uniformly random free element.
class UniformRandomStrategy : public Strategy {
  public:
    explicit UniformRandomStrategy(std::uint64_t seed);
    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

  private:
    void ensure_init(const BoardState &board);
    std::mt19937_64 rng_;
    std::vector<int> free_;     // unordered pool of free elements
    std::vector<int> pos_;      // element -> index in free_, -1 if claimed
    bool init_ = false;
};

// Deterministic baseline: lowest-index free element.
class LowestIndexStrategy : public Strategy {
  public:
    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

  private:
    int cursor_ = 0;
};

// Plays exactly what the wrapped (deterministic, history-driven) strategy
// would play in the same position. Both seats running mirrors of the same
// strategy target the same element each turn, so each element goes to Maker
// independently with probability q.
class MirrorStrategy : public Strategy {
  public:
    explicit MirrorStrategy(std::unique_ptr<Strategy> inner)
        : inner_(std::move(inner)) {}
    void on_claim(Player who, int element) override { inner_->on_claim(who, element); }
    std::optional<int> next_move(const BoardState &board) override {
        return inner_->next_move(board);
    }

  private:
    std::unique_ptr<Strategy> inner_;
};

inline std::unique_ptr<Strategy> mirror_strategy(std::unique_ptr<Strategy> inner) {
    return std::make_unique<MirrorStrategy>(std::move(inner));
}

// A consecutive block of the turn sequence; closed, 1-based indices.
struct Interval {
    int start = 0;
    int end = 0;   // inclusive
    int maker_turns = 0;
    int breaker_turns = 0;

    int length() const { return end - start + 1; }
};

// r = ceil(l / interval_length) intervals covering [1, l]; all but the last
// have the given length.
std::vector<Interval> partition_into_intervals(std::size_t l, std::size_t interval_length);

// Fills maker_turns / breaker_turns from a realized sequence.
void annotate_intervals(std::vector<Interval> &intervals, const TurnSequence &seq);

} // namespace rtg

// Box game variants: the deterministic Box(n x s; m:b) game, the
// random-turn game Box_p, and the d-Maker MinBox game, with the strategies
// for each side.
//
// Convention for random-turn Box games played through the engine: the
// engine's Maker seat is BoxMaker (win: some box fully his) and the engine
// coin probability is q = 1 - p, so that BoxBreaker moves with
// probability p.
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "rtg/engine.hpp"
#include "rtg/oracle.hpp" // Rational

namespace rtg {

struct BoxSpec {
    explicit BoxSpec(std::vector<int> sizes);
    static BoxSpec uniform(int n, int s);

    std::vector<int> sizes;
    std::vector<int> offsets; // box i occupies elements [offsets[i], offsets[i+1])

    int n_boxes() const { return static_cast<int>(sizes.size()); }
    int total_elements() const { return offsets.back(); }
    int box_of(int element) const;
    int first_element(int box) const { return offsets[box]; }
    int min_size() const;
};

// Per-box bookkeeping, maintained from observed claims. BoxMaker is the
// engine's Maker seat.
struct BoxPosition {
    explicit BoxPosition(const BoxSpec &spec);

    std::vector<int> free_count;
    std::vector<int> maker_count;
    std::vector<std::uint8_t> touched; // touched by BoxBreaker
    std::vector<std::uint8_t> full;    // fully claimed by BoxMaker
    // elements claimed in the box before BoxBreaker touched it
    std::vector<int> pre_touch_claims;

    void apply(const BoxSpec &spec, Player who, int element);
    bool active(int box) const { return !touched[box] && !full[box]; }
    bool all_touched() const;
    bool some_full() const;
};

// H_0 = 0, H_j = sum_{i<=j} 1/i, exact.
Rational harmonic(long j);

// BoxBreaker wins the deterministic Box(n x s; m:b) game iff
// s > (m/b) (H_n + b); strict inequality, exact arithmetic.
bool biasbox_condition(long s, long m, long b, long n);

// Active box with the fewest free elements; ties resolve to the lowest
// index. nullopt when no active box remains.
std::optional<int> minimal_box_move(const BoxPosition &pos);

// phi(j) = (sum of the given free counts) / ((k-1-j) b + 1), over the
// relabeled index range jb+1 .. (k-1)b+1 of the BiasBox proof.
Rational box_potential(const std::vector<int> &free_counts, int j, int k, int b);

// Interval-simulation parameters for strategy S'. Both feasibility
// constraints are checked at construction.
struct IntervalParams {
    IntervalParams(double epsilon, double delta, double gamma);
    static bool feasible(double epsilon, double delta, double gamma);

    double epsilon;
    double delta;
    double gamma;

    // derived quantities of the simulated deterministic game, given the
    // uniform box size s and BoxBreaker's move probability p
    double sim_box_size(int s) const { return (1.0 - gamma) * s; }
    double boxmaker_bias(int s, double p) const { return (1.0 + delta) * gamma * s * (1.0 - p); }
    double boxbreaker_bias(int s, double p) const { return (1.0 - delta) * gamma * s * p; }
    int interval_length(int s) const;
};

// Grid search over delta, gamma in {0.01, ..., 0.99}; returns the feasible
// pair with the largest gamma (lowest delta among those). Throws when the
// lattice holds no feasible pair.
IntervalParams choose_interval_params(double epsilon);

// Box-level view of strategy S': decides which box to touch next given the
// claims observed so far. Used directly by BoxBreaker and, over sub-boxes,
// by the d-Maker MinBox reduction.
class IntervalBoxPolicy {
  public:
    IntervalBoxPolicy(int n_boxes, int box_size, long total_turns, double p,
                      const IntervalParams &params);

    void advance_clock() { ++clock_; }
    void note_opponent_claim(int box); // BoxMaker claimed an element in box

    // Our next touch. `really_available(box)` says whether a claim in the
    // box is possible in the outer game. nullopt = the simulated game
    // demands a box that is really full (forfeit).
    std::optional<int> choose_box(const std::function<bool(int)> &really_available);

    bool all_touched() const { return touched_count_ == n_boxes_; }
    int touched_count() const { return touched_count_; }
    bool touched(int box) const { return sim_touched_[box] != 0; }
    int sim_free(int box) const { return sim_free_[box]; }

  private:
    void apply_pending(long upto_interval);
    std::optional<int> arbitrary_box();

    int n_boxes_;
    long interval_len_;
    long last_interval_; // index of I_r
    long clock_ = 0;     // claims observed so far = current 0-based turn
    std::vector<int> sim_free_;
    std::vector<std::uint8_t> sim_touched_;
    int touched_count_ = 0;
    std::set<std::pair<int, int>> active_; // (sim free count, box)
    std::vector<std::pair<long, int>> pending_; // (interval, box) opponent claims
    std::size_t pending_head_ = 0;
    int arbitrary_cursor_ = 0;
};

// BoxBreaker's strategy S' for Box_p, as the engine's Breaker seat.
class BoxBreakerIntervalStrategy : public Strategy {
  public:
    BoxBreakerIntervalStrategy(BoxSpec spec, double p, IntervalParams params);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

    // diagnostics: max elements claimed in any box before it was touched
    int max_pre_touch_consumption() const;
    const IntervalParams &params() const { return params_; }

  private:
    BoxSpec spec_;
    BoxPosition pos_;
    IntervalParams params_;
    IntervalBoxPolicy policy_;
    std::vector<int> scan_; // per-box lowest-free-element cursor
};

// BoxMaker's greedy strategy: keep filling an untouched box, switching when
// it is touched. Engine Maker seat.
class BoxMakerGreedyStrategy : public Strategy {
  public:
    explicit BoxMakerGreedyStrategy(BoxSpec spec);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

  private:
    BoxSpec spec_;
    BoxPosition pos_;
    int target_ = -1;
    int scan_from_ = 0;
    std::vector<int> elem_scan_;
};

// BoxBreaker baseline without the interval simulation: touch the active box
// with the fewest free elements every turn. Engine Breaker seat.
class MinimalBoxBreakerStrategy : public Strategy {
  public:
    explicit MinimalBoxBreakerStrategy(BoxSpec spec);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

  private:
    BoxSpec spec_;
    BoxPosition pos_;
    std::vector<int> scan_;
};

// Box-level d-Maker MinBox reduction: partitions each of n boxes of size s
// into d sub-boxes of size floor(s/d) and plays S' over the dn sub-boxes
// with virtual capacities. Used by the expander strategy, where boxes have
// no concrete elements.
class DMakerMinBoxPolicy {
  public:
    DMakerMinBoxPolicy(int n_boxes, int box_size, int d, double p,
                       const IntervalParams &params);

    void advance_clock() { policy_.advance_clock(); }
    // opponent claimed an element of `box`; full boxes redirect to the
    // lowest-index box with remaining capacity. Within a box the pretend
    // element lands in a busy sub-box (or the partition remainder) when one
    // has capacity: damage there is harmless, since busy sub-boxes are never
    // touched again.
    void note_opponent_claim(int box);
    // our next claim, as an original-box index; consumes one unit of
    // capacity. `really_available` may further restrict the original boxes
    // a claim can land in. nullopt = forfeit in the simulated game.
    std::optional<int> choose_box();
    std::optional<int> choose_box(const std::function<bool(int)> &really_available);

    bool done() const { return policy_.all_touched(); }
    int maker_claims_in(int box) const { return maker_claims_[box]; }
    int sub_box_count() const { return n_boxes_ * d_; }

  private:
    int n_boxes_, d_, sub_size_;
    IntervalBoxPolicy policy_;
    std::vector<int> cap_;          // per sub-box remaining capacity
    std::vector<int> box_cap_;      // per original box remaining capacity
    std::vector<int> remainder_cap_; // per original box, beyond the d·⌊s/d⌋ split
    std::vector<int> maker_claims_; // per original box
};

// d-Maker strategy for the real MinBox game (board of n*s elements),
// engine Breaker seat (d-Maker moves with probability p, like BoxBreaker).
class DMakerMinBoxStrategy : public Strategy {
  public:
    DMakerMinBoxStrategy(BoxSpec spec, int d, double p, IntervalParams params);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

    bool done() const { return policy_.all_touched(); }
    int claims_in_box(int box) const { return claims_in_box_[box]; }

  private:
    int sub_box_of(int element) const; // -1 for remainder elements
    BoxSpec spec_;
    int d_, sub_size_;
    IntervalBoxPolicy policy_;
    std::vector<int> sub_free_;      // real free elements per sub-box
    std::vector<std::uint8_t> claimed_;
    std::vector<int> claims_in_box_; // our claims per original box
};

// Win conditions for Box_p through the engine (Maker seat = BoxMaker).
WinCondition boxmaker_win_condition(const BoxSpec &spec);

} // namespace rtg

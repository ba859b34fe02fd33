// Exact values of random-turn games on small boards: memoized expectimax,
// random-subset win probability, and the greedy expected-payoff strategy.
// Values are win probabilities in [0,1]; the +/-1 payoff convention is
// 2*value - 1.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "rtg/engine.hpp"

namespace rtg {

using Rational = boost::multiprecision::cpp_rational;

// A monotone winning family over a board of N <= 20 elements, tabulated
// over all 2^N subsets.
class WinTable {
  public:
    WinTable(int n, std::vector<std::uint8_t> table);
    static WinTable from_minimal_sets(int n, const std::vector<std::uint32_t> &minimal);

    int board_size() const { return n_; }
    bool wins(std::uint32_t mask) const { return table_[mask] != 0; }
    bool is_monotone() const; // full check over all (set, superset) pairs

    // One winning set per line, space-separated element indices; the
    // monotone closure is taken.
    static WinTable from_text(int n, const std::string &text);

    WinCondition as_win_condition() const;

  private:
    int n_;
    std::vector<std::uint8_t> table_;
};

// Sum over all subsets F of p^|F| (1-p)^(N-|F|) [F wins]. Guard N <= 24.
Rational random_subset_win_probability(const WinTable &wt, const Rational &p);
double random_subset_win_probability(const WinTable &wt, double p);

// Expected payoff S(T_M, T_B): free elements filled i.i.d. with
// probability p. Exact mode guard: <= 22 free elements.
Rational expected_payoff_S(const WinTable &wt, std::uint32_t tm, std::uint32_t tb,
                           const Rational &p);
double expected_payoff_S(const WinTable &wt, std::uint32_t tm, std::uint32_t tb, double p);
double expected_payoff_S_monte_carlo(const WinTable &wt, std::uint32_t tm,
                                     std::uint32_t tb, double p, int samples,
                                     std::mt19937_64 &rng);

// Memoized expectimax over positions (T_M, T_B). Guard N <= 14.
template <typename Value> class GameValueTable {
  public:
    GameValueTable(const WinTable &wt, Value p);
    Value value(std::uint32_t tm, std::uint32_t tb);
    std::size_t stored() const;

  private:
    const WinTable &wt_;
    Value p_, q_;
    std::uint32_t full_;
    int n_;
    bool dense_;
    std::vector<Value> dense_vals_;
    std::vector<std::uint8_t> dense_set_;
    std::unordered_map<std::uint64_t, Value> sparse_;
};

extern template class GameValueTable<double>;
extern template class GameValueTable<Rational>;

template <typename Value>
Value expectimax_value(const WinTable &wt, Value p) {
    GameValueTable<Value> table(wt, p);
    return table.value(0, 0);
}

// Value of greedy-S versus greedy-S play, following the greedy recursion
// (ties resolve to the lowest index).
Rational greedy_vs_greedy_value(const WinTable &wt, const Rational &p);
double greedy_vs_greedy_value(const WinTable &wt, double p);

// Engine strategy claiming the element that maximizes (Maker) or minimizes
// (Breaker) the expected payoff S.
class GreedySStrategy : public Strategy {
  public:
    GreedySStrategy(const WinTable &wt, double p, Player side);
    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

  private:
    const WinTable &wt_;
    double p_;
    Player side_;
    std::uint32_t tm_ = 0, tb_ = 0;
};

// Test-fixture generator: random monotone families over 2^N. The first two
// entries are fixed: {full board} and {all nonempty sets}.
std::vector<WinTable> enumerate_monotone_families(int n, int count, std::mt19937_64 &rng);

} // namespace rtg

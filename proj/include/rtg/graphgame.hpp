// Strategies for random-turn games on E(K_n): Maker's expander /
// Hamiltonicity / k-connectivity strategies and Breaker's vertex-isolation
// strategy, plus baseline adversaries.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "rtg/boxgame.hpp"
#include "rtg/checkers.hpp"
#include "rtg/engine.hpp"

namespace rtg {

// Canonical bijection between unordered pairs {u,v}, u < v, and
// [0, C(n,2)).
struct EdgeIndex {
    explicit EdgeIndex(int n);

    int n;
    int edge_count() const { return n * (n - 1) / 2; }
    int index(int u, int v) const;
    std::pair<int, int> pair_of(int idx) const;

  private:
    std::vector<int> row_start_; // row_start_[u] = index of edge {u, u+1}
};

// Balanced orientation of K_n: the out-edge sets A_v partition E(K_n) with
// |A_v| in {floor((n-1)/2), ceil((n-1)/2)}.
struct TournamentAssignment {
    std::vector<int> owner;              // edge index -> owning vertex v
    std::vector<std::vector<int>> sets;  // A_v as edge-index lists
};

TournamentAssignment build_balanced_tournament(int n);

struct StrategyConfig {
    int k = 1;                 // connectivity target
    int d = 16;                // degree target (16 per unit of connectivity k)
    double beta = 0.2;         // box-size fraction, required <= 1/5 there
    double delta_expander = 0; // expander fraction; 0 = (44 k e)^-8
    double delta_theorem = 0;  // the theorem-level value; 0 = (45 k e)^-8
    double c_clique = 0.01;    // Breaker clique-size constant (1/100)
    double epsilon = 0.5;      // interval-simulation epsilon
    long stage1_budget = 0;    // 0 = default per stage (see strategy docs)
    long stage2_budget = 0;
    long stage3_budget = 0;
    int clique_target = 0;     // 0 = round(c_clique / p)
    int check_every = 1;       // Hamiltonicity check period in stage III
    std::uint64_t ham_check_budget = 200000; // backtracking node budget, 0 = exact

    double default_delta_expander(int kk) const;
};

// Maker's and Breaker's claimed subgraphs plus the free-edge index.
struct GraphView {
    explicit GraphView(int n);

    int n;
    EdgeIndex edges;
    std::vector<Cell> edge_owner;
    SimpleGraph maker, breaker;
    int free_edges;

    void apply(Player who, int edge);
    bool edge_free(int idx) const { return edge_owner[idx] == Cell::Free; }
    // uniformly random free edge; -1 when none remain
    int sample_free(std::mt19937_64 &rng) const;

  private:
    std::vector<int> free_pool_; // unordered pool of free edge indices
    std::vector<int> pool_pos_;  // edge -> index in free_pool_, -1 once claimed
};

SimpleGraph maker_graph_of(const std::vector<std::uint8_t> &maker_set, int n);

// Strategy S_exp: d-Maker MinBox simulation over the boxes F_v, translated
// to uniformly random free edges of A_v. Engine Maker seat. After the
// simulated game ends the strategy keeps claiming uniformly random free
// edges (extra edges cannot hurt).
class MakerExpanderStrategy : public Strategy {
  public:
    MakerExpanderStrategy(int n, const StrategyConfig &cfg, double p, std::uint64_t seed);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

    bool stage_complete() const { return minbox_.done(); }
    long completion_turn() const { return completion_turn_; }

  private:
    std::optional<int> random_free_edge_of(int v, const BoardState &board);
    std::optional<int> any_random_free_edge(const BoardState &board);

    int n_;
    StrategyConfig cfg_;
    TournamentAssignment tour_;
    EdgeIndex edges_;
    std::mt19937_64 rng_;
    DMakerMinBoxPolicy minbox_;
    GraphView view_;
    std::vector<std::vector<int>> free_in_av_; // free edges per A_v, unordered
    std::vector<int> edge_pos_;                // edge -> position in its A_v pool
    long clock_ = 0;
    long completion_turn_ = -1;
};

// Stage II move: claim a free edge between the two smallest Maker
// components (ties to the lowest minimum vertex).
std::optional<int> maker_connect_components_move(const GraphView &view);

enum class MakerStage : std::uint8_t { Expander, Connect, Booster, Done };

// Three-stage Hamiltonicity strategy (Theorem-style composition):
// expander, connect components, random booster claims.
class MakerHamiltonicityStrategy : public Strategy {
  public:
    MakerHamiltonicityStrategy(int n, const StrategyConfig &cfg, double p,
                               std::uint64_t seed);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

    MakerStage stage() const { return stage_; }
    bool hamiltonian_detected() const { return ham_found_; }
    long stage_turns(MakerStage s) const;

  private:
    int n_;
    StrategyConfig cfg_;
    double p_;
    std::mt19937_64 rng_;
    MakerExpanderStrategy expander_;
    GraphView view_;
    MakerStage stage_ = MakerStage::Expander;
    long maker_turns_ = 0;
    long stage_entry_turns_[4] = {0, 0, 0, 0};
    long budgets_[3];
    int moves_since_check_ = 0;
    bool ham_found_ = false;
};

// Stage I = S_exp with parameter k; Stage II = random-edge claims for the
// configured budget; the final graph is judged by the k-connectivity
// checker.
class MakerKConnectivityStrategy : public Strategy {
  public:
    MakerKConnectivityStrategy(int n, const StrategyConfig &cfg, double p,
                               std::uint64_t seed);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

  private:
    int n_;
    StrategyConfig cfg_;
    std::mt19937_64 rng_;
    MakerExpanderStrategy expander_;
    GraphView view_;
    long maker_turns_ = 0;
    long stage2_budget_;
};

// Breaker's isolation strategy: Stage I builds a Breaker-clique of
// Maker-isolated vertices, Stage II plays greedy BoxMaker over the stars
// F_v = {vu : u outside C}. Engine Breaker seat.
class BreakerIsolationStrategy : public Strategy {
  public:
    BreakerIsolationStrategy(int n, const StrategyConfig &cfg, double p);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

    int clique_size() const { return static_cast<int>(clique_.size()); }
    bool in_stage_two() const { return stage_two_; }

  private:
    std::optional<int> stage_one_move(const BoardState &board);
    std::optional<int> stage_two_move(const BoardState &board);
    void enter_stage_two();

    bool eligible(int x) const;
    int missing_edges_to_clique(int x) const;
    int free_incident(int v) const;
    void absorb_candidates();

    int n_;
    StrategyConfig cfg_;
    int clique_target_;
    long stage1_budget_;
    EdgeIndex edges_;
    GraphView view_;
    long stage1_moves_ = 0;
    std::vector<int> clique_;
    std::vector<std::uint8_t> in_clique_;
    bool stage_two_ = false;
    int star_current_ = -1; // clique vertex whose star is being filled
};

// Baseline adversary: claims a free edge at the vertex of minimum
// Maker-degree (ties to the most free incident edges, then lowest index).
class StarAttackBreaker : public Strategy {
  public:
    explicit StarAttackBreaker(int n);

    void on_claim(Player who, int element) override;
    std::optional<int> next_move(const BoardState &board) override;

  private:
    int n_;
    EdgeIndex edges_;
    std::vector<int> maker_deg_;
    std::vector<int> free_incident_;
    std::vector<Cell> edge_owner_;
};

// Win conditions on E(K_n) boards.
WinCondition min_degree_win_condition(int n, int target);
WinCondition hamiltonicity_win_condition(int n, std::uint64_t ham_budget = 0);
WinCondition k_connectivity_win_condition(int n, int k);

} // namespace rtg

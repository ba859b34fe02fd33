// Reproducible Monte Carlo experiments: strategy-vs-strategy win rates,
// G(n,p) baselines and threshold sweeps with CSV/JSON output.
//
// Determinism contract: every trial derives its own seed from the base seed
// and the trial index, so results are byte-identical for any worker count.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rtg/checkers.hpp"
#include "rtg/graphgame.hpp"

namespace rtg {

// SplitMix64 finalizer applied to base_seed XOR (trial_index * golden-ratio
// odd constant 0x9E3779B97F4A7C15). Bit-exact across platforms.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial_index);

// Wilson score interval for a binomial proportion; well-behaved at 0 and 1.
std::pair<double, double> wilson_interval(long wins, long trials, double z);

struct ExperimentConfig {
    std::string game = "mindeg";   // ham | kconn | isolate | mindeg | box
    std::vector<int> n_values;
    std::vector<double> p_values;
    long trials = 100;
    std::string maker_id = "paper";   // paper | random | mirror
    std::string breaker_id = "random"; // paper | random | star | mirror | minimal
    StrategyConfig strategy;
    int box_size = 0;       // uniform box size, game == "box" only
    int mindeg_target = 1;  // degree target for mindeg/isolate scoring
    std::uint64_t ham_budget = 200000; // node budget of the end-of-game checker
    std::uint64_t base_seed = 0;
    std::string out_path = "experiment.csv";

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string &text);
};

struct CellResult {
    int n = 0;
    double p = 0;
    long trials = 0;
    long wins = 0; // engine-Maker wins
    long forfeits_maker = 0;
    long forfeits_breaker = 0;
    double mean_turns = 0;
    double lo95 = 0, hi95 = 0;
    bool failed = false;
    std::string error;

    double freq() const { return trials > 0 ? static_cast<double>(wins) / trials : 0.0; }
};

// Board size, engine coin probability and win condition of one game of the
// configured kind. For box games the engine Maker seat is BoxMaker and the
// coin probability is 1-p.
struct GameSetup {
    int n_elements = 0;
    double q = 0.5;
    WinCondition wc;
};

GameSetup make_game_setup(const ExperimentConfig &config, int n, double p);
std::unique_ptr<Strategy> make_maker_strategy(const ExperimentConfig &config, int n,
                                              double p, std::uint64_t seed);
std::unique_ptr<Strategy> make_breaker_strategy(const ExperimentConfig &config, int n,
                                                double p, std::uint64_t seed);

// Runs `trials` independent games for one (n, p) cell. Strategy
// construction failure marks the cell failed instead of aborting the sweep.
CellResult run_cell(const ExperimentConfig &config, int n, double p, int workers = 1);

struct GnpEstimate {
    long wins = 0;
    long trials = 0;
    double freq = 0;
    double lo95 = 0, hi95 = 0;
};

// Samples G(n,p) and applies a checker. property: "mindeg" (>= target),
// "ham", "kconn" (k = target). ham_budget 0 = exact search.
GnpEstimate gnp_property_probability(int n, double p, const std::string &property,
                                     int target, long trials, std::uint64_t base_seed,
                                     std::uint64_t ham_budget = 0);

// The full grid as CSV text (header even when the grid is empty).
std::string cells_to_csv(const ExperimentConfig &config,
                         const std::vector<CellResult> &cells);

std::vector<CellResult> run_sweep(const ExperimentConfig &config, int workers = 1);

// Runs the sweep and writes <out>.csv text plus a JSON summary at
// <out> + ".json". RTG_OUT_DIR prefixes relative output paths. Returns the
// CSV path.
std::string sweep_and_emit(const ExperimentConfig &config, int workers = 1);

// Parses CSV produced by cells_to_csv back into cell results (used by the
// round-trip checks).
std::vector<CellResult> parse_cells_csv(const std::string &text);

} // namespace rtg

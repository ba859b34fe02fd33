// Command-line front end: box / play / check / oracle / experiment.
#include <bit>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtg/boxgame.hpp"
#include "rtg/checkers.hpp"
#include "rtg/graphgame.hpp"
#include "rtg/harness.hpp"
#include "rtg/oracle.hpp"

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit_cells(const rtg::ExperimentConfig &cfg,
                const std::vector<rtg::CellResult> &cells, const std::string &out) {
    std::string csv = rtg::cells_to_csv(cfg, cells);
    if (out.empty())
        std::cout << csv;
    else
        write_file(out, csv);
}

int run_box(int n, int uniform_size, const std::vector<int> &sizes, double p,
            const std::string &side, double epsilon, long trials,
            std::uint64_t seed, const std::string &out) {
    if (!sizes.empty())
        throw std::runtime_error("non-uniform --sizes runs use --uniform-size instead; "
                                 "box experiments are uniform");
    rtg::ExperimentConfig cfg;
    cfg.game = "box";
    cfg.n_values = {n};
    cfg.p_values = {p};
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.box_size = uniform_size;
    cfg.strategy.epsilon = epsilon;
    std::vector<rtg::CellResult> cells;
    if (side == "boxbreaker" || side == "both") {
        cfg.maker_id = "paper"; // greedy BoxMaker
        cfg.breaker_id = "paper"; // interval-simulation BoxBreaker
        cells.push_back(rtg::run_cell(cfg, n, p));
    }
    if (side == "boxmaker" || side == "both") {
        cfg.maker_id = "paper";
        cfg.breaker_id = "minimal";
        cells.push_back(rtg::run_cell(cfg, n, p));
    }
    emit_cells(cfg, cells, out);
    return 0;
}

int run_play(rtg::ExperimentConfig cfg, int n, double p, long trials,
             std::uint64_t seed, const std::string &out,
             const std::string &dump_prefix) {
    cfg.n_values = {n};
    cfg.p_values = {p};
    cfg.trials = trials;
    cfg.base_seed = seed;
    std::vector<rtg::CellResult> cells{rtg::run_cell(cfg, n, p)};
    emit_cells(cfg, cells, out);
    if (!dump_prefix.empty()) {
        // replay trial 0 and dump the final graphs
        std::uint64_t ts = rtg::derive_trial_seed(
            rtg::derive_trial_seed(rtg::derive_trial_seed(cfg.base_seed, n),
                                   std::bit_cast<std::uint64_t>(p)),
            0);
        auto setup = rtg::make_game_setup(cfg, n, p);
        auto maker = rtg::make_maker_strategy(cfg, n, p, ts ^ 0x4d616b6572ULL);
        auto breaker = rtg::make_breaker_strategy(cfg, n, p, ts ^ 0x427265616bULL);
        std::mt19937_64 rng(ts);
        rtg::PlayOptions opts;
        opts.seed = ts;
        auto rec = rtg::play_game(setup.n_elements, setup.wc, *maker, *breaker,
                                  setup.q, rng, opts);
        rtg::GraphView view(n);
        for (auto &[who, e] : rec.moves)
            view.apply(who, e);
        write_file(dump_prefix + ".maker", view.maker.to_edge_list());
        write_file(dump_prefix + ".breaker", view.breaker.to_edge_list());
    }
    return 0;
}

int run_check(const std::string &path, const std::string &property, int R, double c,
              int k, const std::string &mode, int samples, std::uint64_t seed) {
    rtg::SimpleGraph g = rtg::SimpleGraph::from_edge_list(read_file(path));
    nlohmann::json j;
    j["n"] = g.n;
    j["m"] = g.m;
    if (property == "ham") {
        auto res = rtg::hamiltonicity_search(g);
        j["hamiltonian"] = res.verdict == rtg::HamiltonicityResult::Verdict::Yes;
        if (!res.cycle.empty())
            j["cycle"] = res.cycle;
    } else if (property == "kconn") {
        auto res = rtg::is_k_connected(g, k);
        j["k"] = k;
        j["k_connected"] = res.connected_k;
        if (res.separator)
            j["separator"] = *res.separator;
    } else if (property == "expander") {
        std::mt19937_64 rng(seed);
        auto res = rtg::is_expander(
            g, R, c, mode == "sampled" ? rtg::CheckMode::Sampled : rtg::CheckMode::Exact,
            samples, rng);
        j["R"] = R;
        j["c"] = c;
        j["passes"] = res.passes;
        j["conclusive"] = res.conclusive;
        if (res.witness)
            j["witness"] = *res.witness;
    } else if (property == "boosters") {
        j["boosters"] = rtg::count_boosters(g);
    } else if (property == "components") {
        auto comps = rtg::connected_components(g);
        std::vector<std::size_t> sizes;
        for (auto &comp : comps)
            sizes.push_back(comp.size());
        j["components"] = sizes;
    } else {
        throw std::runtime_error("unknown property: " + property);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_oracle(int board_size, const std::string &family, const std::string &family_file,
               int count, const std::vector<double> &ps, const std::string &arithmetic,
               std::uint64_t seed, const std::string &out) {
    std::vector<rtg::WinTable> tables;
    if (family == "file") {
        tables.push_back(rtg::WinTable::from_text(board_size, read_file(family_file)));
    } else {
        std::mt19937_64 rng(seed);
        tables = rtg::enumerate_monotone_families(board_size, count, rng);
    }
    nlohmann::json fams = nlohmann::json::array();
    for (std::size_t i = 0; i < tables.size(); ++i) {
        nlohmann::json rows = nlohmann::json::array();
        for (double p : ps) {
            nlohmann::json r;
            r["p"] = p;
            if (arithmetic == "rational") {
                rtg::Rational rp(p); // exact binary value of the double
                rtg::Rational ev = rtg::expectimax_value<rtg::Rational>(tables[i], rp);
                rtg::Rational sp = rtg::random_subset_win_probability(tables[i], rp);
                r["expectimax"] = ev.convert_to<double>();
                r["subset_probability"] = sp.convert_to<double>();
                r["exact_equal"] = (ev == sp);
            } else {
                r["expectimax"] = rtg::expectimax_value<double>(tables[i], p);
                r["subset_probability"] =
                    rtg::random_subset_win_probability(tables[i], p);
            }
            rows.push_back(r);
        }
        nlohmann::json f;
        f["index"] = i;
        f["values"] = rows;
        fams.push_back(f);
    }
    nlohmann::json j;
    j["board_size"] = board_size;
    j["arithmetic"] = arithmetic;
    j["families"] = fams;
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_file(out, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"random-turn Maker-Breaker game toolkit"};
    app.require_subcommand(1);

    // box
    auto *box = app.add_subcommand("box", "random-turn Box game experiments");
    int box_n = 100, box_size = 0;
    std::vector<int> box_sizes;
    double box_p = 0.2, box_eps = 0.5;
    std::string box_side = "both", box_out;
    long box_trials = 100;
    std::uint64_t box_seed = 0;
    box->add_option("--n", box_n, "number of boxes");
    box->add_option("--uniform-size", box_size, "uniform box size")->required();
    box->add_option("--sizes", box_sizes, "explicit box sizes (unsupported, uniform only)");
    box->add_option("--p", box_p, "BoxBreaker move probability");
    box->add_option("--side", box_side, "boxmaker | boxbreaker | both")
        ->check(CLI::IsMember({"boxmaker", "boxbreaker", "both"}));
    box->add_option("--epsilon", box_eps, "interval-simulation epsilon");
    box->add_option("--trials", box_trials);
    box->add_option("--seed", box_seed);
    box->add_option("--out", box_out, "CSV output path (stdout when omitted)");

    // play
    auto *play = app.add_subcommand("play", "graph game experiments");
    rtg::ExperimentConfig pc;
    int play_n = 60;
    double play_p = 0.5;
    long play_trials = 50;
    std::uint64_t play_seed = 0;
    std::string play_out, dump_prefix;
    play->add_option("--game", pc.game, "ham | kconn | isolate | mindeg")
        ->check(CLI::IsMember({"ham", "kconn", "isolate", "mindeg"}));
    play->add_option("--n", play_n);
    play->add_option("--p", play_p, "Maker move probability");
    play->add_option("--k", pc.strategy.k);
    play->add_option("--d", pc.strategy.d);
    play->add_option("--beta", pc.strategy.beta);
    play->add_option("--clique-const", pc.strategy.c_clique);
    play->add_option("--clique-target", pc.strategy.clique_target);
    play->add_option("--budget-stage1", pc.strategy.stage1_budget);
    play->add_option("--budget-stage2", pc.strategy.stage2_budget);
    play->add_option("--budget-stage3", pc.strategy.stage3_budget);
    play->add_option("--mindeg-target", pc.mindeg_target);
    play->add_option("--maker", pc.maker_id, "paper | random | mirror");
    play->add_option("--breaker", pc.breaker_id, "paper | random | star | mirror");
    play->add_option("--trials", play_trials);
    play->add_option("--seed", play_seed);
    play->add_option("--out", play_out, "CSV output path (stdout when omitted)");
    play->add_option("--dump-graphs", dump_prefix,
                     "write <prefix>.maker/.breaker edge lists of trial 0");

    // check
    auto *check = app.add_subcommand("check", "exact property checks on edge lists");
    std::string check_file, check_prop = "ham", check_mode = "exact";
    int check_R = 2, check_k = 1, check_samples = 1000;
    double check_c = 2.0;
    std::uint64_t check_seed = 0;
    check->add_option("file", check_file, "edge-list file (one 'u v' per line)")
        ->required();
    check->add_option("--property", check_prop,
                      "ham | kconn | expander | boosters | components")
        ->check(CLI::IsMember({"ham", "kconn", "expander", "boosters", "components"}));
    check->add_option("--R", check_R);
    check->add_option("--c", check_c);
    check->add_option("--k", check_k);
    check->add_option("--mode", check_mode)->check(CLI::IsMember({"exact", "sampled"}));
    check->add_option("--samples", check_samples);
    check->add_option("--seed", check_seed);

    // oracle
    auto *oracle = app.add_subcommand("oracle", "exact small-board game values");
    int ob_size = 6, ob_count = 10;
    std::string ob_family = "random-monotone", ob_file, ob_arith = "rational", ob_out;
    std::vector<double> ob_ps{0.5};
    std::uint64_t ob_seed = 0;
    oracle->add_option("--board-size", ob_size)->required();
    oracle->add_option("--family", ob_family, "file | random-monotone")
        ->check(CLI::IsMember({"file", "random-monotone"}));
    oracle->add_option("--family-file", ob_file, "winning sets, one per line");
    oracle->add_option("--count", ob_count, "number of random families");
    oracle->add_option("--p", ob_ps, "list of coin probabilities");
    oracle->add_option("--arithmetic", ob_arith)
        ->check(CLI::IsMember({"rational", "float"}));
    oracle->add_option("--seed", ob_seed);
    oracle->add_option("--out", ob_out, "JSON output path (stdout when omitted)");

    // experiment
    auto *exp = app.add_subcommand("experiment", "config-driven sweep");
    std::string exp_config;
    int exp_workers = 1;
    exp->add_option("--config", exp_config, "JSON config file")->required();
    exp->add_option("--workers", exp_workers, "worker threads (does not affect results)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (box->parsed())
            return run_box(box_n, box_size, box_sizes, box_p, box_side, box_eps,
                           box_trials, box_seed, box_out);
        if (play->parsed())
            return run_play(pc, play_n, play_p, play_trials, play_seed, play_out,
                            dump_prefix);
        if (check->parsed())
            return run_check(check_file, check_prop, check_R, check_c, check_k,
                             check_mode, check_samples, check_seed);
        if (oracle->parsed())
            return run_oracle(ob_size, ob_family, ob_file, ob_count, ob_ps, ob_arith,
                              ob_seed, ob_out);
        if (exp->parsed()) {
            auto cfg = rtg::ExperimentConfig::from_json(read_file(exp_config));
            std::string path = rtg::sweep_and_emit(cfg, exp_workers);
            std::cout << "wrote " << path << " and " << path << ".json\n";
            return 0;
        }
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

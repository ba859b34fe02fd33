#include "rtg/harness.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rtg/boxgame.hpp"
#include "rtg/engine.hpp"

namespace rtg {

std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    std::uint64_t z = base_seed ^ (trial_index * 0x9E3779B97F4A7C15ULL);
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::pair<double, double> wilson_interval(long wins, long trials, double z) {
    if (trials <= 0)
        return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(wins) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    double lo = std::max(0.0, center - half);
    double hi = std::min(1.0, center + half);
    return {lo, hi};
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["game"] = game;
    j["n_values"] = n_values;
    j["p_values"] = p_values;
    j["trials"] = trials;
    j["maker"] = maker_id;
    j["breaker"] = breaker_id;
    j["box_size"] = box_size;
    j["mindeg_target"] = mindeg_target;
    j["ham_budget"] = ham_budget;
    j["base_seed"] = base_seed;
    j["out"] = out_path;
    nlohmann::json s;
    s["k"] = strategy.k;
    s["d"] = strategy.d;
    s["beta"] = strategy.beta;
    s["delta_expander"] = strategy.delta_expander;
    s["delta_theorem"] = strategy.delta_theorem;
    s["c_clique"] = strategy.c_clique;
    s["epsilon"] = strategy.epsilon;
    s["stage1_budget"] = strategy.stage1_budget;
    s["stage2_budget"] = strategy.stage2_budget;
    s["stage3_budget"] = strategy.stage3_budget;
    s["clique_target"] = strategy.clique_target;
    s["check_every"] = strategy.check_every;
    s["ham_check_budget"] = strategy.ham_check_budget;
    j["strategy"] = s;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig c;
    c.game = j.value("game", c.game);
    c.n_values = j.value("n_values", c.n_values);
    c.p_values = j.value("p_values", c.p_values);
    c.trials = j.value("trials", c.trials);
    c.maker_id = j.value("maker", c.maker_id);
    c.breaker_id = j.value("breaker", c.breaker_id);
    c.box_size = j.value("box_size", c.box_size);
    c.mindeg_target = j.value("mindeg_target", c.mindeg_target);
    c.ham_budget = j.value("ham_budget", c.ham_budget);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.out_path = j.value("out", c.out_path);
    if (j.contains("strategy")) {
        const auto &s = j["strategy"];
        c.strategy.k = s.value("k", c.strategy.k);
        c.strategy.d = s.value("d", c.strategy.d);
        c.strategy.beta = s.value("beta", c.strategy.beta);
        c.strategy.delta_expander = s.value("delta_expander", c.strategy.delta_expander);
        c.strategy.delta_theorem = s.value("delta_theorem", c.strategy.delta_theorem);
        c.strategy.c_clique = s.value("c_clique", c.strategy.c_clique);
        c.strategy.epsilon = s.value("epsilon", c.strategy.epsilon);
        c.strategy.stage1_budget = s.value("stage1_budget", c.strategy.stage1_budget);
        c.strategy.stage2_budget = s.value("stage2_budget", c.strategy.stage2_budget);
        c.strategy.stage3_budget = s.value("stage3_budget", c.strategy.stage3_budget);
        c.strategy.clique_target = s.value("clique_target", c.strategy.clique_target);
        c.strategy.check_every = s.value("check_every", c.strategy.check_every);
        c.strategy.ham_check_budget =
            s.value("ham_check_budget", c.strategy.ham_check_budget);
    }
    return c;
}

GameSetup make_game_setup(const ExperimentConfig &cfg, int n, double p) {
    GameSetup s;
    if (cfg.game == "box") {
        if (cfg.box_size < 1)
            throw std::invalid_argument("box game needs box_size >= 1");
        BoxSpec spec = BoxSpec::uniform(n, cfg.box_size);
        s.n_elements = spec.total_elements();
        s.q = 1.0 - p; // engine Maker is BoxMaker, moving with probability 1-p
        s.wc = boxmaker_win_condition(spec);
    } else if (cfg.game == "ham") {
        s.n_elements = n * (n - 1) / 2;
        s.q = p;
        s.wc = hamiltonicity_win_condition(n, cfg.ham_budget);
    } else if (cfg.game == "kconn") {
        s.n_elements = n * (n - 1) / 2;
        s.q = p;
        s.wc = k_connectivity_win_condition(n, cfg.strategy.k);
    } else if (cfg.game == "mindeg" || cfg.game == "isolate") {
        s.n_elements = n * (n - 1) / 2;
        s.q = p;
        s.wc = min_degree_win_condition(n, cfg.mindeg_target);
    } else {
        throw std::invalid_argument("unknown game id: " + cfg.game);
    }
    return s;
}

std::unique_ptr<Strategy> make_maker_strategy(const ExperimentConfig &cfg, int n,
                                              double p, std::uint64_t seed) {
    if (cfg.maker_id == "random")
        return std::make_unique<UniformRandomStrategy>(seed);
    if (cfg.maker_id == "mirror")
        return mirror_strategy(std::make_unique<LowestIndexStrategy>());
    if (cfg.maker_id != "paper")
        throw std::invalid_argument("unknown maker id: " + cfg.maker_id);
    if (cfg.game == "box")
        return std::make_unique<BoxMakerGreedyStrategy>(BoxSpec::uniform(n, cfg.box_size));
    if (cfg.game == "ham")
        return std::make_unique<MakerHamiltonicityStrategy>(n, cfg.strategy, p, seed);
    if (cfg.game == "kconn")
        return std::make_unique<MakerKConnectivityStrategy>(n, cfg.strategy, p, seed);
    return std::make_unique<MakerExpanderStrategy>(n, cfg.strategy, p, seed);
}

std::unique_ptr<Strategy> make_breaker_strategy(const ExperimentConfig &cfg, int n,
                                                double p, std::uint64_t seed) {
    if (cfg.breaker_id == "random")
        return std::make_unique<UniformRandomStrategy>(seed);
    if (cfg.breaker_id == "mirror")
        return mirror_strategy(std::make_unique<LowestIndexStrategy>());
    if (cfg.game == "box") {
        BoxSpec spec = BoxSpec::uniform(n, cfg.box_size);
        if (cfg.breaker_id == "paper")
            return std::make_unique<BoxBreakerIntervalStrategy>(
                spec, p, choose_interval_params(cfg.strategy.epsilon));
        if (cfg.breaker_id == "minimal")
            return std::make_unique<MinimalBoxBreakerStrategy>(spec);
        throw std::invalid_argument("unknown breaker id: " + cfg.breaker_id);
    }
    if (cfg.breaker_id == "paper")
        return std::make_unique<BreakerIsolationStrategy>(n, cfg.strategy, p);
    if (cfg.breaker_id == "star")
        return std::make_unique<StarAttackBreaker>(n);
    throw std::invalid_argument("unknown breaker id: " + cfg.breaker_id);
}

namespace {

struct TrialOut {
    bool maker_win = false;
    int forfeit = -1; // 0 maker, 1 breaker
    long turns = 0;
    bool failed = false;
    std::string error;
};

std::uint64_t cell_seed(const ExperimentConfig &cfg, int n, double p) {
    std::uint64_t s = derive_trial_seed(cfg.base_seed, static_cast<std::uint64_t>(n));
    return derive_trial_seed(s, std::bit_cast<std::uint64_t>(p));
}

} // namespace

CellResult run_cell(const ExperimentConfig &config, int n, double p, int workers) {
    CellResult out;
    out.n = n;
    out.p = p;
    out.trials = config.trials;
    if (config.trials < 1) {
        out.failed = true;
        out.error = "trials must be >= 1";
        return out;
    }
    const std::uint64_t base = cell_seed(config, n, p);
    std::vector<TrialOut> results(config.trials);
    std::atomic<long> next{0};
    auto work = [&]() {
        for (;;) {
            long t = next.fetch_add(1);
            if (t >= config.trials)
                return;
            TrialOut &r = results[t];
            try {
                const std::uint64_t seed = derive_trial_seed(base, t);
                GameSetup setup = make_game_setup(config, n, p);
                auto maker = make_maker_strategy(config, n, p, seed ^ 0x4d616b6572ULL);
                auto breaker =
                    make_breaker_strategy(config, n, p, seed ^ 0x427265616bULL);
                std::mt19937_64 rng(seed);
                PlayOptions opts;
                opts.seed = seed;
                GameRecord rec = play_game(setup.n_elements, setup.wc, *maker,
                                           *breaker, setup.q, rng, opts);
                r.maker_win = rec.outcome == Outcome::MakerWin;
                r.turns = static_cast<long>(rec.moves.size());
                if (rec.forfeit)
                    r.forfeit = rec.forfeit->who == Player::Maker ? 0 : 1;
            } catch (const std::exception &ex) {
                r.failed = true;
                r.error = ex.what();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &th : pool)
            th.join();
    }
    long turns_total = 0;
    for (const TrialOut &r : results) {
        if (r.failed) {
            out.failed = true;
            if (out.error.empty())
                out.error = r.error;
            continue;
        }
        out.wins += r.maker_win ? 1 : 0;
        out.forfeits_maker += r.forfeit == 0 ? 1 : 0;
        out.forfeits_breaker += r.forfeit == 1 ? 1 : 0;
        turns_total += r.turns;
    }
    out.mean_turns = static_cast<double>(turns_total) / config.trials;
    auto [lo, hi] = wilson_interval(out.wins, out.trials, 1.96);
    out.lo95 = lo;
    out.hi95 = hi;
    return out;
}

GnpEstimate gnp_property_probability(int n, double p, const std::string &property,
                                     int target, long trials, std::uint64_t base_seed,
                                     std::uint64_t ham_budget) {
    if (trials < 1)
        throw std::invalid_argument("gnp_property_probability: trials >= 1");
    GnpEstimate est;
    est.trials = trials;
    for (long t = 0; t < trials; ++t) {
        std::mt19937_64 rng(derive_trial_seed(base_seed, t));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        SimpleGraph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (unif(rng) < p)
                    g.add_edge(u, v);
        bool ok;
        if (property == "mindeg") {
            ok = min_degree(g) >= target;
        } else if (property == "ham") {
            ok = hamiltonicity_search(g, ham_budget).verdict ==
                 HamiltonicityResult::Verdict::Yes;
        } else if (property == "kconn") {
            ok = is_k_connected(g, target).connected_k;
        } else {
            throw std::invalid_argument("unknown property: " + property);
        }
        est.wins += ok ? 1 : 0;
    }
    est.freq = static_cast<double>(est.wins) / trials;
    auto [lo, hi] = wilson_interval(est.wins, est.trials, 1.96);
    est.lo95 = lo;
    est.hi95 = hi;
    return est;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string cells_to_csv(const ExperimentConfig &config,
                         const std::vector<CellResult> &cells) {
    std::string out =
        "game,n,p,trials,wins,freq,lo95,hi95,forfeits_maker,forfeits_breaker,mean_turns\n";
    for (const CellResult &c : cells) {
        out += config.game;
        out += ',' + std::to_string(c.n);
        out += ',' + fmt_double(c.p);
        out += ',' + std::to_string(c.trials);
        out += ',' + std::to_string(c.wins);
        out += ',' + fmt_double(c.freq());
        out += ',' + fmt_double(c.lo95);
        out += ',' + fmt_double(c.hi95);
        out += ',' + std::to_string(c.forfeits_maker);
        out += ',' + std::to_string(c.forfeits_breaker);
        out += ',' + fmt_double(c.mean_turns);
        out += '\n';
    }
    return out;
}

std::vector<CellResult> parse_cells_csv(const std::string &text) {
    std::vector<CellResult> cells;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ','))
            fields.push_back(f);
        if (fields.size() != 11)
            throw std::invalid_argument("malformed CSV row: " + line);
        CellResult c;
        c.n = std::stoi(fields[1]);
        c.p = std::strtod(fields[2].c_str(), nullptr);
        c.trials = std::stol(fields[3]);
        c.wins = std::stol(fields[4]);
        c.lo95 = std::strtod(fields[6].c_str(), nullptr);
        c.hi95 = std::strtod(fields[7].c_str(), nullptr);
        c.forfeits_maker = std::stol(fields[8]);
        c.forfeits_breaker = std::stol(fields[9]);
        c.mean_turns = std::strtod(fields[10].c_str(), nullptr);
        cells.push_back(c);
    }
    return cells;
}

std::vector<CellResult> run_sweep(const ExperimentConfig &config, int workers) {
    std::vector<CellResult> cells;
    for (int n : config.n_values)
        for (double p : config.p_values)
            cells.push_back(run_cell(config, n, p, workers));
    return cells;
}

std::string sweep_and_emit(const ExperimentConfig &config, int workers) {
    std::vector<CellResult> cells = run_sweep(config, workers);
    std::string path = config.out_path;
    const char *dir = std::getenv("RTG_OUT_DIR");
    if (dir && *dir && !path.empty() && path.front() != '/')
        path = std::string(dir) + "/" + path;

    std::ofstream csv(path);
    if (!csv)
        throw std::runtime_error("cannot open output file: " + path);
    csv << cells_to_csv(config, cells);
    csv.close();

    nlohmann::json j;
    j["config"] = nlohmann::json::parse(config.to_json());
    nlohmann::json rows = nlohmann::json::array();
    for (const CellResult &c : cells) {
        nlohmann::json r;
        r["n"] = c.n;
        r["p"] = c.p;
        r["trials"] = c.trials;
        r["wins"] = c.wins;
        r["freq"] = c.freq();
        r["lo95"] = c.lo95;
        r["hi95"] = c.hi95;
        r["forfeits_maker"] = c.forfeits_maker;
        r["forfeits_breaker"] = c.forfeits_breaker;
        r["mean_turns"] = c.mean_turns;
        r["failed"] = c.failed;
        if (c.failed)
            r["error"] = c.error;
        rows.push_back(r);
    }
    j["cells"] = rows;
    std::ofstream js(path + ".json");
    js << j.dump(2) << "\n";
    return path;
}

} // namespace rtg

#include "rtg/graphgame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtg {

EdgeIndex::EdgeIndex(int n_) : n(n_) {
    if (n < 2)
        throw std::invalid_argument("EdgeIndex: n >= 2 required");
    row_start_.resize(n);
    int acc = 0;
    for (int u = 0; u < n; ++u) {
        row_start_[u] = acc;
        acc += n - 1 - u;
    }
}

int EdgeIndex::index(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("EdgeIndex: invalid pair");
    if (u > v)
        std::swap(u, v);
    return row_start_[u] + (v - u - 1);
}

std::pair<int, int> EdgeIndex::pair_of(int idx) const {
    if (idx < 0 || idx >= edge_count())
        throw std::invalid_argument("EdgeIndex: index out of range");
    int u = 0;
    while (u + 1 < n && row_start_[u + 1] <= idx)
        ++u;
    return {u, u + 1 + (idx - row_start_[u])};
}

TournamentAssignment build_balanced_tournament(int n) {
    EdgeIndex ei(n);
    TournamentAssignment t;
    t.owner.assign(ei.edge_count(), -1);
    t.sets.resize(n);
    auto assign = [&](int v, int u) {
        int e = ei.index(v, u);
        t.owner[e] = v;
        t.sets[v].push_back(e);
    };
    if (n % 2 == 1) {
        // circulant: v beats v+1, ..., v+(n-1)/2 (mod n)
        for (int v = 0; v < n; ++v)
            for (int j = 1; j <= (n - 1) / 2; ++j)
                assign(v, (v + j) % n);
    } else {
        // circulant on the odd set 0..n-2; the last vertex beats the lowest
        // ceil((n-1)/2) of them and loses to the rest
        int m = n - 1;
        for (int v = 0; v < m; ++v)
            for (int j = 1; j <= (m - 1) / 2; ++j)
                assign(v, (v + j) % m);
        int h = n / 2; // = ceil((n-1)/2)
        for (int u = 0; u < h; ++u)
            assign(n - 1, u);
        for (int u = h; u < n - 1; ++u)
            assign(u, n - 1);
    }
    return t;
}

double StrategyConfig::default_delta_expander(int kk) const {
    return std::pow(44.0 * kk * std::exp(1.0), -8.0);
}

GraphView::GraphView(int n_) : n(n_), edges(n_), maker(n_), breaker(n_) {
    free_edges = edges.edge_count();
    edge_owner.assign(free_edges, Cell::Free);
    free_pool_.resize(free_edges);
    pool_pos_.resize(free_edges);
    for (int e = 0; e < free_edges; ++e) {
        free_pool_[e] = e;
        pool_pos_[e] = e;
    }
}

void GraphView::apply(Player who, int edge) {
    if (edge_owner[edge] != Cell::Free)
        throw std::invalid_argument("GraphView: edge already claimed");
    edge_owner[edge] = (who == Player::Maker) ? Cell::Maker : Cell::Breaker;
    auto [u, v] = edges.pair_of(edge);
    (who == Player::Maker ? maker : breaker).add_edge(u, v);
    --free_edges;
    int pos = pool_pos_[edge];
    int last = free_pool_.back();
    free_pool_[pos] = last;
    pool_pos_[last] = pos;
    free_pool_.pop_back();
    pool_pos_[edge] = -1;
}

int GraphView::sample_free(std::mt19937_64 &rng) const {
    if (free_pool_.empty())
        return -1;
    std::uniform_int_distribution<std::size_t> d(0, free_pool_.size() - 1);
    return free_pool_[d(rng)];
}

SimpleGraph maker_graph_of(const std::vector<std::uint8_t> &maker_set, int n) {
    EdgeIndex ei(n);
    SimpleGraph g(n);
    for (int e = 0; e < ei.edge_count(); ++e)
        if (maker_set[e]) {
            auto [u, v] = ei.pair_of(e);
            g.add_edge(u, v);
        }
    return g;
}

namespace {

int expander_box_size(int n, const StrategyConfig &cfg) {
    return std::max(1, static_cast<int>(std::floor(cfg.beta * n)));
}

int expander_sub_count(int n, const StrategyConfig &cfg) {
    // the degree target cannot exceed the box size at small n
    return std::max(1, std::min(cfg.d, expander_box_size(n, cfg)));
}

} // namespace

MakerExpanderStrategy::MakerExpanderStrategy(int n, const StrategyConfig &cfg, double p,
                                             std::uint64_t seed)
    : n_(n), cfg_(cfg), tour_(build_balanced_tournament(n)), edges_(n), rng_(seed),
      minbox_(n, expander_box_size(n, cfg), expander_sub_count(n, cfg), p,
              choose_interval_params(cfg.epsilon)),
      view_(n), free_in_av_(tour_.sets), edge_pos_(edges_.edge_count(), -1) {
    for (int v = 0; v < n_; ++v)
        for (std::size_t i = 0; i < free_in_av_[v].size(); ++i)
            edge_pos_[free_in_av_[v][i]] = static_cast<int>(i);
}

void MakerExpanderStrategy::on_claim(Player who, int element) {
    view_.apply(who, element);
    int v = tour_.owner[element];
    auto &pool = free_in_av_[v];
    int pos = edge_pos_[element];
    int last = pool.back();
    pool[pos] = last;
    edge_pos_[last] = pos;
    pool.pop_back();
    edge_pos_[element] = -1;
    if (!minbox_.done()) {
        if (who == Player::Breaker)
            minbox_.note_opponent_claim(v);
        minbox_.advance_clock();
    }
    ++clock_;
    if (minbox_.done() && completion_turn_ < 0)
        completion_turn_ = clock_;
}

std::optional<int> MakerExpanderStrategy::random_free_edge_of(int v, const BoardState &) {
    auto &pool = free_in_av_[v];
    if (pool.empty())
        return std::nullopt;
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return pool[d(rng_)];
}

std::optional<int> MakerExpanderStrategy::any_random_free_edge(const BoardState &) {
    int e = view_.sample_free(rng_);
    if (e < 0)
        return std::nullopt;
    return e;
}

std::optional<int> MakerExpanderStrategy::next_move(const BoardState &board) {
    if (!minbox_.done()) {
        auto box = minbox_.choose_box([&](int v) { return !free_in_av_[v].empty(); });
        if (!box)
            return std::nullopt; // the simulated game forfeited
        return random_free_edge_of(*box, board);
    }
    return any_random_free_edge(board);
}

std::optional<int> maker_connect_components_move(const GraphView &view) {
    auto comps = connected_components(view.maker);
    if (comps.size() <= 1)
        return std::nullopt;
    for (auto &c : comps)
        std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end(), [](const auto &a, const auto &b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a.front() < b.front();
    });
    // smallest pair first, then fall back to later pairs
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = i + 1; j < comps.size(); ++j) {
            int best = -1;
            for (int u : comps[i])
                for (int v : comps[j]) {
                    int e = view.edges.index(u, v);
                    if (view.edge_free(e) && (best < 0 || e < best))
                        best = e;
                }
            if (best >= 0)
                return best;
        }
    return std::nullopt;
}

MakerHamiltonicityStrategy::MakerHamiltonicityStrategy(int n, const StrategyConfig &cfg,
                                                       double p, std::uint64_t seed)
    : n_(n), cfg_(cfg), p_(p), rng_(seed ^ 0x6a09e667f3bcc909ULL),
      expander_(n, cfg, p, seed), view_(n) {
    budgets_[0] = cfg.stage1_budget; // 0 = run until the simulation completes
    budgets_[1] = cfg.stage2_budget > 0 ? cfg.stage2_budget : n;
    budgets_[2] = cfg.stage3_budget; // 0 = until the board is exhausted
    moves_since_check_ = cfg.check_every;
}

void MakerHamiltonicityStrategy::on_claim(Player who, int element) {
    expander_.on_claim(who, element);
    view_.apply(who, element);
    if (who == Player::Maker) {
        ++maker_turns_;
        if (stage_ == MakerStage::Booster)
            ++moves_since_check_;
    }
}

long MakerHamiltonicityStrategy::stage_turns(MakerStage s) const {
    int i = static_cast<int>(s);
    long end = (i + 1 <= static_cast<int>(stage_)) ? stage_entry_turns_[i + 1]
                                                   : maker_turns_;
    return end - stage_entry_turns_[i];
}

std::optional<int> MakerHamiltonicityStrategy::next_move(const BoardState &board) {
    if (stage_ == MakerStage::Expander) {
        bool budget_hit = budgets_[0] > 0 &&
                          maker_turns_ - stage_entry_turns_[0] >= budgets_[0];
        if (expander_.stage_complete() || budget_hit) {
            stage_ = MakerStage::Connect;
            stage_entry_turns_[1] = maker_turns_;
        } else {
            return expander_.next_move(board);
        }
    }
    if (stage_ == MakerStage::Connect) {
        if (connected_components(view_.maker).size() <= 1 ||
            maker_turns_ - stage_entry_turns_[1] >= budgets_[1]) {
            stage_ = MakerStage::Booster;
            stage_entry_turns_[2] = maker_turns_;
        } else {
            auto mv = maker_connect_components_move(view_);
            if (mv)
                return mv;
            // no free edge joins two components; random claims are all
            // that is left
            int e = view_.sample_free(rng_);
            return e < 0 ? std::nullopt : std::optional<int>(e);
        }
    }
    if (stage_ == MakerStage::Booster && !ham_found_ &&
        moves_since_check_ >= cfg_.check_every) {
        moves_since_check_ = 0;
        auto res = hamiltonicity_search(view_.maker, cfg_.ham_check_budget);
        if (res.verdict == HamiltonicityResult::Verdict::Yes) {
            ham_found_ = true;
            stage_ = MakerStage::Done;
            stage_entry_turns_[3] = maker_turns_;
        }
    }
    int e = view_.sample_free(rng_);
    return e < 0 ? std::nullopt : std::optional<int>(e);
}

MakerKConnectivityStrategy::MakerKConnectivityStrategy(int n, const StrategyConfig &cfg,
                                                       double p, std::uint64_t seed)
    : n_(n), cfg_(cfg), rng_(seed ^ 0xbb67ae8584caa73bULL),
      expander_(n, cfg, p, seed), view_(n) {
    stage2_budget_ = cfg.stage2_budget > 0 ? cfg.stage2_budget : static_cast<long>(n);
}

void MakerKConnectivityStrategy::on_claim(Player who, int element) {
    expander_.on_claim(who, element);
    view_.apply(who, element);
    if (who == Player::Maker)
        ++maker_turns_;
}

std::optional<int> MakerKConnectivityStrategy::next_move(const BoardState &board) {
    if (!expander_.stage_complete())
        return expander_.next_move(board);
    // random free claims for the remainder; extra edges cannot hurt
    int e = view_.sample_free(rng_);
    return e < 0 ? std::nullopt : std::optional<int>(e);
}

BreakerIsolationStrategy::BreakerIsolationStrategy(int n, const StrategyConfig &cfg,
                                                   double p)
    : n_(n), cfg_(cfg), edges_(n), view_(n), in_clique_(n, 0) {
    long ell = static_cast<long>(edges_.edge_count());
    if (cfg.clique_target > 0)
        clique_target_ = cfg.clique_target;
    else
        clique_target_ = std::max(2L, std::lround(cfg.c_clique / p));
    clique_target_ = std::min(clique_target_, n - 1);
    if (cfg.stage1_budget > 0)
        stage1_budget_ = cfg.stage1_budget;
    else
        stage1_budget_ = std::min(ell, static_cast<long>(std::ceil(1.0 / (p * p))));
}

void BreakerIsolationStrategy::on_claim(Player who, int element) {
    view_.apply(who, element);
    if (who == Player::Maker) {
        auto [u, v] = edges_.pair_of(element);
        for (int x : {u, v})
            if (in_clique_[x]) {
                in_clique_[x] = 0;
                clique_.erase(std::find(clique_.begin(), clique_.end(), x));
            }
    }
    if (!stage_two_)
        ++stage1_moves_; // stage-one budget counts turns, not own moves
}

bool BreakerIsolationStrategy::eligible(int x) const {
    if (in_clique_[x] || view_.maker.degree(x) > 0)
        return false;
    for (int c : clique_) {
        Cell o = view_.edge_owner[edges_.index(x, c)];
        if (o == Cell::Maker)
            return false;
    }
    return true;
}

int BreakerIsolationStrategy::missing_edges_to_clique(int x) const {
    int miss = 0;
    for (int c : clique_)
        if (view_.edge_free(edges_.index(x, c)))
            ++miss;
    return miss;
}

int BreakerIsolationStrategy::free_incident(int v) const {
    int cnt = 0;
    for (int u = 0; u < n_; ++u)
        if (u != v && view_.edge_free(edges_.index(v, u)))
            ++cnt;
    return cnt;
}

void BreakerIsolationStrategy::absorb_candidates() {
    bool grew = true;
    while (grew && static_cast<int>(clique_.size()) < clique_target_) {
        grew = false;
        for (int x = 0; x < n_; ++x)
            if (eligible(x) && missing_edges_to_clique(x) == 0) {
                clique_.push_back(x);
                in_clique_[x] = 1;
                grew = true;
                break;
            }
    }
}

void BreakerIsolationStrategy::enter_stage_two() {
    stage_two_ = true;
    star_current_ = -1;
}

std::optional<int> BreakerIsolationStrategy::stage_one_move(const BoardState &board) {
    absorb_candidates();
    if (static_cast<int>(clique_.size()) >= clique_target_) {
        enter_stage_two();
        return stage_two_move(board);
    }
    if (stage1_moves_ >= stage1_budget_) {
        if (clique_.size() >= 2) {
            enter_stage_two();
            return stage_two_move(board);
        }
        return std::nullopt; // budget spent without even a Breaker edge pair
    }
    // extend toward the lowest-index candidate; partially built stars are
    // kept, so an interrupted candidate is naturally retried
    int best = -1;
    for (int x = 0; x < n_; ++x)
        if (eligible(x)) {
            best = x;
            break;
        }
    if (best < 0) {
        if (clique_.size() >= 2) {
            enter_stage_two();
            return stage_two_move(board);
        }
        return std::nullopt;
    }
    for (int c : clique_) {
        int e = edges_.index(best, c);
        if (view_.edge_free(e))
            return e;
    }
    return std::nullopt; // unreachable: best_miss >= 1
}

std::optional<int> BreakerIsolationStrategy::stage_two_move(const BoardState &) {
    if (star_current_ >= 0 && !in_clique_[star_current_])
        star_current_ = -1;
    if (star_current_ < 0) {
        for (int v : clique_)
            if (free_incident(v) > 0 &&
                (star_current_ < 0 || v < star_current_))
                star_current_ = v;
    }
    if (star_current_ >= 0) {
        for (int u = 0; u < n_; ++u) {
            if (u == star_current_)
                continue;
            int e = edges_.index(star_current_, u);
            if (view_.edge_free(e))
                return e;
        }
        star_current_ = -1;
    }
    // some clique vertex may already be fully surrounded: the game is won,
    // claim anything rather than forfeit
    for (int v : clique_)
        if (free_incident(v) == 0) {
            for (int e = 0; e < edges_.edge_count(); ++e)
                if (view_.edge_free(e))
                    return e;
        }
    return std::nullopt;
}

std::optional<int> BreakerIsolationStrategy::next_move(const BoardState &board) {
    return stage_two_ ? stage_two_move(board) : stage_one_move(board);
}

StarAttackBreaker::StarAttackBreaker(int n)
    : n_(n), edges_(n), maker_deg_(n, 0), free_incident_(n, n - 1),
      edge_owner_(edges_.edge_count(), Cell::Free) {}

void StarAttackBreaker::on_claim(Player who, int element) {
    edge_owner_[element] = (who == Player::Maker) ? Cell::Maker : Cell::Breaker;
    auto [u, v] = edges_.pair_of(element);
    --free_incident_[u];
    --free_incident_[v];
    if (who == Player::Maker) {
        ++maker_deg_[u];
        ++maker_deg_[v];
    }
}

std::optional<int> StarAttackBreaker::next_move(const BoardState &) {
    int best = -1;
    for (int v = 0; v < n_; ++v) {
        if (free_incident_[v] == 0)
            continue;
        if (best < 0 || maker_deg_[v] < maker_deg_[best] ||
            (maker_deg_[v] == maker_deg_[best] &&
             free_incident_[v] > free_incident_[best]))
            best = v;
    }
    if (best < 0)
        return std::nullopt;
    for (int u = 0; u < n_; ++u) {
        if (u == best)
            continue;
        int e = edges_.index(best, u);
        if (edge_owner_[e] == Cell::Free)
            return e;
    }
    return std::nullopt;
}

WinCondition min_degree_win_condition(int n, int target) {
    WinCondition wc;
    wc.monotone = true;
    wc.wins = [n, target](const std::vector<std::uint8_t> &maker_set) {
        return min_degree(maker_graph_of(maker_set, n)) >= target;
    };
    return wc;
}

WinCondition hamiltonicity_win_condition(int n, std::uint64_t ham_budget) {
    WinCondition wc;
    wc.monotone = true;
    wc.wins = [n, ham_budget](const std::vector<std::uint8_t> &maker_set) {
        auto res = hamiltonicity_search(maker_graph_of(maker_set, n), ham_budget);
        return res.verdict == HamiltonicityResult::Verdict::Yes;
    };
    return wc;
}

WinCondition k_connectivity_win_condition(int n, int k) {
    WinCondition wc;
    wc.monotone = true;
    wc.wins = [n, k](const std::vector<std::uint8_t> &maker_set) {
        return is_k_connected(maker_graph_of(maker_set, n), k).connected_k;
    };
    return wc;
}

} // namespace rtg

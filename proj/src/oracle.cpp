#include "rtg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace rtg {

WinTable::WinTable(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
    if (n < 0 || n > 24)
        throw std::invalid_argument("WinTable: board size guard is 24");
    if (table_.size() != (std::size_t{1} << n))
        throw std::invalid_argument("WinTable: table size mismatch");
}

WinTable WinTable::from_minimal_sets(int n, const std::vector<std::uint32_t> &minimal) {
    if (n < 0 || n > 24)
        throw std::invalid_argument("WinTable: board size guard is 24");
    std::vector<std::uint8_t> table(std::size_t{1} << n, 0);
    for (std::uint32_t w : minimal)
        table[w] = 1;
    // monotone closure: upward set union, one bit at a time
    for (int b = 0; b < n; ++b)
        for (std::uint32_t m = 0; m < (1u << n); ++m)
            if ((m & (1u << b)) && table[m ^ (1u << b)])
                table[m] = 1;
    return WinTable(n, std::move(table));
}

bool WinTable::is_monotone() const {
    for (std::uint32_t m = 0; m < (1u << n_); ++m)
        if (table_[m])
            for (int b = 0; b < n_; ++b)
                if (!(m & (1u << b)) && !table_[m | (1u << b)])
                    return false;
    return true;
}

WinTable WinTable::from_text(int n, const std::string &text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::uint32_t> minimal;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::uint32_t mask = 0;
        int e;
        bool any = false;
        while (ls >> e) {
            if (e < 0 || e >= n)
                throw std::invalid_argument("WinTable::from_text: element out of range");
            mask |= 1u << e;
            any = true;
        }
        if (any)
            minimal.push_back(mask);
    }
    return from_minimal_sets(n, minimal);
}

WinCondition WinTable::as_win_condition() const {
    WinCondition wc;
    wc.monotone = is_monotone();
    const WinTable copy = *this;
    wc.wins = [copy](const std::vector<std::uint8_t> &maker_set) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < maker_set.size(); ++i)
            if (maker_set[i])
                mask |= 1u << i;
        return copy.wins(mask);
    };
    return wc;
}

namespace {

template <typename Value>
Value subset_prob_impl(const WinTable &wt, const Value &p) {
    const int n = wt.board_size();
    std::vector<Value> pw(n + 1), qw(n + 1);
    Value q = Value(1) - p;
    pw[0] = Value(1);
    qw[0] = Value(1);
    for (int i = 1; i <= n; ++i) {
        pw[i] = pw[i - 1] * p;
        qw[i] = qw[i - 1] * q;
    }
    Value acc = Value(0);
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (wt.wins(m)) {
            int pc = std::popcount(m);
            acc += pw[pc] * qw[n - pc];
        }
    return acc;
}

template <typename Value>
Value payoff_S_impl(const WinTable &wt, std::uint32_t tm, std::uint32_t tb, const Value &p) {
    const int n = wt.board_size();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    if ((tm & tb) != 0 || (tm | tb) > full)
        throw std::invalid_argument("expected_payoff_S: invalid position");
    std::uint32_t free = full & ~(tm | tb);
    int nf = std::popcount(free);
    if (nf > 22)
        throw std::invalid_argument("expected_payoff_S: exact mode guard is 22 free elements");
    std::vector<Value> pw(nf + 1), qw(nf + 1);
    Value q = Value(1) - p;
    pw[0] = Value(1);
    qw[0] = Value(1);
    for (int i = 1; i <= nf; ++i) {
        pw[i] = pw[i - 1] * p;
        qw[i] = qw[i - 1] * q;
    }
    Value acc = Value(0);
    std::uint32_t sub = free;
    while (true) {
        if (wt.wins(tm | sub)) {
            int pc = std::popcount(sub);
            acc += pw[pc] * qw[nf - pc];
        }
        if (sub == 0)
            break;
        sub = (sub - 1) & free;
    }
    return acc;
}

} // namespace

Rational random_subset_win_probability(const WinTable &wt, const Rational &p) {
    return subset_prob_impl<Rational>(wt, p);
}

double random_subset_win_probability(const WinTable &wt, double p) {
    return subset_prob_impl<double>(wt, p);
}

Rational expected_payoff_S(const WinTable &wt, std::uint32_t tm, std::uint32_t tb,
                           const Rational &p) {
    return payoff_S_impl<Rational>(wt, tm, tb, p);
}

double expected_payoff_S(const WinTable &wt, std::uint32_t tm, std::uint32_t tb, double p) {
    return payoff_S_impl<double>(wt, tm, tb, p);
}

double expected_payoff_S_monte_carlo(const WinTable &wt, std::uint32_t tm,
                                     std::uint32_t tb, double p, int samples,
                                     std::mt19937_64 &rng) {
    const int n = wt.board_size();
    const std::uint32_t full = (1u << n) - 1;
    std::uint32_t free = full & ~(tm | tb);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    long wins = 0;
    for (int it = 0; it < samples; ++it) {
        std::uint32_t z = 0;
        for (int b = 0; b < n; ++b)
            if ((free & (1u << b)) && unif(rng) < p)
                z |= 1u << b;
        if (wt.wins(tm | z))
            ++wins;
    }
    return static_cast<double>(wins) / samples;
}

template <typename Value>
GameValueTable<Value>::GameValueTable(const WinTable &wt, Value p)
    : wt_(wt), p_(std::move(p)), n_(wt.board_size()) {
    if (n_ > 14)
        throw std::invalid_argument("GameValueTable: board size guard is 14");
    q_ = Value(1) - p_;
    full_ = (1u << n_) - 1;
    dense_ = (2 * n_ <= 22);
    if (dense_) {
        dense_vals_.resize(std::size_t{1} << (2 * n_));
        dense_set_.assign(std::size_t{1} << (2 * n_), 0);
    }
}

template <typename Value>
std::size_t GameValueTable<Value>::stored() const {
    if (dense_) {
        std::size_t c = 0;
        for (auto b : dense_set_)
            c += b;
        return c;
    }
    return sparse_.size();
}

template <typename Value>
Value GameValueTable<Value>::value(std::uint32_t tm, std::uint32_t tb) {
    if ((tm & tb) != 0)
        throw std::invalid_argument("GameValueTable: overlapping position");
    if (wt_.wins(tm))
        return Value(1); // Maker wins as soon as he occupies a winning set
    std::uint32_t free = full_ & ~(tm | tb);
    if (free == 0)
        return Value(0);

    const std::uint64_t key = (static_cast<std::uint64_t>(tb) << n_) | tm;
    if (dense_) {
        if (dense_set_[key])
            return dense_vals_[key];
    } else {
        auto it = sparse_.find(key);
        if (it != sparse_.end())
            return it->second;
    }

    bool first = true;
    Value best_max{}, best_min{};
    for (std::uint32_t s = free; s; s &= s - 1) {
        std::uint32_t bit = s & (~s + 1);
        Value vm = value(tm | bit, tb);
        Value vb = value(tm, tb | bit);
        if (first) {
            best_max = vm;
            best_min = vb;
            first = false;
        } else {
            if (vm > best_max)
                best_max = vm;
            if (vb < best_min)
                best_min = vb;
        }
    }
    Value v = p_ * best_max + q_ * best_min;
    if (dense_) {
        dense_vals_[key] = v;
        dense_set_[key] = 1;
    } else {
        sparse_.emplace(key, v);
    }
    return v;
}

template class GameValueTable<double>;
template class GameValueTable<Rational>;

namespace {

template <typename Value>
Value greedy_value_impl(const WinTable &wt, const Value &p,
                        std::unordered_map<std::uint64_t, Value> &memo,
                        std::uint32_t tm, std::uint32_t tb) {
    const int n = wt.board_size();
    const std::uint32_t full = (1u << n) - 1;
    if (wt.wins(tm))
        return Value(1);
    std::uint32_t free = full & ~(tm | tb);
    if (free == 0)
        return Value(0);
    const std::uint64_t key = (static_cast<std::uint64_t>(tb) << n) | tm;
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second;

    // Maker maximizes S(T_M+s, T_B); Breaker minimizes S(T_M, T_B+s).
    std::uint32_t smax = 0, smin = 0;
    Value best_max{}, best_min{};
    bool first = true;
    for (std::uint32_t s = free; s; s &= s - 1) {
        std::uint32_t bit = s & (~s + 1);
        Value sm = payoff_S_impl<Value>(wt, tm | bit, tb, p);
        Value sb = payoff_S_impl<Value>(wt, tm, tb | bit, p);
        if (first) {
            best_max = sm;
            smax = bit;
            best_min = sb;
            smin = bit;
            first = false;
        } else {
            if (sm > best_max) {
                best_max = sm;
                smax = bit;
            }
            if (sb < best_min) {
                best_min = sb;
                smin = bit;
            }
        }
    }
    Value q = Value(1) - p;
    Value v = p * greedy_value_impl(wt, p, memo, tm | smax, tb) +
              q * greedy_value_impl(wt, p, memo, tm, tb | smin);
    memo.emplace(key, v);
    return v;
}

} // namespace

Rational greedy_vs_greedy_value(const WinTable &wt, const Rational &p) {
    std::unordered_map<std::uint64_t, Rational> memo;
    return greedy_value_impl<Rational>(wt, p, memo, 0, 0);
}

double greedy_vs_greedy_value(const WinTable &wt, double p) {
    std::unordered_map<std::uint64_t, double> memo;
    return greedy_value_impl<double>(wt, p, memo, 0, 0);
}

GreedySStrategy::GreedySStrategy(const WinTable &wt, double p, Player side)
    : wt_(wt), p_(p), side_(side) {}

void GreedySStrategy::on_claim(Player who, int element) {
    if (who == Player::Maker)
        tm_ |= 1u << element;
    else
        tb_ |= 1u << element;
}

std::optional<int> GreedySStrategy::next_move(const BoardState &board) {
    int best = -1;
    double best_val = 0;
    for (int e = 0; e < board.n_elements; ++e) {
        if (!board.is_free(e))
            continue;
        double v = (side_ == Player::Maker)
                       ? expected_payoff_S(wt_, tm_ | (1u << e), tb_, p_)
                       : expected_payoff_S(wt_, tm_, tb_ | (1u << e), p_);
        if (best < 0 || (side_ == Player::Maker ? v > best_val : v < best_val)) {
            best = e;
            best_val = v;
        }
    }
    if (best < 0)
        return std::nullopt;
    return best;
}

std::vector<WinTable> enumerate_monotone_families(int n, int count, std::mt19937_64 &rng) {
    std::vector<WinTable> out;
    const std::uint32_t full = (1u << n) - 1;
    if (count >= 1)
        out.push_back(WinTable::from_minimal_sets(n, {full}));
    if (count >= 2) {
        std::vector<std::uint32_t> singletons;
        for (int b = 0; b < n; ++b)
            singletons.push_back(1u << b);
        out.push_back(WinTable::from_minimal_sets(n, singletons));
    }
    std::uniform_int_distribution<std::uint32_t> mask_dist(1, full);
    std::uniform_int_distribution<int> count_dist(1, 4);
    while (static_cast<int>(out.size()) < count) {
        int k = count_dist(rng);
        std::vector<std::uint32_t> minimal;
        for (int i = 0; i < k; ++i)
            minimal.push_back(mask_dist(rng));
        out.push_back(WinTable::from_minimal_sets(n, minimal));
    }
    return out;
}

} // namespace rtg

#include "rtg/boxgame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rtg {

BoxSpec::BoxSpec(std::vector<int> sizes_in) : sizes(std::move(sizes_in)) {
    if (sizes.empty())
        throw std::invalid_argument("BoxSpec: at least one box");
    offsets.resize(sizes.size() + 1);
    offsets[0] = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1)
            throw std::invalid_argument("BoxSpec: box sizes must be >= 1");
        offsets[i + 1] = offsets[i] + sizes[i];
    }
}

BoxSpec BoxSpec::uniform(int n, int s) { return BoxSpec(std::vector<int>(n, s)); }

int BoxSpec::box_of(int element) const {
    auto it = std::upper_bound(offsets.begin(), offsets.end(), element);
    return static_cast<int>(it - offsets.begin()) - 1;
}

int BoxSpec::min_size() const { return *std::min_element(sizes.begin(), sizes.end()); }

BoxPosition::BoxPosition(const BoxSpec &spec)
    : free_count(spec.sizes), maker_count(spec.n_boxes(), 0),
      touched(spec.n_boxes(), 0), full(spec.n_boxes(), 0),
      pre_touch_claims(spec.n_boxes(), 0) {}

void BoxPosition::apply(const BoxSpec &spec, Player who, int element) {
    int box = spec.box_of(element);
    --free_count[box];
    if (who == Player::Maker) {
        if (!touched[box])
            ++pre_touch_claims[box];
        if (++maker_count[box] == spec.sizes[box] && !touched[box])
            full[box] = 1;
    } else {
        touched[box] = 1;
    }
}

bool BoxPosition::all_touched() const {
    return std::all_of(touched.begin(), touched.end(), [](std::uint8_t t) { return t; });
}

bool BoxPosition::some_full() const {
    return std::any_of(full.begin(), full.end(), [](std::uint8_t f) { return f; });
}

Rational harmonic(long j) {
    if (j < 0)
        throw std::invalid_argument("harmonic: j >= 0 required");
    Rational h = 0;
    for (long i = 1; i <= j; ++i)
        h += Rational(1, i);
    return h;
}

bool biasbox_condition(long s, long m, long b, long n) {
    if (s < 1 || m < 1 || b < 1 || n < 1)
        throw std::invalid_argument("biasbox_condition: positive integers required");
    return Rational(s) > Rational(m, b) * (harmonic(n) + b);
}

std::optional<int> minimal_box_move(const BoxPosition &pos) {
    int best = -1;
    for (std::size_t i = 0; i < pos.free_count.size(); ++i) {
        if (!pos.active(static_cast<int>(i)))
            continue;
        if (best < 0 || pos.free_count[i] < pos.free_count[best])
            best = static_cast<int>(i);
    }
    if (best < 0)
        return std::nullopt;
    return best;
}

Rational box_potential(const std::vector<int> &free_counts, int j, int k, int b) {
    long expected = static_cast<long>(k - 1 - j) * b + 1;
    if (expected < 1 || static_cast<long>(free_counts.size()) != expected)
        throw std::invalid_argument("box_potential: index range mismatch");
    long sum = std::accumulate(free_counts.begin(), free_counts.end(), 0L);
    return Rational(sum, expected);
}

bool IntervalParams::feasible(double epsilon, double delta, double gamma) {
    if (epsilon <= 0 || delta <= 0 || gamma <= 0 || delta >= 1 || gamma >= 1)
        return false;
    bool first = (1 + epsilon) * (1 - delta) * gamma < delta;
    bool second = (1 - gamma) * (1 + epsilon) * (1 - delta) > (1 + delta) * (1 + delta);
    return first && second;
}

IntervalParams::IntervalParams(double epsilon_, double delta_, double gamma_)
    : epsilon(epsilon_), delta(delta_), gamma(gamma_) {
    if (!feasible(epsilon, delta, gamma))
        throw std::invalid_argument("IntervalParams: constraints violated");
}

int IntervalParams::interval_length(int s) const {
    return std::max(1, static_cast<int>(std::lround(gamma * s)));
}

IntervalParams choose_interval_params(double epsilon) {
    if (epsilon <= 0)
        throw std::invalid_argument("choose_interval_params: epsilon > 0 required");
    for (int gi = 99; gi >= 1; --gi) {
        double gamma = gi / 100.0;
        for (int di = 1; di <= 99; ++di) {
            double delta = di / 100.0;
            if (IntervalParams::feasible(epsilon, delta, gamma))
                return IntervalParams(epsilon, delta, gamma);
        }
    }
    throw std::runtime_error("choose_interval_params: no feasible (delta, gamma) on the lattice");
}

IntervalBoxPolicy::IntervalBoxPolicy(int n_boxes, int box_size, long total_turns,
                                     double p, const IntervalParams &params)
    : n_boxes_(n_boxes), interval_len_(params.interval_length(box_size)) {
    (void)p;
    last_interval_ = total_turns > 0 ? (total_turns - 1) / interval_len_ : 0;
    int sim_size = std::max(1, static_cast<int>(std::floor(params.sim_box_size(box_size))));
    sim_size = std::min(sim_size, box_size);
    sim_free_.assign(n_boxes_, sim_size);
    sim_touched_.assign(n_boxes_, 0);
    for (int b = 0; b < n_boxes_; ++b)
        active_.insert({sim_size, b});
}

void IntervalBoxPolicy::note_opponent_claim(int box) {
    pending_.emplace_back(clock_ / interval_len_, box);
}

void IntervalBoxPolicy::apply_pending(long upto_interval) {
    while (pending_head_ < pending_.size() && pending_[pending_head_].first < upto_interval) {
        int box = pending_[pending_head_].second;
        ++pending_head_;
        if (sim_touched_[box])
            continue;
        if (sim_free_[box] > 0) {
            active_.erase({sim_free_[box], box});
            --sim_free_[box];
            active_.insert({sim_free_[box], box});
        }
    }
}

std::optional<int> IntervalBoxPolicy::arbitrary_box() {
    while (arbitrary_cursor_ < n_boxes_ && sim_touched_[arbitrary_cursor_])
        ++arbitrary_cursor_;
    if (arbitrary_cursor_ < n_boxes_)
        return arbitrary_cursor_;
    return std::nullopt;
}

std::optional<int> IntervalBoxPolicy::choose_box(const std::function<bool(int)> &really_available) {
    long i = clock_ / interval_len_;
    apply_pending(i);

    auto touch = [&](int box) {
        active_.erase({sim_free_[box], box});
        sim_touched_[box] = 1;
        ++touched_count_;
        return box;
    };

    if (i == 0 || i >= last_interval_ || all_touched()) {
        // arbitrary free boxes in I_1 and I_r; banked surplus turns after
        // every box is touched
        for (int b = arbitrary_cursor_; b < n_boxes_; ++b)
            if (!sim_touched_[b] && really_available(b))
                return touch(b);
        for (int b = 0; b < n_boxes_; ++b)
            if (really_available(b))
                return b; // already touched; claim is banked
        return std::nullopt;
    }

    if (active_.empty()) {
        for (int b = 0; b < n_boxes_; ++b)
            if (really_available(b))
                return b;
        return std::nullopt;
    }
    int box = active_.begin()->second;
    if (!really_available(box))
        return std::nullopt; // the simulated game demands a really-full box
    return touch(box);
}

BoxBreakerIntervalStrategy::BoxBreakerIntervalStrategy(BoxSpec spec, double p,
                                                       IntervalParams params)
    : spec_(std::move(spec)), pos_(spec_), params_(params),
      policy_(spec_.n_boxes(), spec_.min_size(), spec_.total_elements(), p, params),
      scan_(spec_.offsets.begin(), spec_.offsets.end() - 1) {}

void BoxBreakerIntervalStrategy::on_claim(Player who, int element) {
    pos_.apply(spec_, who, element);
    if (who == Player::Maker)
        policy_.note_opponent_claim(spec_.box_of(element));
    policy_.advance_clock();
}

std::optional<int> BoxBreakerIntervalStrategy::next_move(const BoardState &board) {
    auto box = policy_.choose_box([&](int b) { return pos_.free_count[b] > 0; });
    if (!box)
        return std::nullopt;
    int &cur = scan_[*box];
    while (cur < spec_.offsets[*box + 1] && !board.is_free(cur))
        ++cur;
    if (cur >= spec_.offsets[*box + 1])
        return std::nullopt;
    return cur;
}

int BoxBreakerIntervalStrategy::max_pre_touch_consumption() const {
    return *std::max_element(pos_.pre_touch_claims.begin(), pos_.pre_touch_claims.end());
}

BoxMakerGreedyStrategy::BoxMakerGreedyStrategy(BoxSpec spec)
    : spec_(std::move(spec)), pos_(spec_),
      elem_scan_(spec_.offsets.begin(), spec_.offsets.end() - 1) {}

void BoxMakerGreedyStrategy::on_claim(Player who, int element) {
    pos_.apply(spec_, who, element);
    if (target_ >= 0 && !pos_.active(target_))
        target_ = -1;
}

std::optional<int> BoxMakerGreedyStrategy::next_move(const BoardState &board) {
    if (target_ < 0 || !pos_.active(target_) || pos_.free_count[target_] == 0) {
        while (scan_from_ < spec_.n_boxes() &&
               (!pos_.active(scan_from_) || pos_.free_count[scan_from_] == 0))
            ++scan_from_;
        if (scan_from_ >= spec_.n_boxes()) {
            if (pos_.some_full()) {
                // already won; claim anything rather than forfeit a won game
                for (int e = 0; e < board.n_elements; ++e)
                    if (board.is_free(e))
                        return e;
            }
            return std::nullopt; // no untouched box remains
        }
        target_ = scan_from_;
    }
    int &cur = elem_scan_[target_];
    while (cur < spec_.offsets[target_ + 1] && !board.is_free(cur))
        ++cur;
    if (cur >= spec_.offsets[target_ + 1])
        return std::nullopt;
    return cur;
}

MinimalBoxBreakerStrategy::MinimalBoxBreakerStrategy(BoxSpec spec)
    : spec_(std::move(spec)), pos_(spec_),
      scan_(spec_.offsets.begin(), spec_.offsets.end() - 1) {}

void MinimalBoxBreakerStrategy::on_claim(Player who, int element) {
    pos_.apply(spec_, who, element);
}

std::optional<int> MinimalBoxBreakerStrategy::next_move(const BoardState &board) {
    auto box = minimal_box_move(pos_);
    if (!box) {
        // every box is touched or already lost; claims are immaterial
        for (int e = 0; e < board.n_elements; ++e)
            if (board.is_free(e))
                return e;
        return std::nullopt;
    }
    int &cur = scan_[*box];
    while (cur < spec_.offsets[*box + 1] && !board.is_free(cur))
        ++cur;
    if (cur >= spec_.offsets[*box + 1])
        return std::nullopt;
    return cur;
}

DMakerMinBoxPolicy::DMakerMinBoxPolicy(int n_boxes, int box_size, int d, double p,
                                       const IntervalParams &params)
    : n_boxes_(n_boxes), d_(d), sub_size_(box_size / d),
      policy_(n_boxes * d, box_size / d,
              static_cast<long>(n_boxes) * box_size, p, params) {
    if (d < 1 || box_size < d)
        throw std::invalid_argument("DMakerMinBoxPolicy: need 1 <= d <= box size");
    cap_.assign(n_boxes_ * d_, sub_size_);
    box_cap_.assign(n_boxes_, box_size);
    remainder_cap_.assign(n_boxes_, box_size - sub_size_ * d_);
    maker_claims_.assign(n_boxes_, 0);
}

void DMakerMinBoxPolicy::note_opponent_claim(int box) {
    if (box_cap_[box] == 0) {
        // full box: redirect to the lowest-index box with remaining capacity
        box = -1;
        for (int w = 0; w < n_boxes_; ++w)
            if (box_cap_[w] > 0) {
                box = w;
                break;
            }
        if (box < 0)
            return; // simulation saturated
    }
    // prefer sub-boxes already touched (damage there is moot), then the
    // partition remainder, and only then a live sub-box
    for (int j = 0; j < d_; ++j) {
        int sub = box * d_ + j;
        if (cap_[sub] > 0 && policy_.touched(sub)) {
            --cap_[sub];
            --box_cap_[box];
            return;
        }
    }
    if (remainder_cap_[box] > 0) {
        --remainder_cap_[box];
        --box_cap_[box];
        return;
    }
    int pick = -1;
    for (int j = 0; j < d_; ++j) {
        int sub = box * d_ + j;
        if (cap_[sub] > 0 && (pick < 0 || cap_[sub] > cap_[pick]))
            pick = sub;
    }
    if (pick >= 0) {
        --cap_[pick];
        --box_cap_[box];
        policy_.note_opponent_claim(pick);
    }
}

std::optional<int> DMakerMinBoxPolicy::choose_box() {
    return choose_box([](int) { return true; });
}

std::optional<int>
DMakerMinBoxPolicy::choose_box(const std::function<bool(int)> &really_available) {
    auto sub = policy_.choose_box(
        [&](int s) { return cap_[s] > 0 && really_available(s / d_); });
    if (!sub)
        return std::nullopt;
    --cap_[*sub];
    int box = *sub / d_;
    --box_cap_[box];
    ++maker_claims_[box];
    return box;
}

DMakerMinBoxStrategy::DMakerMinBoxStrategy(BoxSpec spec, int d, double p,
                                           IntervalParams params)
    : spec_(std::move(spec)), d_(d), sub_size_(spec_.min_size() / d),
      policy_(spec_.n_boxes() * d, spec_.min_size() / d, spec_.total_elements(), p, params),
      claimed_(spec_.total_elements(), 0), claims_in_box_(spec_.n_boxes(), 0) {
    if (d < 1 || spec_.min_size() < d)
        throw std::invalid_argument("DMakerMinBoxStrategy: need 1 <= d <= s");
    sub_free_.assign(spec_.n_boxes() * d_, sub_size_);
}

int DMakerMinBoxStrategy::sub_box_of(int element) const {
    int box = spec_.box_of(element);
    int off = element - spec_.offsets[box];
    if (off >= d_ * sub_size_)
        return -1; // remainder element, discarded by the partition
    return box * d_ + off / sub_size_;
}

void DMakerMinBoxStrategy::on_claim(Player who, int element) {
    claimed_[element] = 1;
    int sub = sub_box_of(element);
    if (sub >= 0) {
        --sub_free_[sub];
        if (who == Player::Maker)
            policy_.note_opponent_claim(sub);
    }
    policy_.advance_clock();
}

std::optional<int> DMakerMinBoxStrategy::next_move(const BoardState &) {
    auto sub = policy_.choose_box([&](int s) { return sub_free_[s] > 0; });
    if (!sub)
        return std::nullopt;
    int box = *sub / d_;
    int base = spec_.offsets[box] + (*sub % d_) * sub_size_;
    for (int e = base; e < base + sub_size_; ++e)
        if (!claimed_[e]) {
            ++claims_in_box_[box];
            return e;
        }
    return std::nullopt;
}

WinCondition boxmaker_win_condition(const BoxSpec &spec) {
    WinCondition wc;
    wc.monotone = true;
    BoxSpec copy = spec;
    wc.wins = [copy](const std::vector<std::uint8_t> &maker_set) {
        for (int b = 0; b < copy.n_boxes(); ++b) {
            bool all = true;
            for (int e = copy.offsets[b]; e < copy.offsets[b + 1]; ++e)
                if (!maker_set[e]) {
                    all = false;
                    break;
                }
            if (all)
                return true;
        }
        return false;
    };
    return wc;
}

} // namespace rtg

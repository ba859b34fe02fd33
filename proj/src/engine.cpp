#include "rtg/engine.hpp"

#include <json.hpp>

namespace rtg {

TurnSequence sample_turn_sequence(std::size_t len, double q, std::mt19937_64 &rng) {
    if (q < 0.0 || q > 1.0)
        throw std::invalid_argument("sample_turn_sequence: q must be in [0,1]");
    TurnSequence seq;
    seq.q = q;
    seq.bits.reserve(len);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < len; ++i)
        seq.bits.push_back(unif(rng) < q ? Player::Maker : Player::Breaker);
    return seq;
}

BoardState::BoardState(int n) : n_elements(n), owner(n, Cell::Free), maker_mask(n, 0) {
    if (n < 0)
        throw std::invalid_argument("BoardState: negative size");
}

void BoardState::claim(Player p, int e) {
    if (e < 0 || e >= n_elements || owner[e] != Cell::Free)
        throw std::logic_error("BoardState::claim: element not free");
    if (p == Player::Maker) {
        owner[e] = Cell::Maker;
        maker_mask[e] = 1;
        ++maker_count;
    } else {
        owner[e] = Cell::Breaker;
        ++breaker_count;
    }
}

GameRecord play_game(int n_elements, const WinCondition &wc, Strategy &maker,
                     Strategy &breaker, double q, std::mt19937_64 &rng,
                     const PlayOptions &opts) {
    GameRecord rec;
    rec.seed = opts.seed;
    rec.q = q;
    rec.n_elements = n_elements;

    BoardState board(n_elements);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool decided = false;

    for (int t = 0; t < n_elements; ++t) {
        Player who = unif(rng) < q ? Player::Maker : Player::Breaker;
        rec.turn_bits.push_back(who);

        Strategy &s = (who == Player::Maker) ? maker : breaker;
        std::optional<int> mv = s.next_move(board);
        bool bad = !mv.has_value() || *mv < 0 || *mv >= n_elements || !board.is_free(*mv);
        if (bad) {
            if (!rec.forfeit)
                rec.forfeit = Forfeit{who, t};
            if (opts.forfeit_policy == ForfeitPolicy::Strict) {
                rec.outcome = (who == Player::Maker) ? Outcome::BreakerWin : Outcome::MakerWin;
                decided = true;
                break;
            }
            // fallback: lowest-index free element
            int e = 0;
            while (!board.is_free(e))
                ++e;
            mv = e;
        }
        board.claim(who, *mv);
        rec.moves.emplace_back(who, *mv);
        maker.on_claim(who, *mv);
        breaker.on_claim(who, *mv);

        if (opts.early_stop && wc.monotone && who == Player::Maker &&
            wc.wins(board.maker_mask)) {
            rec.outcome = Outcome::MakerWin;
            decided = true;
            break;
        }
    }

    if (!decided)
        rec.outcome = wc.wins(board.maker_mask) ? Outcome::MakerWin : Outcome::BreakerWin;
    return rec;
}

std::string GameRecord::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["q"] = q;
    j["n_elements"] = n_elements;
    std::string bits;
    bits.reserve(turn_bits.size());
    for (Player p : turn_bits)
        bits.push_back(player_char(p));
    j["turns"] = bits;
    nlohmann::json moves_j = nlohmann::json::array();
    for (const auto &[p, e] : moves)
        moves_j.push_back({std::string(1, player_char(p)), e});
    j["moves"] = moves_j;
    j["outcome"] = (outcome == Outcome::MakerWin) ? "MakerWin" : "BreakerWin";
    if (forfeit) {
        j["forfeit"] = {{"player", std::string(1, player_char(forfeit->who))},
                        {"turn", forfeit->turn}};
    }
    return j.dump();
}

GameRecord GameRecord::from_json(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    GameRecord rec;
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.q = j.at("q").get<double>();
    rec.n_elements = j.at("n_elements").get<int>();
    for (char c : j.at("turns").get<std::string>())
        rec.turn_bits.push_back(c == 'M' ? Player::Maker : Player::Breaker);
    for (const auto &m : j.at("moves")) {
        char c = m.at(0).get<std::string>().at(0);
        rec.moves.emplace_back(c == 'M' ? Player::Maker : Player::Breaker,
                               m.at(1).get<int>());
    }
    rec.outcome = j.at("outcome").get<std::string>() == "MakerWin" ? Outcome::MakerWin
                                                                   : Outcome::BreakerWin;
    if (j.contains("forfeit")) {
        char c = j["forfeit"].at("player").get<std::string>().at(0);
        rec.forfeit = Forfeit{c == 'M' ? Player::Maker : Player::Breaker,
                              j["forfeit"].at("turn").get<int>()};
    }
    return rec;
}

UniformRandomStrategy::UniformRandomStrategy(std::uint64_t seed) : rng_(seed) {}

void UniformRandomStrategy::ensure_init(const BoardState &board) {
    if (init_)
        return;
    free_.clear();
    pos_.assign(board.n_elements, -1);
    for (int e = 0; e < board.n_elements; ++e) {
        if (board.is_free(e)) {
            pos_[e] = static_cast<int>(free_.size());
            free_.push_back(e);
        }
    }
    init_ = true;
}

void UniformRandomStrategy::on_claim(Player, int element) {
    if (!init_)
        return;
    int i = pos_[element];
    if (i < 0)
        return;
    int last = free_.back();
    free_[i] = last;
    pos_[last] = i;
    free_.pop_back();
    pos_[element] = -1;
}

std::optional<int> UniformRandomStrategy::next_move(const BoardState &board) {
    ensure_init(board);
    if (free_.empty())
        return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, free_.size() - 1);
    return free_[pick(rng_)];
}

void LowestIndexStrategy::on_claim(Player, int) {}

std::optional<int> LowestIndexStrategy::next_move(const BoardState &board) {
    while (cursor_ < board.n_elements && !board.is_free(cursor_))
        ++cursor_;
    if (cursor_ >= board.n_elements)
        return std::nullopt;
    return cursor_;
}

std::vector<Interval> partition_into_intervals(std::size_t l, std::size_t interval_length) {
    if (interval_length < 1)
        throw std::invalid_argument("partition_into_intervals: length must be >= 1");
    std::vector<Interval> out;
    std::size_t start = 1;
    while (start <= l) {
        std::size_t end = std::min(l, start + interval_length - 1);
        out.push_back(Interval{static_cast<int>(start), static_cast<int>(end), 0, 0});
        start = end + 1;
    }
    return out;
}

void annotate_intervals(std::vector<Interval> &intervals, const TurnSequence &seq) {
    for (Interval &iv : intervals) {
        iv.maker_turns = 0;
        iv.breaker_turns = 0;
        for (int t = iv.start; t <= iv.end; ++t) {
            if (seq.bits[static_cast<std::size_t>(t) - 1] == Player::Maker)
                ++iv.maker_turns;
            else
                ++iv.breaker_turns;
        }
    }
}

} // namespace rtg

#include "rtg/checkers.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rtg {

void SimpleGraph::add_edge(int u, int v) {
    if (u == v)
        throw std::invalid_argument("SimpleGraph: no loops");
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::out_of_range("SimpleGraph: vertex out of range");
    if (adj[u][v])
        return;
    adj[u][v] = adj[v][u] = 1;
    ++m;
}

int SimpleGraph::degree(int v) const {
    int d = 0;
    for (int u = 0; u < n; ++u)
        d += adj[v][u];
    return d;
}

std::vector<int> SimpleGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n; ++u)
        if (adj[v][u])
            out.push_back(u);
    return out;
}

std::string SimpleGraph::to_edge_list() const {
    std::ostringstream os;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (adj[u][v])
                os << u << ' ' << v << '\n';
    return os.str();
}

SimpleGraph SimpleGraph::from_edge_list(const std::string &text) {
    std::istringstream is(text);
    std::vector<std::pair<int, int>> edges;
    int u, v, n = 0;
    while (is >> u >> v) {
        edges.emplace_back(u, v);
        n = std::max({n, u + 1, v + 1});
    }
    SimpleGraph g(n);
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return g;
}

int min_degree(const SimpleGraph &g) {
    if (g.n == 0)
        return 0;
    int d = g.n;
    for (int v = 0; v < g.n; ++v)
        d = std::min(d, g.degree(v));
    return d;
}

std::vector<std::vector<int>> connected_components(const SimpleGraph &g) {
    std::vector<std::vector<int>> comps;
    std::vector<std::uint8_t> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s])
            continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int u = 0; u < g.n; ++u)
                if (g.adj[v][u] && !seen[u]) {
                    seen[u] = 1;
                    q.push(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

namespace {

// |N_G(U)| for U given as a sorted index vector.
int neighborhood_size(const SimpleGraph &g, const std::vector<int> &u_set,
                      std::vector<std::uint8_t> &scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (int v : u_set)
        scratch[v] = 2; // in U
    int count = 0;
    for (int v : u_set)
        for (int w = 0; w < g.n; ++w)
            if (g.adj[v][w] && scratch[w] == 0) {
                scratch[w] = 1;
                ++count;
            }
    return count;
}

double binom_approx(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i)
        r *= static_cast<double>(n - i) / (i + 1);
    return r;
}

} // namespace

ExpanderReport is_expander_exact(const SimpleGraph &g, int R, double c) {
    double total = 0;
    for (int j = 1; j <= R; ++j)
        total += binom_approx(g.n, j);
    if (total > 1e7)
        throw std::invalid_argument(
            "is_expander: exact enumeration over guard (1e7 subsets); use sampled mode");

    ExpanderReport rep;
    rep.mode = CheckMode::Exact;
    rep.conclusive = true;
    std::vector<std::uint8_t> scratch(g.n, 0);

    const bool fast = g.n <= 64;
    std::vector<std::uint64_t> nbr;
    if (fast) {
        nbr.assign(g.n, 0);
        for (int v = 0; v < g.n; ++v)
            for (int w = 0; w < g.n; ++w)
                if (g.adj[v][w])
                    nbr[v] |= 1ULL << w;
    }

    for (int size = 1; size <= std::min(R, g.n); ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        while (true) {
            int nbhd;
            if (fast) {
                std::uint64_t umask = 0, acc = 0;
                for (int v : idx) {
                    umask |= 1ULL << v;
                    acc |= nbr[v];
                }
                nbhd = std::popcount(acc & ~umask);
            } else {
                nbhd = neighborhood_size(g, idx, scratch);
            }
            if (static_cast<double>(nbhd) < c * size) {
                rep.passes = false;
                rep.witness = idx;
                // re-verify the witness independently of the fast path
                std::vector<std::uint8_t> scratch2(g.n, 0);
                int check = neighborhood_size(g, idx, scratch2);
                if (static_cast<double>(check) >= c * size)
                    throw std::logic_error("is_expander: witness failed re-verification");
                return rep;
            }
            // next combination
            int i = size - 1;
            while (i >= 0 && idx[i] == g.n - size + i)
                --i;
            if (i < 0)
                break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    rep.passes = true;
    return rep;
}

ExpanderReport is_expander(const SimpleGraph &g, int R, double c, CheckMode mode,
                           int sample_count, std::mt19937_64 &rng) {
    if (mode == CheckMode::Exact)
        return is_expander_exact(g, R, c);

    ExpanderReport rep;
    rep.mode = CheckMode::Sampled;
    rep.conclusive = false;
    std::vector<std::uint8_t> scratch(g.n, 0);
    std::uniform_int_distribution<int> size_dist(1, std::min(R, g.n));
    std::vector<int> verts(g.n);
    for (int v = 0; v < g.n; ++v)
        verts[v] = v;
    for (int it = 0; it < sample_count; ++it) {
        int size = size_dist(rng);
        std::shuffle(verts.begin(), verts.end(), rng);
        std::vector<int> u_set(verts.begin(), verts.begin() + size);
        std::sort(u_set.begin(), u_set.end());
        int nbhd = neighborhood_size(g, u_set, scratch);
        if (static_cast<double>(nbhd) < c * size) {
            rep.passes = false;
            rep.conclusive = true;
            rep.witness = u_set;
            return rep;
        }
    }
    rep.passes = true; // inconclusive: refutation-only mode found nothing
    return rep;
}

namespace {

struct HamSearch {
    const SimpleGraph &g;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> path;
    std::vector<std::uint8_t> visited;
    std::vector<int> rem_deg; // unvisited neighbors
    bool aborted = false;

    explicit HamSearch(const SimpleGraph &graph, std::uint64_t b)
        : g(graph), budget(b), visited(graph.n, 0), rem_deg(graph.n, 0) {
        for (int v = 0; v < g.n; ++v)
            rem_deg[v] = g.degree(v);
    }

    bool dfs(int cur) {
        if (budget && ++nodes > budget) {
            aborted = true;
            return false;
        }
        if (static_cast<int>(path.size()) == g.n)
            return g.adj[cur][path.front()] != 0;

        std::vector<std::pair<int, int>> cands; // (rem_deg, vertex)
        for (int w = 0; w < g.n; ++w)
            if (g.adj[cur][w] && !visited[w])
                cands.emplace_back(rem_deg[w], w);
        std::sort(cands.begin(), cands.end());

        for (auto &[rd, w] : cands) {
            (void)rd;
            visited[w] = 1;
            path.push_back(w);
            bool ok = true;
            for (int u = 0; u < g.n; ++u)
                if (g.adj[w][u]) {
                    --rem_deg[u];
                    // u's future cycle neighbors are unvisited vertices, the
                    // current endpoint w, or the start vertex.
                    if (!visited[u] &&
                        rem_deg[u] + g.adj[u][path.front()] + g.adj[u][w] < 2)
                        ok = false;
                }
            if (ok && dfs(w))
                return true;
            for (int u = 0; u < g.n; ++u)
                if (g.adj[w][u])
                    ++rem_deg[u];
            path.pop_back();
            visited[w] = 0;
            if (aborted)
                return false;
        }
        return false;
    }
};

// rotation-extension heuristic: grow a path from vertex 0, rotating on a
// random endpoint neighbor when stuck. Finds Hamilton cycles quickly on
// dense graphs; failure proves nothing.
bool rotation_extension_cycle(const SimpleGraph &g, std::mt19937_64 &rng, long iter_cap,
                              std::vector<int> &cycle_out) {
    int n = g.n;
    std::vector<int> path{0};
    std::vector<int> pos(n, -1);
    pos[0] = 0;
    for (long it = 0; it < iter_cap; ++it) {
        int end = path.back();
        int sz = static_cast<int>(path.size());
        if (sz == n && g.adj[end][path[0]]) {
            cycle_out = path;
            return true;
        }
        // extend with a random unvisited neighbor
        int pick = -1, cnt = 0;
        for (int w = 0; w < n; ++w)
            if (g.adj[end][w] && pos[w] < 0 && rng() % static_cast<unsigned>(++cnt) == 0)
                pick = w;
        if (pick >= 0) {
            pos[pick] = sz;
            path.push_back(pick);
            continue;
        }
        // rotate at a random endpoint neighbor (skip the path predecessor)
        pick = -1;
        cnt = 0;
        for (int w = 0; w < n; ++w)
            if (g.adj[end][w] && pos[w] < sz - 2 && rng() % static_cast<unsigned>(++cnt) == 0)
                pick = w;
        if (pick < 0)
            return false; // endpoint's only neighbor is its predecessor
        std::reverse(path.begin() + pos[pick] + 1, path.end());
        for (int i = pos[pick] + 1; i < sz; ++i)
            pos[path[i]] = i;
    }
    return false;
}

bool verify_cycle(const SimpleGraph &g, const std::vector<int> &cycle) {
    if (static_cast<int>(cycle.size()) != g.n)
        return false;
    std::vector<std::uint8_t> seen(g.n, 0);
    for (int v : cycle) {
        if (v < 0 || v >= g.n || seen[v])
            return false;
        seen[v] = 1;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]))
            return false;
    return true;
}

} // namespace

HamiltonicityResult hamiltonicity_search(const SimpleGraph &g, std::uint64_t node_budget) {
    using V = HamiltonicityResult::Verdict;
    if (g.n < 3)
        return {V::No, {}};
    if (min_degree(g) < 2)
        return {V::No, {}};
    if (connected_components(g).size() != 1)
        return {V::No, {}};

    // cheap heuristic pass first; its cycles are verified, so a hit is exact
    std::mt19937_64 heur_rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(g.n));
    std::vector<int> heur_cycle;
    for (int attempt = 0; attempt < 20; ++attempt)
        if (rotation_extension_cycle(g, heur_rng, 60L * g.n, heur_cycle)) {
            if (!verify_cycle(g, heur_cycle))
                throw std::logic_error("hamiltonicity_search: cycle failed verification");
            return {V::Yes, heur_cycle};
        }

    HamSearch s(g, node_budget);
    s.visited[0] = 1;
    s.path.push_back(0);
    for (int u = 0; u < g.n; ++u)
        if (g.adj[0][u])
            --s.rem_deg[u];
    if (s.dfs(0)) {
        if (!verify_cycle(g, s.path))
            throw std::logic_error("hamiltonicity_search: cycle failed verification");
        return {V::Yes, s.path};
    }
    return {s.aborted ? V::Unknown : V::No, {}};
}

bool is_hamiltonian(const SimpleGraph &g, std::vector<int> *cycle_out) {
    HamiltonicityResult r = hamiltonicity_search(g, 0);
    if (r.verdict == HamiltonicityResult::Verdict::Yes) {
        if (cycle_out)
            *cycle_out = r.cycle;
        return true;
    }
    return false;
}

int longest_path_length(const SimpleGraph &g) {
    if (g.n > 16)
        throw std::invalid_argument("longest_path_length: n > 16");
    if (g.n == 0)
        return 0;
    const int full = 1 << g.n;
    std::vector<std::uint32_t> dp(full, 0); // mask -> endpoint set
    for (int v = 0; v < g.n; ++v)
        dp[1u << v] = 1u << v;
    int best = 1;
    for (int mask = 1; mask < full; ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends)
            continue;
        best = std::max(best, std::popcount(static_cast<unsigned>(mask)));
        for (int v = 0; v < g.n; ++v) {
            if (!(ends & (1u << v)))
                continue;
            for (int w = 0; w < g.n; ++w)
                if (g.adj[v][w] && !(mask & (1 << w)))
                    dp[mask | (1 << w)] |= 1u << w;
        }
    }
    return best;
}

namespace {

BoosterVerdict booster_with_base(const SimpleGraph &g, int u, int v, int base_longest) {
    SimpleGraph g2 = g;
    g2.add_edge(u, v);
    if (is_hamiltonian(g2))
        return {true, false};
    if (g.n <= 16)
        return {longest_path_length(g2) > base_longest, false};
    return {false, true};
}

} // namespace

BoosterVerdict is_booster(const SimpleGraph &g, int u, int v) {
    if (g.has_edge(u, v))
        throw std::invalid_argument("is_booster: e must be a non-edge");
    if (is_hamiltonian(g))
        throw std::invalid_argument("is_booster: undefined for Hamiltonian graphs");
    int base = g.n <= 16 ? longest_path_length(g) : 0;
    return booster_with_base(g, u, v, base);
}

int count_boosters(const SimpleGraph &g) {
    if (is_hamiltonian(g))
        throw std::invalid_argument("count_boosters: undefined for Hamiltonian graphs");
    int base = g.n <= 16 ? longest_path_length(g) : 0;
    int count = 0;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!g.has_edge(u, v) && booster_with_base(g, u, v, base).value)
                ++count;
    return count;
}

namespace {

// Unit-capacity vertex-split max flow, capped at `cap_at` augmentations.
// Returns the flow value; on flow < cap_at fills `cut` with the separating
// vertex set (excluding s and t).
int vertex_flow(const SimpleGraph &g, int s, int t, int cap_at, std::vector<int> *cut) {
    const int n = g.n;
    const int nn = 2 * n; // v_in = v, v_out = v + n
    const int INF = 1 << 28;
    std::vector<std::vector<int>> cap(nn, std::vector<int>(nn, 0));
    for (int v = 0; v < n; ++v)
        cap[v][v + n] = (v == s || v == t) ? INF : 1;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (g.adj[u][v])
                cap[u + n][v] = INF;

    const int src = s + n, snk = t;
    int flow = 0;
    std::vector<int> parent(nn);
    while (flow < cap_at) {
        std::fill(parent.begin(), parent.end(), -1);
        parent[src] = src;
        std::queue<int> q;
        q.push(src);
        while (!q.empty() && parent[snk] < 0) {
            int x = q.front();
            q.pop();
            for (int y = 0; y < nn; ++y)
                if (cap[x][y] > 0 && parent[y] < 0) {
                    parent[y] = x;
                    q.push(y);
                }
        }
        if (parent[snk] < 0)
            break;
        for (int y = snk; y != src; y = parent[y]) {
            cap[parent[y]][y] -= 1;
            cap[y][parent[y]] += 1;
        }
        ++flow;
    }
    if (flow < cap_at && cut) {
        std::vector<std::uint8_t> reach(nn, 0);
        std::queue<int> q;
        q.push(src);
        reach[src] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y = 0; y < nn; ++y)
                if (cap[x][y] > 0 && !reach[y]) {
                    reach[y] = 1;
                    q.push(y);
                }
        }
        cut->clear();
        for (int v = 0; v < n; ++v)
            if (v != s && v != t && reach[v] && !reach[v + n])
                cut->push_back(v);
    }
    return flow;
}

bool separates(const SimpleGraph &g, const std::vector<int> &sep) {
    std::vector<std::uint8_t> removed(g.n, 0);
    for (int v : sep)
        removed[v] = 1;
    int start = -1;
    for (int v = 0; v < g.n; ++v)
        if (!removed[v]) {
            start = v;
            break;
        }
    if (start < 0)
        return false;
    std::vector<std::uint8_t> seen(g.n, 0);
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u = 0; u < g.n; ++u)
            if (g.adj[v][u] && !removed[u] && !seen[u]) {
                seen[u] = 1;
                q.push(u);
                ++cnt;
            }
    }
    return cnt < g.n - static_cast<int>(sep.size());
}

} // namespace

ConnectivityResult is_k_connected(const SimpleGraph &g, int k) {
    if (k < 1)
        throw std::invalid_argument("is_k_connected: k >= 1 required");
    if (g.n <= k)
        return {false, std::nullopt}; // K_{k+1} is the smallest k-connected graph

    bool complete = true;
    for (int u = 0; u < g.n && complete; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!g.has_edge(u, v)) {
                complete = false;
                break;
            }
    if (complete)
        return {g.n - 1 >= k, std::nullopt};

    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            if (g.has_edge(u, v))
                continue;
            std::vector<int> cut;
            int f = vertex_flow(g, u, v, k, &cut);
            if (f < k) {
                if (static_cast<int>(cut.size()) != f || !separates(g, cut))
                    throw std::logic_error("is_k_connected: separator failed re-verification");
                return {false, cut};
            }
        }
    return {true, std::nullopt};
}

LemmaVerdict check_lemma_connectivity(const SimpleGraph &g, int R, double c, int k) {
    bool premise_arith = c >= k && R * c >= 0.5 * (g.n + k);
    if (!premise_arith)
        return LemmaVerdict::VacuousPass;
    ExpanderReport rep = is_expander_exact(g, R, c);
    if (!rep.passes)
        return LemmaVerdict::VacuousPass;
    return is_k_connected(g, k).connected_k ? LemmaVerdict::Pass
                                            : LemmaVerdict::Counterexample;
}

LemmaVerdict check_lemma_component(const SimpleGraph &g, int R, double c) {
    ExpanderReport rep = is_expander_exact(g, R, c);
    if (!rep.passes)
        return LemmaVerdict::VacuousPass;
    auto comps = connected_components(g);
    for (const auto &comp : comps)
        if (static_cast<double>(comp.size()) < R * (c + 1))
            return LemmaVerdict::Counterexample;
    return LemmaVerdict::Pass;
}

} // namespace rtg

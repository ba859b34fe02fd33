// Exact graph-property verifiers: expansion, Hamiltonicity, boosters,
// component bounds and k-vertex-connectivity. All checkers are pure
// functions of the input graph.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rtg {

struct SimpleGraph {
    SimpleGraph() = default;
    explicit SimpleGraph(int n_) : n(n_), adj(n_, std::vector<std::uint8_t>(n_, 0)) {}

    int n = 0;
    std::vector<std::vector<std::uint8_t>> adj;
    int m = 0;

    bool has_edge(int u, int v) const { return adj[u][v] != 0; }
    void add_edge(int u, int v);
    int degree(int v) const;
    std::vector<int> neighbors(int v) const;

    // one "u v" pair per line
    std::string to_edge_list() const;
    static SimpleGraph from_edge_list(const std::string &text);
};

int min_degree(const SimpleGraph &g);

std::vector<std::vector<int>> connected_components(const SimpleGraph &g);

enum class CheckMode : std::uint8_t { Exact, Sampled };

struct ExpanderReport {
    bool passes = false;
    bool conclusive = false; // sampled passes are refutation-only
    CheckMode mode = CheckMode::Exact;
    std::optional<std::vector<int>> witness; // U with |N(U)| < c|U|, |U| <= R
};

// (R,c)-expander test. Exact mode enumerates all vertex subsets of size
// <= R (guarded at 1e7 subsets); sampled mode only ever refutes.
ExpanderReport is_expander(const SimpleGraph &g, int R, double c, CheckMode mode,
                           int sample_count, std::mt19937_64 &rng);
ExpanderReport is_expander_exact(const SimpleGraph &g, int R, double c);

struct HamiltonicityResult {
    enum class Verdict : std::uint8_t { Yes, No, Unknown } verdict;
    std::vector<int> cycle; // filled on Yes; re-verified before returning
};

// Backtracking search; node_budget == 0 means unbounded (exact). With a
// budget the result may be Unknown.
HamiltonicityResult hamiltonicity_search(const SimpleGraph &g,
                                         std::uint64_t node_budget = 0);

// Exact verdict (unbounded search).
bool is_hamiltonian(const SimpleGraph &g, std::vector<int> *cycle_out = nullptr);

// Exact number of vertices on a longest simple path. Guarded at n <= 16.
int longest_path_length(const SimpleGraph &g);

struct BoosterVerdict {
    bool value = false;
    bool partial = false; // n > 16: only the Hamiltonicity branch was tested
};

// Precondition: e = {u,v} is a non-edge and g is not Hamiltonian.
BoosterVerdict is_booster(const SimpleGraph &g, int u, int v);

int count_boosters(const SimpleGraph &g);

struct ConnectivityResult {
    bool connected_k = false;
    std::optional<std::vector<int>> separator; // size < k, re-verified
};

// Exact k-vertex-connectivity via vertex-split max-flow over all
// nonadjacent pairs. n <= k is false by convention.
ConnectivityResult is_k_connected(const SimpleGraph &g, int k);

enum class LemmaVerdict : std::uint8_t { VacuousPass, Pass, Counterexample };

// Premise: g is an (R,c)-expander with c >= k and Rc >= (n+k)/2.
// Conclusion: g is k-vertex-connected. Counterexample must never occur.
LemmaVerdict check_lemma_connectivity(const SimpleGraph &g, int R, double c, int k);

// Premise: g is an (R,c)-expander. Conclusion: every component has size
// at least R(c+1).
LemmaVerdict check_lemma_component(const SimpleGraph &g, int R, double c);

} // namespace rtg

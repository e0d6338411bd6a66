// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_K2SEARCH_HPP
#define BNSCORE_K2SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "metric.hpp"

namespace bnscore {

struct SearchConfig {
    std::vector<int> order;  // visit order; a node's candidate parents are its predecessors
    int max_parents = 0;
    PriorSpec prior = PriorSpec::uniform();
};

struct SearchResult {
    Dag dag;
    std::vector<double> family_log_scores;  // indexed by variable
    double total_log_score = 0.0;
};

// Greedy ordered search: every node starts without parents and repeatedly
// adopts the single predecessor that raises its family score the most,
// until no candidate improves it beyond the noise tolerance or the parent
// bound is hit. The result respects the order, so it is acyclic by
// construction. On equal candidate scores the one earliest in the order
// wins.
inline SearchResult k2_search(const Database& db, const SearchConfig& config) {
    const int n = db.variable_count();
    if (static_cast<int>(config.order.size()) != n)
        throw error("search: order must list every variable exactly once");
    std::vector<bool> seen(n, false);
    for (int v : config.order) {
        if (v < 0 || v >= n || seen[v])
            throw error("search: order must be a permutation of the variables");
        seen[v] = true;
    }
    if (config.max_parents < 0)
        throw error("search: max_parents must be nonnegative");

    constexpr double improvement_tolerance = 1e-12;

    SearchResult result;
    result.dag = Dag::disconnected(n);
    result.family_log_scores.assign(n, 0.0);

    for (int pos = 0; pos < n; ++pos) {
        const int node = config.order[pos];
        std::vector<int> parents;
        double current = family_log_score(tabulate_counts(db, node, parents), config.prior);

        while (static_cast<int>(parents.size()) < config.max_parents) {
            int best_candidate = -1;
            double best_score = -std::numeric_limits<double>::infinity();
            for (int cpos = 0; cpos < pos; ++cpos) {
                const int candidate = config.order[cpos];
                if (std::binary_search(parents.begin(), parents.end(), candidate)) continue;
                std::vector<int> trial = parents;
                trial.insert(std::lower_bound(trial.begin(), trial.end(), candidate), candidate);
                const double s = family_log_score(tabulate_counts(db, node, std::move(trial)), config.prior);
                if (s > best_score) {
                    best_score = s;
                    best_candidate = candidate;
                }
            }
            if (best_candidate < 0 || !(best_score > current + improvement_tolerance)) break;
            parents.insert(std::lower_bound(parents.begin(), parents.end(), best_candidate),
                           best_candidate);
            current = best_score;
        }

        result.dag.parents[node] = std::move(parents);
        result.family_log_scores[node] = current;
        result.total_log_score += current;
    }
    return result;
}

// Thin restart loop over random node orders; keeps the best total score,
// first winner on ties. The underlying search stays deterministic.
inline SearchResult k2_search_random_restarts(const Database& db, const PriorSpec& prior,
                                              int max_parents, int num_orders, std::uint64_t seed) {
    if (num_orders < 1)
        throw error("search: need at least one restart");
    std::mt19937_64 rng(seed);
    std::vector<int> order(db.variable_count());
    std::iota(order.begin(), order.end(), 0);

    SearchResult best;
    bool have_best = false;
    for (int t = 0; t < num_orders; ++t) {
        std::shuffle(order.begin(), order.end(), rng);
        SearchResult r = k2_search(db, SearchConfig{order, max_parents, prior});
        if (!have_best || r.total_log_score > best.total_log_score) {
            best = std::move(r);
            have_best = true;
        }
    }
    return best;
}

}  // namespace bnscore

#endif  // BNSCORE_K2SEARCH_HPP

// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_POSTERIOR_HPP
#define BNSCORE_POSTERIOR_HPP

#include <cmath>
#include <limits>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "metric.hpp"

namespace bnscore {

inline constexpr int kDefaultEnumerationCap = 5;

// Max-subtracted log-sum-exp, accumulated in a fixed order.
inline double log_sum_exp(std::span<const double> values) {
    double max = -std::numeric_limits<double>::infinity();
    for (double v : values)
        if (v > max) max = v;
    if (!std::isfinite(max)) return max;
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - max);
    return max + std::log(sum);
}

// Every labeled DAG on n nodes, in lexicographic order of the
// upper-triangular pair-state word: for each pair i < j (pairs ordered
// (0,1), (0,2), ...), state 0 means no edge, 1 means i->j, 2 means j->i,
// with the first pair as the most significant digit. Candidates with a
// directed cycle are dropped.
inline std::vector<Dag> enumerate_dags(int n, int max_nodes = kDefaultEnumerationCap) {
    if (n < 1)
        throw error("enumerate: n must be positive");
    if (n > max_nodes)
        throw error("enumerate: " + std::to_string(n) + " nodes exceeds the cap of " +
                    std::to_string(max_nodes) +
                    "; the number of structures grows super-exponentially, raise the cap explicitly");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    unsigned long long total = 1;
    for (std::size_t p = 0; p < pairs.size(); ++p) total *= 3;

    std::vector<Dag> dags;
    for (unsigned long long code = 0; code < total; ++code) {
        Dag dag = Dag::disconnected(n);
        unsigned long long rest = code;
        unsigned long long place = total;
        for (const auto& [i, j] : pairs) {
            place /= 3;
            const int state = static_cast<int>(rest / place);
            rest %= place;
            if (state == 1)
                dag.parents[j].push_back(i);
            else if (state == 2)
                dag.parents[i].push_back(j);
        }
        if (is_acyclic(dag)) dags.push_back(std::move(dag));
    }
    return dags;
}

struct PosteriorEntry {
    Dag dag;
    double log_joint;   // structure log score + log(1/#structures)
    double posterior;
};

// Exact posterior over every enumerated structure, with a uniform prior
// over the enumeration.
struct PosteriorTable {
    std::vector<PosteriorEntry> entries;  // enumeration order
    double log_evidence = 0.0;            // log P(D)
};

inline PosteriorTable posterior_over_structures(const Database& db, const PriorSpec& prior,
                                                int max_nodes = kDefaultEnumerationCap) {
    std::vector<Dag> dags = enumerate_dags(db.variable_count(), max_nodes);
    const double log_structure_prior = -std::log(static_cast<double>(dags.size()));

    PosteriorTable table;
    table.entries.reserve(dags.size());
    std::vector<double> log_joints;
    log_joints.reserve(dags.size());
    for (Dag& dag : dags) {
        const double lj = structure_log_score(dag, db, prior).log_score + log_structure_prior;
        log_joints.push_back(lj);
        table.entries.push_back({std::move(dag), lj, 0.0});
    }
    table.log_evidence = log_sum_exp(log_joints);
    for (PosteriorEntry& e : table.entries)
        e.posterior = std::exp(e.log_joint - table.log_evidence);
    return table;
}

namespace detail {

inline std::set<std::pair<int, int>> skeleton_edges(const Dag& dag) {
    std::set<std::pair<int, int>> edges;
    for (int c = 0; c < dag.node_count(); ++c)
        for (int p : dag.parents[c])
            edges.emplace(std::min(p, c), std::max(p, c));
    return edges;
}

// Colliders a->c<-b whose parents a, b are not adjacent.
inline std::set<std::tuple<int, int, int>> v_structures(const Dag& dag,
                                                        const std::set<std::pair<int, int>>& skeleton) {
    std::set<std::tuple<int, int, int>> out;
    for (int c = 0; c < dag.node_count(); ++c) {
        const std::vector<int>& ps = dag.parents[c];
        for (std::size_t a = 0; a < ps.size(); ++a)
            for (std::size_t b = a + 1; b < ps.size(); ++b)
                if (skeleton.find({ps[a], ps[b]}) == skeleton.end())
                    out.emplace(ps[a], ps[b], c);
    }
    return out;
}

}  // namespace detail

// True iff the two DAGs share a skeleton and the same v-structures, i.e.
// they encode the same conditional independencies.
inline bool markov_equivalent(const Dag& a, const Dag& b) {
    if (a.node_count() != b.node_count())
        throw error("markov_equivalent: node counts differ");
    const auto skel_a = detail::skeleton_edges(a);
    const auto skel_b = detail::skeleton_edges(b);
    if (skel_a != skel_b) return false;
    return detail::v_structures(a, skel_a) == detail::v_structures(b, skel_b);
}

}  // namespace bnscore

#endif  // BNSCORE_POSTERIOR_HPP

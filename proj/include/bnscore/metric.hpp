// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_METRIC_HPP
#define BNSCORE_METRIC_HPP

#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "model.hpp"

namespace bnscore {

// Natural log of the Gamma function for z > 0, via the Lanczos
// approximation (g = 7, 9 coefficients) with the reflection formula
// below z = 0.5. Absolute error is around 1e-14 across the positive
// axis, well inside the 1e-10 budget of the scores built on it.
inline double log_gamma(double z) {
    static constexpr double coeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    constexpr double pi = std::numbers::pi;
    constexpr double half_log_two_pi = 0.91893853320467274178;
    if (!(z > 0.0))
        throw error("log_gamma: argument must be positive");
    if (z < 0.5)
        return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
    z -= 1.0;
    double series = coeff[0];
    for (int i = 1; i < 9; ++i) series += coeff[i] / (z + i);
    const double t = z + 7.5;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// Pseudo-counts of the noninformative family: a single equivalent sample
// size alpha spread evenly over the q*r cells of a family, so that
// N'_ijk = alpha/(q r) - 1 and N'_ij = alpha/q - r (= r * N'_ijk).
struct Pseudocounts {
    double cell;  // N'_ijk
    double row;   // N'_ij
};

inline Pseudocounts noninformative_pseudocounts(double alpha, int q, int r) {
    if (!(alpha > 0.0))
        throw error("prior: alpha must be positive");
    if (q < 1 || r < 1)
        throw error("prior: q and r must be positive");
    return {alpha / (static_cast<double>(q) * r) - 1.0, alpha / q - r};
}

enum class PriorKind { uniform, dirichlet, noninformative };

// Explicit pseudo-count matrix for one family, laid out like CountTable.
struct PseudocountTable {
    int q = 0;
    int r = 0;
    std::vector<double> cells;  // q*r, row-major
};

using FamilyKey = std::pair<int, std::vector<int>>;  // (variable, sorted parents)

// Selects the parameter prior used by the scores: uniform (all N' zero),
// explicit per-family Dirichlet pseudo-counts, or the noninformative
// alpha family. Families without an explicit table default to all zeros.
class PriorSpec {
public:
    static PriorSpec uniform() { return PriorSpec(PriorKind::uniform); }

    static PriorSpec noninformative(double alpha) {
        if (!(alpha > 0.0))
            throw error("prior: alpha must be positive");
        PriorSpec p(PriorKind::noninformative);
        p.alpha_ = alpha;
        return p;
    }

    static PriorSpec dirichlet(std::map<FamilyKey, PseudocountTable> tables) {
        for (const auto& [key, table] : tables) {
            if (table.q < 1 || table.r < 1 ||
                table.cells.size() != static_cast<std::size_t>(table.q) * table.r)
                throw error("prior: malformed pseudo-count matrix");
            for (double c : table.cells)
                if (!(c > -1.0))
                    throw error("prior: pseudo-counts must be real values greater than -1");
        }
        PriorSpec p(PriorKind::dirichlet);
        p.tables_ = std::move(tables);
        return p;
    }

    PriorKind kind() const { return kind_; }
    double alpha() const { return alpha_; }

    // nullptr means no entry for this family (treated as all zeros).
    const PseudocountTable* family_table(int variable, const std::vector<int>& parents) const {
        const auto it = tables_.find(FamilyKey(variable, parents));
        return it == tables_.end() ? nullptr : &it->second;
    }

private:
    explicit PriorSpec(PriorKind kind) : kind_(kind) {}

    PriorKind kind_;
    double alpha_ = 0.0;
    std::map<FamilyKey, PseudocountTable> tables_;
};

namespace detail {

// One family of the generalized score:
//   sum_j [ logG(N'_ij + r) - logG(N_ij + N'_ij + r)
//           + sum_k ( logG(N_ijk + N'_ijk + 1) - logG(N'_ijk + 1) ) ]
// With all N' = 0 this collapses to the factorial form
// (r-1)!/(N_ij+r-1)! * prod_k N_ijk!. Rows with N_ij = 0 contribute
// exactly zero and are skipped.
template <class CellPseudo>  // double(int j, int k)
double family_score_impl(const CountTable& t, CellPseudo pseudo) {
    double total = 0.0;
    for (int j = 0; j < t.q; ++j) {
        if (t.row_totals[j] == 0) continue;
        double row_pseudo = 0.0;
        double cell_terms = 0.0;
        for (int k = 0; k < t.r; ++k) {
            const double np = pseudo(j, k);
            if (!(np > -1.0))
                throw error("prior: pseudo-count N'_ijk must be greater than -1");
            row_pseudo += np;
            cell_terms += log_gamma(t.count(j, k) + np + 1.0) - log_gamma(np + 1.0);
        }
        total += log_gamma(row_pseudo + t.r) -
                 log_gamma(static_cast<double>(t.row_totals[j]) + row_pseudo + t.r) + cell_terms;
    }
    return total;
}

}  // namespace detail

// Generalized score of one family under an explicit pseudo-count matrix.
inline double generalized_family_log_score(const CountTable& t, std::span<const double> pseudocounts) {
    if (pseudocounts.size() != static_cast<std::size_t>(t.q) * t.r)
        throw error("prior: pseudo-count matrix shape does not match the family");
    return detail::family_score_impl(
        t, [&](int j, int k) { return pseudocounts[static_cast<std::size_t>(j) * t.r + k]; });
}

inline double family_log_score(const CountTable& t, const PriorSpec& prior) {
    switch (prior.kind()) {
        case PriorKind::uniform:
            return detail::family_score_impl(t, [](int, int) { return 0.0; });
        case PriorKind::noninformative: {
            const double cell = noninformative_pseudocounts(prior.alpha(), t.q, t.r).cell;
            return detail::family_score_impl(t, [cell](int, int) { return cell; });
        }
        case PriorKind::dirichlet: {
            const PseudocountTable* table = prior.family_table(t.variable, t.parents);
            if (table == nullptr)
                return detail::family_score_impl(t, [](int, int) { return 0.0; });
            if (table->q != t.q || table->r != t.r)
                throw error("prior: pseudo-count matrix shape does not match the family");
            return generalized_family_log_score(t, table->cells);
        }
    }
    throw error("prior: unknown kind");
}

// Log of the data-likelihood product, decomposed per variable; the
// structure prior P(B_S) is not included here.
struct ScoreResult {
    double log_score = 0.0;
    std::vector<double> per_family;  // one log contribution per variable
};

inline ScoreResult structure_log_score(const Dag& dag, const Database& db, const PriorSpec& prior) {
    if (dag.node_count() != db.variable_count())
        throw error("score: structure and database variable counts differ");
    ScoreResult result;
    result.per_family.reserve(db.variable_count());
    for (int i = 0; i < db.variable_count(); ++i) {
        const double s = family_log_score(tabulate_counts(db, i, dag.parents[i]), prior);
        result.per_family.push_back(s);
        result.log_score += s;
    }
    return result;
}

inline double joint_log_score(const Dag& dag, const Database& db, const PriorSpec& prior,
                              double log_structure_prior) {
    return structure_log_score(dag, db, prior).log_score + log_structure_prior;
}

}  // namespace bnscore

#endif  // BNSCORE_METRIC_HPP

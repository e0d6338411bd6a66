// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_STUDY_HPP
#define BNSCORE_STUDY_HPP

#include <string>
#include <vector>

#include "posterior.hpp"

namespace bnscore {

// Two-variable benchmark family: x1 ranges over {-omega..omega}, x2 over
// {0..omega}, and every case satisfies x2 = |x1|. counts holds the number
// of cases per value pair in the order (0, +1, -1, +2, -2, ..., -omega).
// Domains are declared up front, so zero counts leave the cardinalities
// r1 = 2*omega+1 and r2 = omega+1 intact.
struct FamilySpec {
    int omega = 1;
    std::vector<long long> counts;

    static FamilySpec uniform(int omega, long long scale) {
        FamilySpec spec;
        spec.omega = omega;
        spec.counts.assign(2 * static_cast<std::size_t>(omega) + 1, scale);
        return spec;
    }
};

inline Database family_database(const FamilySpec& spec) {
    if (spec.omega < 1)
        throw error("family: omega must be positive");
    if (spec.counts.size() != 2 * static_cast<std::size_t>(spec.omega) + 1)
        throw error("family: expected " + std::to_string(2 * spec.omega + 1) + " counts, got " +
                    std::to_string(spec.counts.size()));
    for (long long c : spec.counts)
        if (c < 0) throw error("family: counts must be nonnegative");

    const int w = spec.omega;
    Variable x1{"x1", {}};
    for (int v = -w; v <= w; ++v) x1.domain.push_back(std::to_string(v));
    Variable x2{"x2", {}};
    for (int v = 0; v <= w; ++v) x2.domain.push_back(std::to_string(v));

    long long m = 0;
    for (long long c : spec.counts) m += c;
    std::vector<std::vector<int>> columns(2);
    columns[0].reserve(m);
    columns[1].reserve(m);
    const auto append = [&](int v1, int v2, long long copies) {
        for (long long c = 0; c < copies; ++c) {
            columns[0].push_back(v1 + w);  // x1 domain index
            columns[1].push_back(v2);      // x2 domain index
        }
    };
    append(0, 0, spec.counts[0]);
    for (int v = 1; v <= w; ++v) {
        append(v, v, spec.counts[2 * v - 1]);
        append(-v, v, spec.counts[2 * v]);
    }
    return Database({std::move(x1), std::move(x2)}, std::move(columns));
}

// The canonical nine-case database: omega = 4, one case per value pair.
inline Database nine_case_db() { return family_database(FamilySpec::uniform(4, 1)); }

// Posteriors of the three two-variable structures.
struct PosteriorTriple {
    double forward = 0.0;      // {x1->x2}
    double reverse = 0.0;      // {x1<-x2}
    double independent = 0.0;  // {x1 x2}
};

namespace detail {

struct TwoVarStudy {
    PosteriorTriple posterior;
    double joint_forward = 0.0;
    double joint_reverse = 0.0;
    double joint_independent = 0.0;
    double evidence = 0.0;
};

inline TwoVarStudy two_var_study(const Database& db, const PriorSpec& prior) {
    if (db.variable_count() != 2)
        throw error("study: expected a two-variable database");
    const PosteriorTable table = posterior_over_structures(db, prior);
    TwoVarStudy out;
    out.evidence = std::exp(table.log_evidence);
    for (const PosteriorEntry& e : table.entries) {
        const double joint = std::exp(e.log_joint);
        if (!e.dag.parents[1].empty()) {
            out.posterior.forward = e.posterior;
            out.joint_forward = joint;
        } else if (!e.dag.parents[0].empty()) {
            out.posterior.reverse = e.posterior;
            out.joint_reverse = joint;
        } else {
            out.posterior.independent = e.posterior;
            out.joint_independent = joint;
        }
    }
    return out;
}

}  // namespace detail

// Joint scores (including the uniform 1/3 structure prior), evidence, and
// posteriors of the nine-case database under the uniform parameter prior.
struct NineCaseStudy {
    double joint_forward;
    double joint_reverse;
    double joint_independent;
    double evidence;
    PosteriorTriple posterior;
};

inline NineCaseStudy nine_case_study() {
    const auto r = detail::two_var_study(nine_case_db(), PriorSpec::uniform());
    return {r.joint_forward, r.joint_reverse, r.joint_independent, r.evidence, r.posterior};
}

// Posterior grid over (omega, scale) cells, uniform parameter prior,
// counts = scale at every value pair.
struct GridCell {
    int omega;
    long long scale;
    PosteriorTriple posterior;
};

inline std::vector<GridCell> posterior_grid(const std::vector<int>& omegas,
                                            const std::vector<long long>& scales) {
    std::vector<GridCell> grid;
    grid.reserve(omegas.size() * scales.size());
    for (int w : omegas)
        for (long long s : scales)
            grid.push_back({w, s,
                            detail::two_var_study(family_database(FamilySpec::uniform(w, s)),
                                                  PriorSpec::uniform())
                                .posterior});
    return grid;
}

// Posteriors of the nine-case database under the noninformative prior,
// one row per alpha. The forward and reverse structures come out equal.
struct AlphaRow {
    double alpha;
    PosteriorTriple posterior;
};

inline std::vector<AlphaRow> alpha_study(const std::vector<double>& alphas) {
    const Database db = nine_case_db();
    std::vector<AlphaRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas)
        rows.push_back({alpha, detail::two_var_study(db, PriorSpec::noninformative(alpha)).posterior});
    return rows;
}

// Posteriors at strictly increasing database scales for a fixed omega,
// uniform parameter prior; tracks the reverse structure's climb toward
// its finite limit.
struct ConvergencePoint {
    long long scale;
    PosteriorTriple posterior;
};

inline std::vector<ConvergencePoint> convergence_study(int omega, const std::vector<long long>& scales) {
    if (scales.empty())
        throw error("study: need at least one scale");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] < 1)
            throw error("study: scales must be positive");
        if (i > 0 && scales[i] <= scales[i - 1])
            throw error("study: scales must be strictly increasing");
    }
    std::vector<ConvergencePoint> points;
    points.reserve(scales.size());
    for (long long s : scales)
        points.push_back({s, detail::two_var_study(family_database(FamilySpec::uniform(omega, s)),
                                                   PriorSpec::uniform())
                                 .posterior});
    return points;
}

}  // namespace bnscore

#endif  // BNSCORE_STUDY_HPP

// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_REPORT_HPP
#define BNSCORE_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "posterior.hpp"
#include "study.hpp"

namespace bnscore {

// Round half-up at `places` decimals (0.61625 -> 0.6163); the convention
// used by every posterior column.
inline double round_half_up(double x, int places = 4) {
    const double scale = std::pow(10.0, places);
    return std::floor(x * scale + 0.5) / scale;
}

inline std::string fmt_fixed(double x, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, x);
    return buf;
}

inline std::string fmt_posterior(double x) { return fmt_fixed(round_half_up(x, 4), 4); }

// Scientific with 4 significant digits, e.g. 1.935e-17.
inline std::string fmt_joint(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

inline std::string fmt_log(double x) { return fmt_fixed(x, 6); }

// TSV posterior table: structure, log joint, posterior; sorted by
// posterior descending, then by label.
inline std::string render_posterior_tsv(const std::vector<Variable>& variables,
                                        const PosteriorTable& table) {
    struct Row {
        std::string label;
        double log_joint;
        double posterior;
    };
    std::vector<Row> rows;
    rows.reserve(table.entries.size());
    for (const PosteriorEntry& e : table.entries)
        rows.push_back({structure_label(e.dag, variables), e.log_joint, e.posterior});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.posterior != b.posterior) return a.posterior > b.posterior;
        return a.label < b.label;
    });
    std::string out = "structure\tlog_joint\tposterior\n";
    for (const Row& row : rows)
        out += row.label + '\t' + fmt_log(row.log_joint) + '\t' + fmt_posterior(row.posterior) + '\n';
    return out;
}

inline std::string render_nine_case(const NineCaseStudy& s) {
    std::string out = "structure\tjoint\tposterior\n";
    out += "{x1->x2}\t" + fmt_joint(s.joint_forward) + '\t' + fmt_posterior(s.posterior.forward) + '\n';
    out += "{x1<-x2}\t" + fmt_joint(s.joint_reverse) + '\t' + fmt_posterior(s.posterior.reverse) + '\n';
    out += "{x1 x2}\t" + fmt_joint(s.joint_independent) + '\t' +
           fmt_posterior(s.posterior.independent) + '\n';
    out += "evidence\t" + fmt_joint(s.evidence) + "\t1.0000\n";
    return out;
}

inline std::string render_grid(const std::vector<GridCell>& cells) {
    std::string out = "omega\tscale\t{x1->x2}\t{x1<-x2}\t{x1 x2}\n";
    for (const GridCell& c : cells)
        out += std::to_string(c.omega) + '\t' + std::to_string(c.scale) + '\t' +
               fmt_posterior(c.posterior.forward) + '\t' + fmt_posterior(c.posterior.reverse) + '\t' +
               fmt_posterior(c.posterior.independent) + '\n';
    return out;
}

inline std::string fmt_alpha(double alpha) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

inline std::string render_alpha_rows(const std::vector<AlphaRow>& rows) {
    std::string out = "alpha\t{x1->x2}\t{x1<-x2}\t{x1 x2}\n";
    for (const AlphaRow& row : rows)
        out += fmt_alpha(row.alpha) + '\t' + fmt_posterior(row.posterior.forward) + '\t' +
               fmt_posterior(row.posterior.reverse) + '\t' +
               fmt_posterior(row.posterior.independent) + '\n';
    return out;
}

// The database as the CSV format accepted by load_database.
inline std::string render_csv(const Database& db) {
    std::string out;
    for (int i = 0; i < db.variable_count(); ++i) {
        if (i) out += ',';
        out += db.variable(i).name;
    }
    out += '\n';
    for (int t = 0; t < db.case_count(); ++t) {
        for (int i = 0; i < db.variable_count(); ++i) {
            if (i) out += ',';
            out += db.variable(i).domain[db.value(i, t)];
        }
        out += '\n';
    }
    return out;
}

// Domain declarations for the database, one `name: labels` line each.
inline std::string render_domain_declarations(const Database& db) {
    std::string out;
    for (int i = 0; i < db.variable_count(); ++i) {
        const Variable& v = db.variable(i);
        out += v.name + ": ";
        for (int k = 0; k < v.cardinality(); ++k) {
            if (k) out += ',';
            out += v.domain[k];
        }
        out += '\n';
    }
    return out;
}

}  // namespace bnscore

#endif  // BNSCORE_REPORT_HPP

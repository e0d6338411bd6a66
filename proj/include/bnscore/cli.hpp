// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_CLI_HPP
#define BNSCORE_CLI_HPP

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "k2search.hpp"
#include "report.hpp"

namespace bnscore::cli {

// Bad flag values and the like; mapped to exit code 1, while data and
// format problems (bnscore::error) map to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream outfile(path, std::ios::binary);
    if (!outfile)
        throw error("cannot write file: " + path);
    outfile << content;
}

inline Database load_database_file(const std::string& data_path, const std::string& domains_path) {
    DomainDeclarations declared;
    if (!domains_path.empty())
        declared = parse_domain_declarations(read_file(domains_path));
    return load_database(read_file(data_path), declared);
}

// Dirichlet prior file: a JSON object
//   { "families": [ { "variable": "x2", "parents": ["x1"],
//                     "counts": [[... r values ...], ... q rows ...] } ] }
// with rows in the canonical parent-instantiation order (parents sorted
// by variable index, lowest index most significant). Families not listed
// default to all-zero pseudo-counts.
inline PriorSpec load_dirichlet_prior(const std::string& json_text, const Database& db) {
    std::map<FamilyKey, PseudocountTable> tables;
    try {
        const nlohmann::json doc = nlohmann::json::parse(json_text);
        for (const nlohmann::json& family : doc.at("families")) {
            const std::string var_name = family.at("variable").get<std::string>();
            const int variable = db.find_variable(var_name);
            if (variable < 0)
                throw error("dirichlet prior: unknown variable '" + var_name + "'");
            std::vector<int> parents;
            for (const nlohmann::json& pname : family.at("parents")) {
                const int p = db.find_variable(pname.get<std::string>());
                if (p < 0)
                    throw error("dirichlet prior: unknown parent '" + pname.get<std::string>() + "'");
                parents.push_back(p);
            }
            std::sort(parents.begin(), parents.end());
            for (std::size_t d = 1; d < parents.size(); ++d)
                if (parents[d] == parents[d - 1])
                    throw error("dirichlet prior: duplicate parent for '" + var_name + "'");

            PseudocountTable table;
            table.r = db.variable(variable).cardinality();
            long long q = 1;
            for (int p : parents) q *= db.variable(p).cardinality();
            table.q = static_cast<int>(q);
            for (const nlohmann::json& row : family.at("counts")) {
                if (static_cast<int>(row.size()) != table.r)
                    throw error("dirichlet prior: row of '" + var_name + "' has wrong width");
                for (const nlohmann::json& cell : row)
                    table.cells.push_back(cell.get<double>());
            }
            if (table.cells.size() != static_cast<std::size_t>(table.q) * table.r)
                throw error("dirichlet prior: '" + var_name + "' needs " + std::to_string(table.q) +
                            " rows of pseudo-counts");
            if (!tables.emplace(FamilyKey(variable, std::move(parents)), std::move(table)).second)
                throw error("dirichlet prior: duplicate family entry for '" + var_name + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw error(std::string("dirichlet prior: ") + e.what());
    }
    return PriorSpec::dirichlet(std::move(tables));
}

// Prior grammar: uniform | alpha=<positive real> | dirichlet=<path>
inline PriorSpec parse_prior(const std::string& text, const Database& db) {
    if (text == "uniform")
        return PriorSpec::uniform();
    if (text.rfind("alpha=", 0) == 0) {
        const std::string value = text.substr(6);
        std::size_t used = 0;
        double alpha = 0.0;
        try {
            alpha = std::stod(value, &used);
        } catch (const std::exception&) {
            throw UsageError("invalid alpha value '" + value + "'");
        }
        if (used != value.size() || !(alpha > 0.0))
            throw UsageError("alpha must be a positive real, got '" + value + "'");
        return PriorSpec::noninformative(alpha);
    }
    if (text.rfind("dirichlet=", 0) == 0) {
        const std::string path = text.substr(10);
        if (path.empty())
            throw UsageError("dirichlet prior needs a file path");
        return load_dirichlet_prior(read_file(path), db);
    }
    throw UsageError("unrecognized prior '" + text + "' (expected uniform | alpha=<x> | dirichlet=<path>)");
}

inline std::vector<int> parse_order(const std::string& text, const Database& db) {
    std::vector<int> order;
    if (text.empty()) {
        order.resize(db.variable_count());
        std::iota(order.begin(), order.end(), 0);
        return order;
    }
    for (const std::string& piece : detail::split(text, ',')) {
        const std::string name = detail::trim(piece);
        const int i = db.find_variable(name);
        if (i < 0)
            throw UsageError("order: unknown variable '" + name + "'");
        order.push_back(i);
    }
    return order;
}

inline std::vector<long long> parse_count_list(const std::string& text) {
    std::vector<long long> counts;
    for (const std::string& piece : detail::split(text, ',')) {
        const std::string token = detail::trim(piece);
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw UsageError("counts: invalid entry '" + token + "'");
        }
        if (used != token.size() || value < 0)
            throw UsageError("counts: entries must be nonnegative integers, got '" + token + "'");
        counts.push_back(value);
    }
    return counts;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scoring and structure induction for discrete Bayesian networks", "bnscore"};
    app.require_subcommand(1);

    std::string data_path, domains_path, prior_text = "uniform", out_path;
    std::string structure_text, order_text, counts_text;
    int max_parents = -1;  // -1: no explicit bound, use n-1
    int max_nodes = kDefaultEnumerationCap;
    int omega = 0;
    long long scale = 1;
    std::string study;
    std::vector<double> alphas;

    const auto add_data_options = [&](CLI::App* cmd) {
        cmd->add_option("--data", data_path, "CSV database (header row of variable names)")->required();
        cmd->add_option("--domains", domains_path, "domain declaration file overriding inferred domains");
        cmd->add_option("--prior", prior_text, "uniform | alpha=<x> | dirichlet=<path>");
        cmd->add_option("--out", out_path, "write the report to this file instead of stdout");
    };

    CLI::App* score_cmd = app.add_subcommand("score", "Score one structure against a database");
    add_data_options(score_cmd);
    score_cmd->add_option("--structure", structure_text,
                          "edge list 'parent->child;...'; empty means no edges");

    CLI::App* enum_cmd = app.add_subcommand("enumerate", "Exact posterior over all structures");
    add_data_options(enum_cmd);
    enum_cmd->add_option("--max-nodes", max_nodes, "enumeration cap on the variable count")
        ->check(CLI::PositiveNumber);

    CLI::App* search_cmd = app.add_subcommand("search", "Greedy ordered parent search");
    add_data_options(search_cmd);
    search_cmd->add_option("--order", order_text, "comma-separated variable names; default: column order");
    search_cmd->add_option("--max-parents", max_parents, "parent bound per node; default: n-1")
        ->check(CLI::NonNegativeNumber);

    CLI::App* gen_cmd = app.add_subcommand("gen-db", "Generate a benchmark family database as CSV");
    gen_cmd->add_option("--omega", omega, "value range parameter")->required()->check(CLI::PositiveNumber);
    CLI::Option* counts_opt =
        gen_cmd->add_option("--counts", counts_text, "comma list of 2*omega+1 case counts");
    gen_cmd->add_option("--scale", scale, "uniform count per value pair (default 1)")
        ->check(CLI::PositiveNumber)
        ->excludes(counts_opt);
    gen_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");
    gen_cmd->add_option("--domains", domains_path, "also write a domain declaration file here");

    CLI::App* repro_cmd = app.add_subcommand("reproduce", "Print a built-in study report");
    repro_cmd->add_option("study", study, "one of: sec31, table3, table4")
        ->required()
        ->check(CLI::IsMember({"sec31", "table3", "table4"}));
    repro_cmd->add_option("--alpha", alphas, "alpha rows for the table4 study (default: 45 15)")
        ->check(CLI::PositiveNumber);
    repro_cmd->add_option("--out", out_path, "write the report to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        std::string report;
        if (*score_cmd) {
            const Database db = load_database_file(data_path, domains_path);
            const PriorSpec prior = parse_prior(prior_text, db);
            const Dag dag = parse_structure(structure_text, db.variables());
            const ScoreResult score = structure_log_score(dag, db, prior);
            report += "structure\t" + structure_label(dag, db.variables()) + '\n';
            report += "log_score\t" + fmt_log(score.log_score) + '\n';
            report += "score\t" + fmt_joint(std::exp(score.log_score)) + '\n';
        } else if (*enum_cmd) {
            const Database db = load_database_file(data_path, domains_path);
            const PriorSpec prior = parse_prior(prior_text, db);
            report = render_posterior_tsv(db.variables(), posterior_over_structures(db, prior, max_nodes));
        } else if (*search_cmd) {
            const Database db = load_database_file(data_path, domains_path);
            const PriorSpec prior = parse_prior(prior_text, db);
            SearchConfig config;
            config.order = parse_order(order_text, db);
            config.max_parents = max_parents < 0 ? std::max(0, db.variable_count() - 1) : max_parents;
            config.prior = prior;
            const SearchResult result = k2_search(db, config);
            report += "structure\t" + to_edge_list(result.dag, db.variables()) + '\n';
            report += "log_score\t" + fmt_log(result.total_log_score) + '\n';
        } else if (*gen_cmd) {
            FamilySpec spec = counts_text.empty() ? FamilySpec::uniform(omega, scale)
                                                  : FamilySpec{omega, parse_count_list(counts_text)};
            const Database db = family_database(spec);
            report = render_csv(db);
            if (!domains_path.empty())
                write_file(domains_path, render_domain_declarations(db));
        } else if (*repro_cmd) {
            if (study == "sec31") {
                report = render_nine_case(nine_case_study());
            } else if (study == "table3") {
                report = render_grid(posterior_grid({1, 2, 4, 8, 16}, {1, 10, 100}));
            } else {
                if (alphas.empty()) alphas = {45.0, 15.0};
                report = render_alpha_rows(alpha_study(alphas));
            }
        }

        if (out_path.empty())
            out << report;
        else
            write_file(out_path, report);
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace bnscore::cli

#endif  // BNSCORE_CLI_HPP

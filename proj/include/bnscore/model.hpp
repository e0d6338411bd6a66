// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_MODEL_HPP
#define BNSCORE_MODEL_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bnscore {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A named categorical variable with an ordered domain of value labels.
// The position of a label in the domain is its value index k.
struct Variable {
    std::string name;
    std::vector<std::string> domain;

    int cardinality() const { return static_cast<int>(domain.size()); }

    int value_index(std::string_view label) const {
        for (int k = 0; k < cardinality(); ++k)
            if (domain[k] == label) return k;
        return -1;
    }
};

// Immutable table of categorical observations over a fixed variable list,
// stored column-major as domain indices.
class Database {
public:
    Database(std::vector<Variable> variables, std::vector<std::vector<int>> columns)
        : vars_(std::move(variables)), cols_(std::move(columns)) {
        if (cols_.size() != vars_.size())
            throw error("database: column count does not match variable count");
        m_ = cols_.empty() ? 0 : static_cast<int>(cols_[0].size());
        std::set<std::string> names;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const Variable& v = vars_[i];
            if (v.domain.empty())
                throw error("variable '" + v.name + "' has an empty domain");
            std::set<std::string> labels(v.domain.begin(), v.domain.end());
            if (static_cast<int>(labels.size()) != v.cardinality())
                throw error("variable '" + v.name + "' has duplicate domain labels");
            if (!names.insert(v.name).second)
                throw error("duplicate variable name '" + v.name + "'");
            if (static_cast<int>(cols_[i].size()) != m_)
                throw error("database: ragged columns");
            for (int code : cols_[i])
                if (code < 0 || code >= v.cardinality())
                    throw error("database: value index out of range for '" + v.name + "'");
        }
    }

    int variable_count() const { return static_cast<int>(vars_.size()); }
    int case_count() const { return m_; }
    const Variable& variable(int i) const { return vars_[i]; }
    const std::vector<Variable>& variables() const { return vars_; }
    int value(int variable, int row) const { return cols_[variable][row]; }

    int find_variable(std::string_view name) const {
        for (int i = 0; i < variable_count(); ++i)
            if (vars_[i].name == name) return i;
        return -1;
    }

private:
    std::vector<Variable> vars_;
    std::vector<std::vector<int>> cols_;
    int m_ = 0;
};

using DomainDeclarations = std::map<std::string, std::vector<std::string>>;

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            break;
        }
        out.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

// Splits into lines, tolerating CRLF. A trailing final newline does not
// produce an extra empty line.
inline std::vector<std::string> lines(std::string_view text) {
    std::vector<std::string> out = split(text, '\n');
    for (std::string& line : out)
        if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

}  // namespace detail

// Parses domain declarations, one per line: `name: label1,label2,...`.
// Blank lines are ignored; labels are trimmed of surrounding blanks.
inline DomainDeclarations parse_domain_declarations(std::string_view text) {
    DomainDeclarations out;
    for (const std::string& raw : detail::lines(text)) {
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw error("domain declaration: expected 'name: labels' in '" + line + "'");
        const std::string name = detail::trim(std::string_view(line).substr(0, colon));
        if (name.empty())
            throw error("domain declaration: empty variable name in '" + line + "'");
        std::vector<std::string> labels;
        for (const std::string& piece : detail::split(std::string_view(line).substr(colon + 1), ','))
            labels.push_back(detail::trim(piece));
        for (const std::string& label : labels)
            if (label.empty())
                throw error("domain declaration: empty label for '" + name + "'");
        if (!out.emplace(name, std::move(labels)).second)
            throw error("domain declaration: duplicate entry for '" + name + "'");
    }
    return out;
}

// Loads a comma-separated table: first row is the header of variable
// names, every following row assigns one label per variable. Cells are
// opaque labels and must be non-empty. A variable's domain is the
// lexicographically sorted set of labels seen in its column unless a
// declaration overrides it.
inline Database load_database(std::string_view csv_text, const DomainDeclarations& declared = {}) {
    const std::vector<std::string> rows = detail::lines(csv_text);
    if (rows.empty())
        throw error("csv: empty input, expected a header row");

    const std::vector<std::string> header = detail::split(rows[0], ',');
    const int n = static_cast<int>(header.size());
    std::set<std::string> seen_names;
    for (const std::string& name : header) {
        if (name.empty()) throw error("csv: empty variable name in header");
        if (!seen_names.insert(name).second)
            throw error("csv: duplicate variable name '" + name + "' in header");
    }

    const int m = static_cast<int>(rows.size()) - 1;
    std::vector<std::vector<std::string>> cells(n);
    for (int t = 0; t < m; ++t) {
        std::vector<std::string> fields = detail::split(rows[t + 1], ',');
        if (static_cast<int>(fields.size()) != n)
            throw error("csv: row " + std::to_string(t + 2) + " has " +
                        std::to_string(fields.size()) + " fields, expected " + std::to_string(n));
        for (int i = 0; i < n; ++i) {
            if (fields[i].empty())
                throw error("csv: missing value at row " + std::to_string(t + 2) +
                            ", variable '" + header[i] + "'");
            cells[i].push_back(std::move(fields[i]));
        }
    }

    std::vector<Variable> variables;
    std::vector<std::vector<int>> columns;
    for (int i = 0; i < n; ++i) {
        Variable var{header[i], {}};
        if (auto it = declared.find(header[i]); it != declared.end()) {
            var.domain = it->second;
        } else {
            std::set<std::string> distinct(cells[i].begin(), cells[i].end());
            var.domain.assign(distinct.begin(), distinct.end());
            if (var.domain.empty())
                throw error("csv: cannot infer a domain for '" + header[i] +
                            "' from an empty database; declare one explicitly");
        }
        std::vector<int> column;
        column.reserve(cells[i].size());
        for (const std::string& label : cells[i]) {
            const int k = var.value_index(label);
            if (k < 0)
                throw error("csv: value '" + label + "' of variable '" + header[i] +
                            "' is not in its declared domain");
            column.push_back(k);
        }
        variables.push_back(std::move(var));
        columns.push_back(std::move(column));
    }
    return Database(std::move(variables), std::move(columns));
}

// Directed structure as per-node parent lists; parent indices are sorted.
struct Dag {
    std::vector<std::vector<int>> parents;

    int node_count() const { return static_cast<int>(parents.size()); }

    static Dag disconnected(int n) {
        Dag d;
        d.parents.resize(n);
        return d;
    }

    bool operator==(const Dag&) const = default;
};

// Kahn's algorithm over the parent lists.
inline bool is_acyclic(const Dag& dag) {
    const int n = dag.node_count();
    std::vector<int> indegree(n);
    std::vector<std::vector<int>> children(n);
    for (int c = 0; c < n; ++c) {
        indegree[c] = static_cast<int>(dag.parents[c].size());
        for (int p : dag.parents[c]) children[p].push_back(c);
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indegree[v] == 0) stack.push_back(v);
    int removed = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++removed;
        for (int c : children[v])
            if (--indegree[c] == 0) stack.push_back(c);
    }
    return removed == n;
}

// Parses the edge-list grammar: semicolon-separated `parent->child`
// entries; the empty string denotes the structure with no edges.
inline Dag parse_structure(std::string_view text, const std::vector<Variable>& variables) {
    Dag dag = Dag::disconnected(static_cast<int>(variables.size()));
    auto index_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < variables.size(); ++i)
            if (variables[i].name == name) return static_cast<int>(i);
        throw error("structure: unknown variable '" + name + "'");
    };
    std::set<std::pair<int, int>> edges;
    for (const std::string& piece : detail::split(text, ';')) {
        const std::string edge = detail::trim(piece);
        if (edge.empty()) continue;
        const std::size_t arrow = edge.find("->");
        if (arrow == std::string::npos)
            throw error("structure: expected 'parent->child' in '" + edge + "'");
        const int parent = index_of(detail::trim(std::string_view(edge).substr(0, arrow)));
        const int child = index_of(detail::trim(std::string_view(edge).substr(arrow + 2)));
        if (parent == child)
            throw error("structure: variable '" + variables[child].name + "' cannot be its own parent");
        if (!edges.emplace(parent, child).second)
            throw error("structure: duplicate edge '" + edge + "'");
        dag.parents[child].push_back(parent);
    }
    for (std::vector<int>& ps : dag.parents) std::sort(ps.begin(), ps.end());
    if (!is_acyclic(dag))
        throw error("structure: cycle detected");
    return dag;
}

// Edge-list form accepted back by parse_structure, e.g. "x1->x2;x1->x3".
inline std::string to_edge_list(const Dag& dag, const std::vector<Variable>& variables) {
    std::string out;
    for (int c = 0; c < dag.node_count(); ++c)
        for (int p : dag.parents[c]) {
            if (!out.empty()) out += ';';
            out += variables[p].name + "->" + variables[c].name;
        }
    return out;
}

// Display form for reports. Each adjacent pair is anchored on its
// lower-index endpoint ("a->b" or "a<-b"); a structure with no edges
// lists the variable names, e.g. "{x1 x2}". Variables not touching any
// edge are appended after the edges.
inline std::string structure_label(const Dag& dag, const std::vector<Variable>& variables) {
    const int n = dag.node_count();
    std::vector<std::vector<bool>> has_edge(n, std::vector<bool>(n, false));
    std::vector<bool> touched(n, false);
    for (int c = 0; c < n; ++c)
        for (int p : dag.parents[c]) {
            has_edge[p][c] = true;
            touched[p] = touched[c] = true;
        }
    std::string out = "{";
    bool any_edge = false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!has_edge[i][j] && !has_edge[j][i]) continue;
            if (any_edge) out += ';';
            out += variables[i].name + (has_edge[i][j] ? "->" : "<-") + variables[j].name;
            any_edge = true;
        }
    bool first_name = true;
    for (int i = 0; i < n; ++i) {
        if (any_edge && touched[i]) continue;
        if (!first_name || any_edge) out += ' ';
        out += variables[i].name;
        first_name = false;
    }
    out += '}';
    return out;
}

// Sufficient statistics for one (variable, parent set) family. Parent
// instantiations are indexed in mixed-radix order with the lowest-numbered
// parent as the most significant digit; j runs over all q = prod r_parent
// combinations, observed or not.
struct CountTable {
    int variable = 0;
    std::vector<int> parents;   // sorted
    std::vector<int> radices;   // cardinality of each parent
    int q = 1;
    int r = 1;
    std::vector<long long> counts;      // q*r, row-major: counts[j*r + k]
    std::vector<long long> row_totals;  // length q

    long long count(int j, int k) const { return counts[static_cast<std::size_t>(j) * r + k]; }

    // Mixed-radix decode of instantiation j into per-parent value indices.
    std::vector<int> instantiation(int j) const {
        std::vector<int> digits(parents.size());
        for (int d = static_cast<int>(parents.size()) - 1; d >= 0; --d) {
            digits[d] = j % radices[d];
            j /= radices[d];
        }
        return digits;
    }
};

inline CountTable tabulate_counts(const Database& db, int variable, std::vector<int> parents) {
    const int n = db.variable_count();
    if (variable < 0 || variable >= n)
        throw error("counts: variable index out of range");
    std::sort(parents.begin(), parents.end());
    for (std::size_t d = 0; d < parents.size(); ++d) {
        if (parents[d] < 0 || parents[d] >= n)
            throw error("counts: parent index out of range");
        if (parents[d] == variable)
            throw error("counts: variable cannot be its own parent");
        if (d > 0 && parents[d] == parents[d - 1])
            throw error("counts: duplicate parent index");
    }

    CountTable t;
    t.variable = variable;
    t.parents = std::move(parents);
    t.r = db.variable(variable).cardinality();
    long long q = 1;
    for (int p : t.parents) {
        const int card = db.variable(p).cardinality();
        t.radices.push_back(card);
        q *= card;
        if (q * t.r > 100'000'000LL)
            throw error("counts: parent instantiation space is too large");
    }
    t.q = static_cast<int>(q);
    t.counts.assign(static_cast<std::size_t>(t.q) * t.r, 0);
    t.row_totals.assign(t.q, 0);

    for (int row = 0; row < db.case_count(); ++row) {
        long long j = 0;
        for (std::size_t d = 0; d < t.parents.size(); ++d)
            j = j * t.radices[d] + db.value(t.parents[d], row);
        ++t.counts[static_cast<std::size_t>(j) * t.r + db.value(variable, row)];
        ++t.row_totals[j];
    }
    return t;
}

// The parent value labels w_ij for instantiation j.
inline std::vector<std::string> instantiation_labels(const Database& db, const CountTable& t, int j) {
    const std::vector<int> digits = t.instantiation(j);
    std::vector<std::string> labels;
    labels.reserve(digits.size());
    for (std::size_t d = 0; d < digits.size(); ++d)
        labels.push_back(db.variable(t.parents[d]).domain[digits[d]]);
    return labels;
}

}  // namespace bnscore

#endif  // BNSCORE_MODEL_HPP

// Apache License, Version 2.0, refer to LICENSE.txt

#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <bnscore/metric.hpp>
#include <bnscore/study.hpp>

#include "oracle.hpp"
#include "testutil.hpp"

using namespace bnscore;
using Catch::Matchers::WithinAbs;

TEST_CASE("log gamma at classic points") {
    REQUIRE_THAT(log_gamma(1.0), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(log_gamma(2.0), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(log_gamma(5.0), WithinAbs(std::log(24.0), 1e-12));
    REQUIRE_THAT(log_gamma(0.5), WithinAbs(0.5 * std::log(std::numbers::pi), 1e-12));
}

TEST_CASE("log gamma matches exact factorials up to 170!") {
    long double log_factorial = 0.0L;  // ln((z-1)!) accumulated exactly enough
    for (int z = 1; z <= 171; ++z) {
        const double expected = static_cast<double>(log_factorial);
        const double got = log_gamma(static_cast<double>(z));
        REQUIRE_THAT(got, WithinAbs(expected, 1e-10 * std::max(1.0, std::abs(expected))));
        log_factorial += std::log(static_cast<long double>(z));
    }
}

TEST_CASE("log gamma satisfies the duplication formula") {
    const double log_sqrt_pi = 0.5 * std::log(std::numbers::pi);
    for (double z : {0.13, 0.75, 1.5, 3.25, 17.0, 123.456, 9876.5}) {
        const double lhs = log_gamma(2.0 * z);
        const double rhs = log_gamma(z) + log_gamma(z + 0.5) + (2.0 * z - 1.0) * std::log(2.0) - log_sqrt_pi;
        REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-9 * std::max(1.0, std::abs(lhs))));
    }
}

TEST_CASE("log gamma agrees with the C library") {
    for (double z : {0.01, 0.4, 1.0, 2.7, 55.5, 1e4, 9e5}) {
        REQUIRE_THAT(log_gamma(z), WithinAbs(std::lgamma(z), 1e-9 * std::max(1.0, std::abs(std::lgamma(z)))));
    }
}

TEST_CASE("log gamma rejects nonpositive arguments") {
    REQUIRE_THROWS_AS(log_gamma(0.0), error);
    REQUIRE_THROWS_AS(log_gamma(-3.0), error);
    REQUIRE_THROWS_AS(log_gamma(std::nan("")), error);
}

TEST_CASE("noninformative pseudocounts") {
    const Pseudocounts a = noninformative_pseudocounts(45.0, 9, 5);
    REQUIRE_THAT(a.cell, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(a.row, WithinAbs(0.0, 1e-15));

    const Pseudocounts b = noninformative_pseudocounts(45.0, 1, 9);
    REQUIRE_THAT(b.cell, WithinAbs(4.0, 1e-15));
    REQUIRE_THAT(b.row, WithinAbs(36.0, 1e-15));

    const Pseudocounts c = noninformative_pseudocounts(15.0, 9, 5);
    REQUIRE_THAT(c.cell, WithinAbs(-2.0 / 3.0, 1e-15));
    REQUIRE_THAT(c.row, WithinAbs(-10.0 / 3.0, 1e-15));

    REQUIRE_THROWS_AS(noninformative_pseudocounts(0.0, 1, 2), error);
    REQUIRE_THROWS_AS(noninformative_pseudocounts(-1.0, 1, 2), error);
}

TEST_CASE("row pseudocount is r times the cell pseudocount") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> alpha_dist(0.01, 200.0);
    std::uniform_int_distribution<int> dim(1, 12);
    for (int i = 0; i < 50; ++i) {
        const int q = dim(rng), r = dim(rng);
        const Pseudocounts p = noninformative_pseudocounts(alpha_dist(rng), q, r);
        REQUIRE_THAT(p.row, WithinAbs(r * p.cell, 1e-9));
    }
}

TEST_CASE("family score of a single binary observation is log(1/2)") {
    const Database db = load_database("a\n0\n", DomainDeclarations{{"a", {"0", "1"}}});
    const double s = family_log_score(tabulate_counts(db, 0, {}), PriorSpec::uniform());
    REQUIRE_THAT(s, WithinAbs(std::log(0.5), 1e-12));
}

TEST_CASE("empty families contribute exactly zero for every prior kind") {
    const Database db =
        load_database("a,b\n", DomainDeclarations{{"a", {"0", "1"}}, {"b", {"0", "1", "2"}}});
    const CountTable t = tabulate_counts(db, 0, {1});
    REQUIRE(family_log_score(t, PriorSpec::uniform()) == 0.0);
    REQUIRE(family_log_score(t, PriorSpec::noninformative(7.5)) == 0.0);
    const std::vector<double> pseudo(static_cast<std::size_t>(t.q) * t.r, 0.25);
    REQUIRE(generalized_family_log_score(t, pseudo) == 0.0);
}

TEST_CASE("nine-case family scores against closed forms") {
    const Database db = load_database(testutil::kNineCaseCsv);
    const PriorSpec uniform = PriorSpec::uniform();

    // x1 marginal: 8!/17!
    REQUIRE_THAT(family_log_score(tabulate_counts(db, 0, {}), uniform),
                 WithinAbs(-22.9004705473916387, 1e-9));
    // x2 marginal: 4! * 16 / 13!
    REQUIRE_THAT(family_log_score(tabulate_counts(db, 1, {}), uniform),
                 WithinAbs(-16.601521300535696, 1e-9));
    // x2 | x1: (1/5)^9
    REQUIRE_THAT(family_log_score(tabulate_counts(db, 1, {0}), uniform),
                 WithinAbs(-14.4849412119069034, 1e-9));
    // x1 | x2: (1/9) * (1/90)^4
    REQUIRE_THAT(family_log_score(tabulate_counts(db, 0, {1}), uniform),
                 WithinAbs(-20.1964632586572797, 1e-9));
}

TEST_CASE("structure scores reproduce the nine-case joints") {
    const Database db = load_database(testutil::kNineCaseCsv);
    const auto vars = db.variables();
    const PriorSpec uniform = PriorSpec::uniform();

    const ScoreResult forward = structure_log_score(parse_structure("x1->x2", vars), db, uniform);
    const ScoreResult reverse = structure_log_score(parse_structure("x2->x1", vars), db, uniform);
    const ScoreResult independent = structure_log_score(parse_structure("", vars), db, uniform);

    REQUIRE_THAT(std::exp(forward.log_score) / 3.0, WithinAbs(1.935e-17, 1e-20));
    REQUIRE_THAT(std::exp(reverse.log_score) / 3.0, WithinAbs(3.481e-17, 1e-20));
    REQUIRE_THAT(std::exp(independent.log_score) / 3.0, WithinAbs(2.330e-18, 1e-20));

    for (const ScoreResult* r : {&forward, &reverse, &independent}) {
        REQUIRE(r->per_family.size() == 2);
        REQUIRE_THAT(r->log_score, WithinAbs(r->per_family[0] + r->per_family[1], 1e-12));
    }
}

TEST_CASE("joint log score adds the structure prior") {
    const Database db = load_database(testutil::kNineCaseCsv);
    const auto vars = db.variables();
    const Dag reverse = parse_structure("x2->x1", vars);

    const double joint = joint_log_score(reverse, db, PriorSpec::uniform(), std::log(1.0 / 3.0));
    REQUIRE_THAT(joint, WithinAbs(-37.8965968478610854, 1e-9));

    const Database empty =
        load_database("a,b\n", DomainDeclarations{{"a", {"0", "1"}}, {"b", {"0", "1"}}});
    REQUIRE(joint_log_score(parse_structure("a->b", empty.variables()), empty, PriorSpec::uniform(), 0.0) ==
            0.0);
}

TEST_CASE("joint score differences cancel a shared structure prior") {
    std::mt19937 rng(31);
    for (int round = 0; round < 10; ++round) {
        const Database db = testutil::random_database(rng, 3, 4, 20, 3);
        const Dag a = Dag{{{}, {0}, {1}}};
        const Dag b = Dag::disconnected(3);
        const double lsp = -std::abs(std::normal_distribution<double>(0.0, 2.0)(rng));
        const double diff_joint = joint_log_score(a, db, PriorSpec::uniform(), lsp) -
                                  joint_log_score(b, db, PriorSpec::uniform(), lsp);
        const double diff_structure = structure_log_score(a, db, PriorSpec::uniform()).log_score -
                                      structure_log_score(b, db, PriorSpec::uniform()).log_score;
        REQUIRE_THAT(diff_joint, WithinAbs(diff_structure, 1e-12));
    }
}

TEST_CASE("uniform prior matches the exact factorial oracle") {
    std::mt19937 rng(424242);
    for (int round = 0; round < 60; ++round) {
        const CountTable t = testutil::random_count_table(rng, 4, 4, 10);
        const double expected = oracle::log_of(oracle::uniform_family(t));
        const double got = family_log_score(t, PriorSpec::uniform());
        REQUIRE_THAT(got, WithinAbs(expected, 1e-9 * std::max(1.0, std::abs(expected))));
    }
}

TEST_CASE("integer pseudocounts match the exact extended-form oracle") {
    std::mt19937 rng(515151);
    std::uniform_int_distribution<long long> np_dist(0, 5);
    for (int round = 0; round < 60; ++round) {
        const CountTable t = testutil::random_count_table(rng, 4, 4, 10);
        std::vector<long long> np_int(static_cast<std::size_t>(t.q) * t.r);
        std::vector<double> np(np_int.size());
        for (std::size_t i = 0; i < np_int.size(); ++i) {
            np_int[i] = np_dist(rng);
            np[i] = static_cast<double>(np_int[i]);
        }
        const double expected = oracle::log_of(oracle::dirichlet_family(t, np_int));
        const double got = generalized_family_log_score(t, np);
        REQUIRE_THAT(got, WithinAbs(expected, 1e-9 * std::max(1.0, std::abs(expected))));
    }
}

TEST_CASE("non-integer pseudocounts against a fixed reference") {
    // q=1, r=2, N=(2,1), N'=(0.5,0.25); reference evaluated with 40-digit
    // Gamma arithmetic.
    CountTable t;
    t.q = 1;
    t.r = 2;
    t.counts = {2, 1};
    t.row_totals = {3};
    const std::vector<double> np{0.5, 0.25};
    REQUIRE_THAT(generalized_family_log_score(t, np), WithinAbs(-2.34660197841082001, 1e-10));
}

TEST_CASE("alpha equal to q*r reduces to the uniform prior") {
    const Database db = load_database(testutil::kNineCaseCsv);
    const CountTable t = tabulate_counts(db, 1, {0});  // q = 9, r = 5
    REQUIRE_THAT(family_log_score(t, PriorSpec::noninformative(45.0)),
                 WithinAbs(family_log_score(t, PriorSpec::uniform()), 1e-9));
}

TEST_CASE("explicit dirichlet tables are validated") {
    REQUIRE_THROWS_AS(PriorSpec::dirichlet({{FamilyKey(0, {}), PseudocountTable{1, 2, {0.5, -1.0}}}}),
                      error);
    REQUIRE_THROWS_AS(PriorSpec::dirichlet({{FamilyKey(0, {}), PseudocountTable{1, 2, {0.5}}}}), error);
    REQUIRE_THROWS_AS(PriorSpec::noninformative(-2.0), error);

    const Database db = load_database("a,b\n0,0\n1,1\n");
    const CountTable t = tabulate_counts(db, 0, {1});

    // mismatched shape for the family in use
    const PriorSpec bad = PriorSpec::dirichlet({{FamilyKey(0, {1}), PseudocountTable{1, 2, {0.0, 0.0}}}});
    REQUIRE_THROWS_AS(family_log_score(t, bad), error);

    // families without an entry fall back to all-zero pseudo-counts
    const PriorSpec sparse = PriorSpec::dirichlet({});
    REQUIRE_THAT(family_log_score(t, sparse),
                 WithinAbs(family_log_score(t, PriorSpec::uniform()), 1e-12));
}

TEST_CASE("scores depend on counts, not on value labels") {
    const Database db = load_database(testutil::kNineCaseCsv);
    // squares instead of magnitudes: same category mapping, new labels
    std::vector<Variable> vars = db.variables();
    std::map<std::string, std::string> squared{
        {"0", "0"}, {"1", "1"}, {"2", "4"}, {"3", "9"}, {"4", "16"}};
    std::vector<std::string> old_domain = vars[1].domain;
    for (std::string& label : vars[1].domain) label = squared.at(label);
    // re-sort the relabeled domain and remap codes so construction invariants hold
    std::vector<std::string> sorted_domain = vars[1].domain;
    std::sort(sorted_domain.begin(), sorted_domain.end());
    std::vector<int> code_map(old_domain.size());
    for (std::size_t k = 0; k < old_domain.size(); ++k) {
        const auto it = std::find(sorted_domain.begin(), sorted_domain.end(), squared.at(old_domain[k]));
        code_map[k] = static_cast<int>(it - sorted_domain.begin());
    }
    vars[1].domain = sorted_domain;
    std::vector<std::vector<int>> cols(2);
    for (int t = 0; t < db.case_count(); ++t) {
        cols[0].push_back(db.value(0, t));
        cols[1].push_back(code_map[db.value(1, t)]);
    }
    const Database relabeled(std::move(vars), std::move(cols));

    for (const char* text : {"x1->x2", "x2->x1", ""}) {
        const Dag dag = parse_structure(text, db.variables());
        for (const PriorSpec& prior : {PriorSpec::uniform(), PriorSpec::noninformative(15.0)}) {
            REQUIRE_THAT(structure_log_score(dag, relabeled, prior).log_score,
                         WithinAbs(structure_log_score(dag, db, prior).log_score, 1e-12));
        }
    }
}

TEST_CASE("appending a case never raises the score") {
    std::mt19937 rng(616161);
    for (int round = 0; round < 20; ++round) {
        const Database db = testutil::random_database(rng, 3, 2, 15, 3);
        std::vector<std::vector<int>> extended(3);
        for (int i = 0; i < 3; ++i) {
            for (int t = 0; t < db.case_count(); ++t) extended[i].push_back(db.value(i, t));
            std::uniform_int_distribution<int> value(0, db.variable(i).cardinality() - 1);
            extended[i].push_back(value(rng));
        }
        const Database longer(db.variables(), std::move(extended));

        const Dag dag = Dag{{{}, {0}, {0, 1}}};
        for (const PriorSpec& prior : {PriorSpec::uniform(), PriorSpec::noninformative(3.0)}) {
            const double before = structure_log_score(dag, db, prior).log_score;
            const double after = structure_log_score(dag, longer, prior).log_score;
            REQUIRE(after <= before + 1e-12);
            REQUIRE(after <= 1e-12);
        }
    }
}

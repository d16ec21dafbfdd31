#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <genfinder/sat.hpp>

using namespace genfinder;

namespace {

// Canonical unsatisfiable instance used throughout the project.
const char* kUnsatText = "p 1in3 5 4\n1 2 3 0\n1 2 4 0\n3 4 5 0\n1 2 5 0\n";

}  // namespace

TEST_CASE("parse_sat reads a single clause") {
    const SatInstance inst = parse_sat("p 1in3 3 1\n1 2 3 0\n");
    CHECK(inst.num_vars == 3);
    REQUIRE(inst.clauses.size() == 1);
    CHECK(inst.clauses[0] == std::array<int, 3>{1, 2, 3});
}

TEST_CASE("parse_sat reads the canonical unsat instance and comments") {
    const SatInstance inst = parse_sat(std::string("c comment line\n") + kUnsatText);
    CHECK(inst.num_vars == 5);
    CHECK(inst.clauses.size() == 4);

    // independently enumerate all 32 assignments: none satisfies
    bool any = false;
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<bool> x(5);
        for (int v = 0; v < 5; ++v) x[std::size_t(v)] = (mask >> v) & 1;
        bool ok = true;
        for (const auto& cl : inst.clauses) {
            int trues = 0;
            for (const int v : cl) trues += x[std::size_t(v) - 1];
            ok &= trues == 1;
        }
        any |= ok;
    }
    CHECK_FALSE(any);
}

TEST_CASE("parse_sat rejects malformed input") {
    CHECK_THROWS_AS(parse_sat("garbage\n"), ParseError);
    CHECK_THROWS_AS(parse_sat("p 1in3 3 2\n1 2 3 0\n"), ParseError);   // count mismatch
    CHECK_THROWS_AS(parse_sat("p 1in3 3 1\n1 2 3\n"), ParseError);     // missing terminator
    CHECK_THROWS_AS(parse_sat("p 1in3 3 1\n1 1 2 0\n"), InvalidClause);
    CHECK_THROWS_AS(parse_sat("p 1in3 3 1\n1 2 4 0\n"), InvalidClause);  // out of range
    CHECK_THROWS_AS(parse_sat(""), ParseError);
}

TEST_CASE("sat text round trip") {
    const SatInstance inst = parse_sat(kUnsatText);
    const SatInstance back = parse_sat(sat_to_text(inst));
    CHECK(back.num_vars == inst.num_vars);
    CHECK(back.clauses == inst.clauses);
}

TEST_CASE("brute force finds the least true-set on a single clause") {
    const SatInstance inst = parse_sat("p 1in3 3 1\n1 2 3 0\n");
    const SatResult res = sat_brute_force(inst);
    REQUIRE(res.satisfiable);
    CHECK(res.assignment == std::vector<bool>{true, false, false});
}

TEST_CASE("brute force on the canonical unsat instance") {
    CHECK_FALSE(sat_brute_force(parse_sat(kUnsatText)).satisfiable);
}

TEST_CASE("brute force with no clauses returns all-false") {
    SatInstance inst;
    inst.num_vars = 4;
    const SatResult res = sat_brute_force(inst);
    REQUIRE(res.satisfiable);
    CHECK(res.assignment == std::vector<bool>{false, false, false, false});
}

TEST_CASE("brute force respects the variable cap") {
    SatInstance inst;
    inst.num_vars = 31;
    CHECK_THROWS_AS(sat_brute_force(inst), TooLarge);
}

TEST_CASE("clause_satisfied implements exactly-one semantics") {
    const SatInstance inst = parse_sat("p 1in3 3 1\n1 2 3 0\n");
    CHECK(clause_satisfied(inst, 0, {true, false, false}));
    CHECK(clause_satisfied(inst, 0, {false, true, false}));
    CHECK_FALSE(clause_satisfied(inst, 0, {true, true, false}));
    CHECK_FALSE(clause_satisfied(inst, 0, {false, false, false}));
    CHECK_FALSE(clause_satisfied(inst, 0, {true, true, true}));
}

TEST_CASE("canonical corpus covers the expected shapes") {
    const auto corpus = canonical_corpus(5, 4);
    REQUIRE(!corpus.empty());

    // the zero-clause representative comes first
    CHECK(corpus.front().clauses.empty());

    // exactly one single-clause instance up to relabeling
    int singles = 0;
    bool has_unsat = false;
    const SatInstance unsat = parse_sat(kUnsatText);
    for (const auto& inst : corpus) {
        if (inst.clauses.size() == 1) ++singles;
        if (inst.num_vars == 5 && inst.clauses.size() == 4 &&
            !sat_brute_force(inst).satisfiable)
            has_unsat = true;
        CHECK(inst.num_vars <= 5);
        CHECK(inst.clauses.size() <= 4);
        // canonical form is self-canonical (idempotent dedup)
        for (const auto& cl : inst.clauses) {
            CHECK(cl[0] < cl[1]);
            CHECK(cl[1] < cl[2]);
        }
    }
    CHECK(singles == 1);
    CHECK(has_unsat);  // the canonical unsat instance is in the corpus

    // no duplicates
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j)
            CHECK((corpus[i].num_vars != corpus[j].num_vars ||
                   corpus[i].clauses != corpus[j].clauses));
}

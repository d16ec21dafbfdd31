#include "genfinder/sat.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace genfinder {

namespace {

std::vector<int> true_set(std::uint32_t mask, int v) {
    std::vector<int> out;
    for (int i = 0; i < v; ++i)
        if (mask & (1u << i)) out.push_back(i + 1);
    return out;
}

}  // namespace

SatInstance parse_sat(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    SatInstance inst;
    bool header_seen = false;
    int expected_clauses = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line
        if (tok == "c") continue;    // comment

        if (!header_seen) {
            if (tok != "p") throw ParseError("expected header 'p 1in3 V C'", line_no);
            std::string fmt;
            if (!(ls >> fmt) || fmt != "1in3")
                throw ParseError("expected format '1in3' in header", line_no);
            if (!(ls >> inst.num_vars >> expected_clauses))
                throw ParseError("header needs variable and clause counts", line_no);
            if (inst.num_vars <= 0 || expected_clauses < 0)
                throw ParseError("variable count must be positive", line_no);
            header_seen = true;
            continue;
        }

        int i = 0, j = 0, k = 0, terminator = -1;
        std::istringstream cs(line);
        if (!(cs >> i >> j >> k >> terminator) || terminator != 0)
            throw ParseError("clause lines must be 'i j k 0'", line_no);
        std::array<int, 3> clause{i, j, k};
        std::sort(clause.begin(), clause.end());
        if (clause[0] == clause[1] || clause[1] == clause[2])
            throw InvalidClause("clause repeats a variable at line " + std::to_string(line_no));
        for (const int v : clause)
            if (v < 1 || v > inst.num_vars)
                throw InvalidClause("variable index out of range at line " +
                                    std::to_string(line_no));
        inst.clauses.push_back(clause);
    }

    if (!header_seen) throw ParseError("missing header 'p 1in3 V C'", line_no);
    if (int(inst.clauses.size()) != expected_clauses)
        throw ParseError("clause count does not match header", line_no);
    return inst;
}

std::string sat_to_text(const SatInstance& inst) {
    std::ostringstream out;
    out << "p 1in3 " << inst.num_vars << ' ' << inst.clauses.size() << '\n';
    for (const auto& c : inst.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

bool clause_satisfied(const SatInstance& inst, std::size_t clause_idx,
                      const std::vector<bool>& assignment) {
    const auto& c = inst.clauses[clause_idx];
    int trues = 0;
    for (const int v : c) trues += assignment[std::size_t(v) - 1] ? 1 : 0;
    return trues == 1;
}

bool assignment_satisfies(const SatInstance& inst, const std::vector<bool>& assignment) {
    for (std::size_t i = 0; i < inst.clauses.size(); ++i)
        if (!clause_satisfied(inst, i, assignment)) return false;
    return true;
}

SatResult sat_brute_force(const SatInstance& inst) {
    const int v = inst.num_vars;
    if (v > kBruteForceVarCap) throw TooLarge("sat_brute_force: more than 30 variables");

    SatResult res;
    std::vector<int> best;
    bool found = false;
    std::vector<bool> assignment(std::size_t(v), false);

    const std::uint64_t total = 1ull << v;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < v; ++i) assignment[std::size_t(i)] = (mask >> i) & 1u;
        if (!assignment_satisfies(inst, assignment)) continue;
        std::vector<int> ts = true_set(std::uint32_t(mask), v);
        if (!found || std::lexicographical_compare(ts.begin(), ts.end(), best.begin(),
                                                   best.end())) {
            best = std::move(ts);
            found = true;
            if (best.empty()) break;  // nothing beats the empty set
        }
    }

    res.satisfiable = found;
    if (found) {
        res.assignment.assign(std::size_t(v), false);
        for (const int t : best) res.assignment[std::size_t(t) - 1] = true;
    }
    return res;
}

namespace {

// Canonical form of an instance: the lexicographically smallest sorted clause
// list over all variable relabelings.
std::vector<std::array<int, 3>> canonical_clauses(const SatInstance& inst) {
    std::vector<int> perm(std::size_t(inst.num_vars));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::array<int, 3>> best;
    bool first = true;
    do {
        std::vector<std::array<int, 3>> mapped;
        mapped.reserve(inst.clauses.size());
        for (const auto& c : inst.clauses) {
            std::array<int, 3> m{perm[std::size_t(c[0]) - 1], perm[std::size_t(c[1]) - 1],
                                 perm[std::size_t(c[2]) - 1]};
            std::sort(m.begin(), m.end());
            mapped.push_back(m);
        }
        std::sort(mapped.begin(), mapped.end());
        if (first || mapped < best) {
            best = std::move(mapped);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<SatInstance> canonical_corpus(int max_vars, int max_clauses) {
    std::vector<SatInstance> corpus;

    SatInstance trivial;
    trivial.num_vars = 1;
    corpus.push_back(trivial);

    for (int v = 3; v <= max_vars; ++v) {
        std::vector<std::array<int, 3>> all;
        for (int a = 1; a <= v; ++a)
            for (int b = a + 1; b <= v; ++b)
                for (int c = b + 1; c <= v; ++c) all.push_back({a, b, c});

        const std::size_t total = all.size();
        std::vector<std::vector<std::array<int, 3>>> seen;
        for (std::uint32_t mask = 1; mask < (1u << total); ++mask) {
            const int count = __builtin_popcount(mask);
            if (count > max_clauses) continue;

            SatInstance inst;
            inst.num_vars = v;
            std::vector<bool> used(std::size_t(v) + 1, false);
            for (std::size_t i = 0; i < total; ++i)
                if (mask & (1u << i)) {
                    inst.clauses.push_back(all[i]);
                    for (const int x : all[i]) used[std::size_t(x)] = true;
                }
            bool full_support = true;
            for (int x = 1; x <= v; ++x) full_support &= used[std::size_t(x)];
            if (!full_support) continue;  // smaller-V representative covers it

            auto canon = canonical_clauses(inst);
            if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
            seen.push_back(canon);

            SatInstance rep;
            rep.num_vars = v;
            rep.clauses = std::move(canon);
            corpus.push_back(std::move(rep));
        }
    }
    return corpus;
}

}  // namespace genfinder

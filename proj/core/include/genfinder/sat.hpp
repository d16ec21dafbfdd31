#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "genfinder/errors.hpp"

namespace genfinder {

/// Monotone 1-in-3SAT instance: each clause names three distinct variables
/// and is satisfied exactly when one of them is true. No negations.
struct SatInstance {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;  // 1-based variable indices, sorted
};

/// Text format:
///   c optional comment lines
///   p 1in3 V C
///   i j k 0          (C clause lines)
SatInstance parse_sat(const std::string& text);
std::string sat_to_text(const SatInstance& inst);

struct SatResult {
    bool satisfiable = false;
    std::vector<bool> assignment;  // index v-1, meaningful when satisfiable
};

inline constexpr int kBruteForceVarCap = 30;

/// Exhaustive search over all 2^V assignments (V <= 30). When satisfiable,
/// returns the assignment whose set of true variables is lexicographically
/// smallest as a sorted index list (the empty set first).
SatResult sat_brute_force(const SatInstance& inst);

bool clause_satisfied(const SatInstance& inst, std::size_t clause_idx,
                      const std::vector<bool>& assignment);
bool assignment_satisfies(const SatInstance& inst, const std::vector<bool>& assignment);

/// All instances with full variable support, up to variable relabeling, with
/// num_vars <= max_vars and 1 <= clauses <= max_clauses; plus the zero-clause
/// single-variable instance. Deterministic order.
std::vector<SatInstance> canonical_corpus(int max_vars, int max_clauses);

}  // namespace genfinder

#pragma once

#include "genfinder/channel.hpp"
#include "genfinder/report.hpp"

namespace genfinder {

/// Residuals of the classical generator conditions: nonnegative
/// off-diagonals and zero column sums.
ClassicalGeneratorConditions check_classical_generator(const RMat& l);

/// Decide whether a stochastic matrix is exp(L) for a valid classical
/// generator. Branches shift conjugate eigenvalue pairs in opposite integer
/// amounts only, which keeps every candidate real; lone real eigenvalues get
/// no shift. Verdict semantics match decide_markovian (Markovian reads as
/// "embeddable").
GeneratorReport decide_embeddable(const StochasticMatrix& t, double tol = kDefaultTol,
                                  int branch_bound = kDefaultBranchBound);

}  // namespace genfinder

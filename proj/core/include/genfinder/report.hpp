#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genfinder/linalg.hpp"

namespace genfinder {

/// Three-way weak-membership verdict. The classical embedding engine reuses
/// it with Markovian read as "embeddable".
enum class Verdict { Markovian, NonMarkovian, Indeterminate };

enum class DecisionCause { None, LogUndefined, DegenerateSpectrum, SeriesInconsistent };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Markovian: return "markovian";
        case Verdict::NonMarkovian: return "non-markovian";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

inline const char* to_string(DecisionCause c) {
    switch (c) {
        case DecisionCause::None: return "none";
        case DecisionCause::LogUndefined: return "log-undefined";
        case DecisionCause::DegenerateSpectrum: return "degenerate-spectrum";
        case DecisionCause::SeriesInconsistent: return "series-inconsistent";
    }
    return "unknown";
}

/// Residuals of the three generator-validity conditions:
///   (i) Gamma-reshuffle Hermitian, (ii) <omega| L = 0, (iii) conditional
/// complete positivity (compression of Herm(L^Gamma) off the maximally
/// entangled projector is PSD).
struct LindbladConditions {
    double hermiticity_residual = 0.0;
    double normalization_residual = 0.0;
    double ccp_margin = 0.0;

    bool valid(double tol) const {
        return hermiticity_residual <= tol && normalization_residual <= tol &&
               ccp_margin >= -tol;
    }
    /// Within the 10x gray band of the weak-membership formulation.
    bool near_valid(double tol) const {
        return hermiticity_residual <= 10 * tol && normalization_residual <= 10 * tol &&
               ccp_margin >= -10 * tol;
    }
};

/// Classical analogue: nonnegative off-diagonals, zero column sums, realness.
struct ClassicalGeneratorConditions {
    double offdiag_min = 0.0;
    double column_sum_residual = 0.0;
    double realness_residual = 0.0;

    bool valid(double tol) const {
        return offdiag_min >= -tol && column_sum_residual <= tol && realness_residual <= tol;
    }
    bool near_valid(double tol) const {
        return offdiag_min >= -10 * tol && column_sum_residual <= 10 * tol &&
               realness_residual <= 10 * tol;
    }
};

struct GeneratorReport {
    Verdict verdict = Verdict::Indeterminate;
    DecisionCause cause = DecisionCause::None;
    std::optional<CMat> witness_L;
    std::optional<std::vector<int>> witness_m;
    LindbladConditions conditions;  // best branch examined
    int branch_bound_used = 0;
    double tolerance_used = 0.0;
    std::vector<double> snapshot_residuals;  // per-snapshot fit residuals, when fitting
    std::string detail;
};

}  // namespace genfinder

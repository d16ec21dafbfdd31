#pragma once

#include <vector>

#include "genfinder/linalg.hpp"

namespace genfinder {

/// A quantum snapshot: the d^2 x d^2 matrix of a linear map on d x d
/// matrices, acting on row-major vectorized inputs. Under this convention the
/// identity map is the identity matrix and composition of maps is matrix
/// product.
struct TransferMatrix {
    int hilbert_dim = 0;
    CMat matrix;
};

/// A classical snapshot: column-stochastic real matrix.
struct StochasticMatrix {
    int dim = 0;
    RMat matrix;
};

struct SeriesEntry {
    double time = 0.0;
    TransferMatrix snapshot;
};

/// Snapshots of one evolution at strictly increasing times.
struct SnapshotSeries {
    std::vector<SeriesEntry> entries;
};

/// The maximally entangled unit vector: 1/sqrt(d) on every (i,i) pair index.
CVec omega_vector(int d);

struct CptReport {
    double hermiticity_residual = 0.0;   // ||F(T) - T||_F
    double trace_residual = 0.0;         // ||T^dag |omega> - |omega>||_2
    double choi_min_eigenvalue = 0.0;    // smallest eigenvalue of Herm(Gamma(T))
    double choi_hermiticity_defect = 0.0;

    bool valid(double tol) const {
        return hermiticity_residual <= tol && trace_residual <= tol &&
               choi_min_eigenvalue >= -tol;
    }
};

/// Report-style CPT validation; never mutates or normalizes.
CptReport validate_cpt(const TransferMatrix& t, double tol = kDefaultTol);

struct StochasticReport {
    double column_sum_residual = 0.0;  // max_j |sum_i T_ij - 1|
    double min_entry = 0.0;
    double max_entry = 0.0;

    bool valid(double tol) const {
        return column_sum_residual <= tol && min_entry >= -tol && max_entry <= 1.0 + tol;
    }
};

StochasticReport validate_stochastic(const StochasticMatrix& t, double tol = kDefaultTol);

/// Apply the map to a state: vectorize row-major, multiply, de-vectorize.
/// The input is not validated beyond its dimensions.
CMat apply_map(const TransferMatrix& t, const CMat& rho);

/// Validate and wrap raw data. Throws InvalidSnapshot on shape problems only;
/// CPT/stochasticity is a report, not a gate.
TransferMatrix make_transfer(int hilbert_dim, CMat matrix);
StochasticMatrix make_stochastic(RMat matrix);
SnapshotSeries make_series(std::vector<SeriesEntry> entries);

}  // namespace genfinder

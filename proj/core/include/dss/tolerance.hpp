#pragma once

#include <Eigen/Core>

namespace dss {

/// Relative tolerance used for every rank / regularity / mode-class decision.
/// A value of 0 selects the automatic policy
///     threshold = max(rows, cols) * machine_epsilon * sigma_max,
/// a user-set value t replaces the max(rows, cols) * eps factor, giving
///     threshold = t * sigma_max.
/// Set once at startup (e.g. from a --tol flag); reads are lock-free.
double rank_tolerance();
void set_rank_tolerance(double tol);

/// Absolute threshold below which a quantity of scale `magnitude` counts as
/// zero for a matrix of the given shape.
double rank_threshold(Eigen::Index rows, Eigen::Index cols, double magnitude);

} // namespace dss

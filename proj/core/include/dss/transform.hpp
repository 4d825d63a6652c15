#pragma once

// Reduction of a descriptor model to explicit state-space form, separating
// the dynamic states from the algebraic ones and exposing any direct
// input-derivative feedthrough (Bd, Dd) of improper systems.

#include "dss/model.hpp"

namespace dss {

/// Orthonormal basis N of the left null space of M: N*M = 0, with
/// rows(N) + rank(M) = rows(M). Rank is decided by `tol` (0 selects the
/// global rank tolerance policy). Full-row-image M yields a 0 x rows result.
Mat left_nullspace(const Mat& m, double tol = 0.0);

/// Reduce to explicit form.
///
/// Fast path: E invertible, scale rows and return (exact when E = I).
/// Otherwise the states split into dynamic x1 (nonzero E diagonal) and
/// algebraic x2. An invertible A22 lets x2 be eliminated directly. If A22
/// is singular, one round of null-space augmentation differentiates the
/// unresolved constraints and retries with a least-squares elimination;
/// systems still unresolved after that round throw HigherIndex.
///
/// is_proper in the result is true iff the computed Bd and Dd are exactly
/// zero entry for entry.
SsResult to_ss(const DssModel& model);

} // namespace dss

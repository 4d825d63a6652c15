#pragma once

// Composition algebra over descriptor models. Every operation manipulates
// the (E, A, B, C, D) blocks directly; no numerical reduction, no matrix
// inversion, so improper and singular-E operands are handled uniformly.

#include "dss/model.hpp"

namespace dss {

/// Return a copy with every state origin prefixed by "prefix/".
DssModel with_origin_prefix(const DssModel& model, const std::string& prefix);

/// Exact inverse G^{-1} of a square system, built by augmentation: the m old
/// inputs become new algebraic states constrained by y_old = u_new, and the
/// new output reads them back. No properness or invertibility of D needed;
/// the result is singular exactly where G is.
/// Throws NonSquareIO if p != m, IrregularPencil if the augmented pencil is
/// singular for every s (G identically singular).
DssModel inverse(const DssModel& model);

/// Parallel interconnection G1 + G2 (shared input, outputs added).
/// Requires matching input and output dimensions; takes port labels from g1.
DssModel sum(const DssModel& g1, const DssModel& g2);

/// Block-diagonal stacking: inputs and outputs concatenated, no coupling.
/// Colliding state labels are disambiguated by origin prefixes "s0/", "s1/";
/// DuplicateLabel only if they still collide after that.
DssModel append(const DssModel& g1, const DssModel& g2);

/// Constant port reshaping: B' = B*rmat, C' = lmat*C, D' = lmat*D*rmat, so
/// TF' = lmat * TF * rmat. States untouched. New port labels may be passed;
/// when a port dimension is unchanged and no labels are given the old labels
/// are kept, otherwise they are regenerated.
DssModel embed(const DssModel& model, const Mat& lmat, const Mat& rmat,
               std::vector<std::string> input_labels = {},
               std::vector<std::string> output_labels = {});

/// Grid of blocks G_ij assembled into one MIMO system with
/// u = [u_1; ...; u_q], y_i = sum_j G_ij u_j. Realised as append of all
/// blocks followed by an embed with selection and summation matrices.
/// Blocks in a grid row must share p, in a grid column share m.
DssModel matrix_append(const std::vector<std::vector<DssModel>>& blocks);

/// Closed loop of g1 with g2 in the feedback path:
///     u1 = u + sign * y2,   u2 = y = y1
/// realised algebraically with the loop output as a virtual state, so no
/// (I - sign*D1*D2) inverse is formed and improper loops are fine.
/// Default sign = -1 gives negative feedback. An ill-posed algebraic loop
/// surfaces as IrregularPencil.
DssModel feedback(const DssModel& g1, const DssModel& g2, double sign = -1.0);

} // namespace dss

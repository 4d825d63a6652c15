#pragma once

// Descriptor state-space model type and the operations that do not build new
// block structure: construction, transfer-function evaluation, the trivial
// invertible-E conversion, and pencil regularity.
//
// The model is
//     E dx/dt = A x + B u
//           y = C x + D u
// with E diagonal (possibly singular). Singular E rows are algebraic
// constraints; they are what lets the model represent improper systems such
// as sL or sC.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dss/errors.hpp"
#include "dss/tolerance.hpp"

namespace dss {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Whether a state is a physical quantity of some subsystem or an algebraic
/// variable introduced by a construction (inverse, feedback closure).
enum class StateKind { Physical, Virtual };

/// Identity of one state. `origin` is a path through the construction that
/// produced it, e.g. "branch:6-13/i" or "virtual:node:2/v".
struct StateLabel {
    std::string name;
    std::string origin;
    StateKind kind = StateKind::Physical;

    friend bool operator==(const StateLabel& a, const StateLabel& b) {
        return a.name == b.name && a.origin == b.origin;
    }
};

struct DssModel {
    Mat E;  ///< n x n, diagonal; zero diagonal entries mark algebraic rows
    Mat A;  ///< n x n
    Mat B;  ///< n x m
    Mat C;  ///< p x n
    Mat D;  ///< p x m

    std::vector<StateLabel> state_labels;
    std::vector<std::string> input_labels;
    std::vector<std::string> output_labels;

    Index n() const { return A.rows(); }
    Index m() const { return B.cols(); }
    Index p() const { return C.rows(); }
};

/// Explicit state-space form produced by to_ss(). For improper sources the
/// input-derivative terms Bd, Dd are nonzero:
///     dx1/dt = A x1 + B u + Bd du/dt
///          y = C x1 + D u + Dd du/dt
struct SsResult {
    Mat A;
    Mat B;
    Mat Bd;
    Mat C;
    Mat D;
    Mat Dd;
    std::vector<StateLabel> kept_labels;  ///< the retained x1 states
    bool is_proper = false;  ///< true iff Bd and Dd came out exactly zero
};

/// Build a model from explicit matrices. Validates dimensions, diagonality
/// of E, and label uniqueness; performs no numerical processing.
DssModel make_dss(const Mat& E, const Mat& A, const Mat& B, const Mat& C, const Mat& D,
                  std::vector<StateLabel> state_labels,
                  std::vector<std::string> input_labels,
                  std::vector<std::string> output_labels);

/// make_dss with generated labels x0..x{n-1}, u0.., y0..
DssModel make_dss(const Mat& E, const Mat& A, const Mat& B, const Mat& C, const Mat& D);

/// Wrap a standard state-space model; E becomes the identity.
DssModel from_ss(const Mat& A, const Mat& B, const Mat& C, const Mat& D,
                 std::vector<StateLabel> state_labels,
                 std::vector<std::string> input_labels,
                 std::vector<std::string> output_labels);

DssModel from_ss(const Mat& A, const Mat& B, const Mat& C, const Mat& D);

/// Generated labels for n states / m inputs / p outputs.
std::vector<StateLabel> default_state_labels(Index n);
std::vector<std::string> default_port_labels(Index count, const std::string& prefix);

/// Evaluate the transfer matrix G(s) = C (sE - A)^{-1} B + D.
/// Throws SingularAtS when sE - A is not invertible at this s.
CMat eval_tf(const DssModel& model, Complex s);

/// Convert to an E = I model by scaling state rows with E^{-1}.
/// Requires every diagonal entry of E to be nonzero beyond the rank
/// tolerance; throws SingularE otherwise.
DssModel to_explicit_via_einv(const DssModel& model);

/// True iff det(sE - A) does not vanish identically, decided by testing
/// invertibility of sE - A at a fixed set of pseudo-random sample points.
bool pencil_is_regular(const DssModel& model);

} // namespace dss

#include "dss/model.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

namespace dss {

namespace {

double g_rank_tolerance = 0.0;

} // namespace

double rank_tolerance() { return g_rank_tolerance; }

void set_rank_tolerance(double tol) {
    if (tol < 0.0 || !std::isfinite(tol)) throw Error("rank tolerance must be finite and >= 0");
    g_rank_tolerance = tol;
}

double rank_threshold(Index rows, Index cols, double magnitude) {
    const double t = g_rank_tolerance;
    if (t > 0.0) return t * magnitude;
    const double dim = static_cast<double>(std::max(rows, cols));
    return dim * std::numeric_limits<double>::epsilon() * magnitude;
}

std::vector<StateLabel> default_state_labels(Index n) {
    std::vector<StateLabel> labels;
    labels.reserve(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) {
        std::string name = "x" + std::to_string(i);
        labels.push_back({name, name, StateKind::Physical});
    }
    return labels;
}

std::vector<std::string> default_port_labels(Index count, const std::string& prefix) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(count));
    for (Index i = 0; i < count; ++i) labels.push_back(prefix + std::to_string(i));
    return labels;
}

namespace {

void check_dimensions(const Mat& E, const Mat& A, const Mat& B, const Mat& C, const Mat& D) {
    const Index n = A.rows();
    if (A.cols() != n) throw DimensionMismatch("A must be square");
    if (E.rows() != n || E.cols() != n)
        throw DimensionMismatch("E must be " + std::to_string(n) + "x" + std::to_string(n));
    if (B.rows() != n) throw DimensionMismatch("B row count must match state count");
    if (C.cols() != n) throw DimensionMismatch("C column count must match state count");
    if (D.rows() != C.rows() || D.cols() != B.cols())
        throw DimensionMismatch("D must be p x m");
}

void check_labels(const DssModel& model) {
    if (static_cast<Index>(model.state_labels.size()) != model.n())
        throw DimensionMismatch("state label count must match state count");
    if (static_cast<Index>(model.input_labels.size()) != model.m())
        throw DimensionMismatch("input label count must match input count");
    if (static_cast<Index>(model.output_labels.size()) != model.p())
        throw DimensionMismatch("output label count must match output count");
    std::unordered_set<std::string> seen;
    for (const auto& l : model.state_labels) {
        if (!seen.insert(l.origin + "\x1f" + l.name).second)
            throw DuplicateLabel("duplicate state label '" + l.name + "' (origin '" + l.origin + "')");
    }
}

void check_diagonal(const Mat& E) {
    for (Index i = 0; i < E.rows(); ++i)
        for (Index j = 0; j < E.cols(); ++j)
            if (i != j && E(i, j) != 0.0)
                throw NonDiagonalE("E has a nonzero off-diagonal entry at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
}

} // namespace

DssModel make_dss(const Mat& E, const Mat& A, const Mat& B, const Mat& C, const Mat& D,
                  std::vector<StateLabel> state_labels,
                  std::vector<std::string> input_labels,
                  std::vector<std::string> output_labels) {
    check_dimensions(E, A, B, C, D);
    check_diagonal(E);
    DssModel model{E, A, B, C, D,
                   std::move(state_labels), std::move(input_labels), std::move(output_labels)};
    check_labels(model);
    return model;
}

DssModel make_dss(const Mat& E, const Mat& A, const Mat& B, const Mat& C, const Mat& D) {
    return make_dss(E, A, B, C, D, default_state_labels(A.rows()),
                    default_port_labels(B.cols(), "u"), default_port_labels(C.rows(), "y"));
}

DssModel from_ss(const Mat& A, const Mat& B, const Mat& C, const Mat& D,
                 std::vector<StateLabel> state_labels,
                 std::vector<std::string> input_labels,
                 std::vector<std::string> output_labels) {
    return make_dss(Mat::Identity(A.rows(), A.rows()), A, B, C, D,
                    std::move(state_labels), std::move(input_labels), std::move(output_labels));
}

DssModel from_ss(const Mat& A, const Mat& B, const Mat& C, const Mat& D) {
    return from_ss(A, B, C, D, default_state_labels(A.rows()),
                   default_port_labels(B.cols(), "u"), default_port_labels(C.rows(), "y"));
}

CMat eval_tf(const DssModel& model, Complex s) {
    if (model.n() == 0) return model.D.cast<Complex>();
    CMat pencil = s * model.E.cast<Complex>() - model.A.cast<Complex>();
    Eigen::FullPivLU<CMat> lu(pencil);
    if (!lu.isInvertible()) {
        std::ostringstream os;
        os << "sE - A is singular at s = " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "j";
        throw SingularAtS(os.str());
    }
    return model.C.cast<Complex>() * lu.solve(model.B.cast<Complex>()) + model.D.cast<Complex>();
}

DssModel to_explicit_via_einv(const DssModel& model) {
    const Index n = model.n();
    DssModel out = model;
    if (n == 0) return out;
    const double mag = model.E.diagonal().cwiseAbs().maxCoeff();
    const double thr = rank_threshold(n, n, mag);
    for (Index i = 0; i < n; ++i) {
        const double e = model.E(i, i);
        if (std::abs(e) <= thr)
            throw SingularE("E diagonal entry " + std::to_string(i) + " is zero within tolerance");
        out.A.row(i) /= e;
        out.B.row(i) /= e;
    }
    out.E = Mat::Identity(n, n);
    return out;
}

bool pencil_is_regular(const DssModel& model) {
    const Index n = model.n();
    if (n == 0) return true;
    // Fixed pseudo-random sample points; raw mt19937 words keep the values
    // identical on every platform.
    std::mt19937 gen(0x5eedu);
    auto draw = [&gen]() {
        return static_cast<double>(gen()) / 4294967296.0 * 4.0 - 2.0;
    };
    for (int k = 0; k < 3; ++k) {
        const Complex s(draw(), draw());
        CMat pencil = s * model.E.cast<Complex>() - model.A.cast<Complex>();
        Eigen::FullPivLU<CMat> lu(pencil);
        if (lu.isInvertible()) return true;
    }
    return false;
}

} // namespace dss

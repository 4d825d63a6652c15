#include "dss/transform.hpp"

#include <vector>

namespace dss {

Mat left_nullspace(const Mat& m, double tol) {
    if (m.rows() == 0) return Mat(0, 0);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    const double thr = tol > 0.0 ? tol * smax : rank_threshold(m.rows(), m.cols(), smax);
    Index rank = 0;
    for (Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > thr) ++rank;
    return svd.matrixU().rightCols(m.rows() - rank).transpose();
}

namespace {

bool exactly_zero(const Mat& m) { return (m.array() == 0.0).all(); }

SsResult pack(Mat a, Mat b, Mat bd, Mat c, Mat d, Mat dd, std::vector<StateLabel> labels) {
    SsResult out;
    out.A = std::move(a);
    out.B = std::move(b);
    out.Bd = std::move(bd);
    out.C = std::move(c);
    out.D = std::move(d);
    out.Dd = std::move(dd);
    out.kept_labels = std::move(labels);
    out.is_proper = exactly_zero(out.Bd) && exactly_zero(out.Dd);
    return out;
}

} // namespace

SsResult to_ss(const DssModel& model) {
    if (!pencil_is_regular(model))
        throw IrregularPencil("to_ss requires a regular pencil");

    const Index n = model.n(), m = model.m(), p = model.p();

    // Split states by the E diagonal: nonzero entries are dynamic.
    const double emax = n > 0 ? model.E.diagonal().cwiseAbs().maxCoeff() : 0.0;
    const double ethr = rank_threshold(n, n, emax);
    std::vector<Index> idx1, idx2;
    for (Index i = 0; i < n; ++i)
        (std::abs(model.E(i, i)) > ethr ? idx1 : idx2).push_back(i);
    const Index n1 = static_cast<Index>(idx1.size());
    const Index n2 = static_cast<Index>(idx2.size());

    std::vector<StateLabel> kept;
    kept.reserve(static_cast<size_t>(n1));
    for (Index i : idx1) kept.push_back(model.state_labels[static_cast<size_t>(i)]);

    if (n2 == 0) {
        // E invertible: scale the state rows, done. Division by 1 is exact,
        // so an E = I model round-trips bit for bit.
        Mat a = model.A, b = model.B;
        for (Index i = 0; i < n; ++i) {
            a.row(i) /= model.E(i, i);
            b.row(i) /= model.E(i, i);
        }
        return pack(std::move(a), std::move(b), Mat::Zero(n, m),
                    model.C, model.D, Mat::Zero(p, m), std::move(kept));
    }

    Vec e1(n1);
    for (Index i = 0; i < n1; ++i) e1(i) = model.E(idx1[static_cast<size_t>(i)], idx1[static_cast<size_t>(i)]);

    auto pick = [](const Mat& src, const std::vector<Index>& ri, const std::vector<Index>& ci) {
        Mat out(static_cast<Index>(ri.size()), static_cast<Index>(ci.size()));
        for (size_t i = 0; i < ri.size(); ++i)
            for (size_t j = 0; j < ci.size(); ++j)
                out(static_cast<Index>(i), static_cast<Index>(j)) = src(ri[i], ci[j]);
        return out;
    };
    auto pick_rows = [](const Mat& src, const std::vector<Index>& ri) {
        Mat out(static_cast<Index>(ri.size()), src.cols());
        for (size_t i = 0; i < ri.size(); ++i) out.row(static_cast<Index>(i)) = src.row(ri[i]);
        return out;
    };
    auto pick_cols = [](const Mat& src, const std::vector<Index>& ci) {
        Mat out(src.rows(), static_cast<Index>(ci.size()));
        for (size_t j = 0; j < ci.size(); ++j) out.col(static_cast<Index>(j)) = src.col(ci[j]);
        return out;
    };

    const Mat a11 = pick(model.A, idx1, idx1), a12 = pick(model.A, idx1, idx2);
    const Mat a21 = pick(model.A, idx2, idx1), a22 = pick(model.A, idx2, idx2);
    const Mat b1 = pick_rows(model.B, idx1), b2 = pick_rows(model.B, idx2);
    const Mat c1 = pick_cols(model.C, idx1), c2 = pick_cols(model.C, idx2);

    Eigen::FullPivLU<Mat> lu(a22);
    if (lu.isInvertible()) {
        // The algebraic states solve directly: x2 = -A22^{-1} (A21 x1 + B2 u).
        const Mat s21 = lu.solve(a21);
        const Mat sb2 = lu.solve(b2);
        Mat a = a11 - a12 * s21;
        Mat b = b1 - a12 * sb2;
        for (Index i = 0; i < n1; ++i) {
            a.row(i) /= e1(i);
            b.row(i) /= e1(i);
        }
        return pack(std::move(a), std::move(b), Mat::Zero(n1, m),
                    c1 - c2 * s21, model.D - c2 * sb2, Mat::Zero(p, m), std::move(kept));
    }

    // One augmentation round: differentiate the constraint rows annihilated
    // by A22 and substitute the dynamic equations for x1-dot. Input
    // derivatives enter here, which is where Bd and Dd come from.
    const Mat nsp = left_nullspace(a22);
    Mat nhat = nsp * a21;
    for (Index i = 0; i < n1; ++i) nhat.col(i) /= e1(i);

    const Index r = nsp.rows();
    Mat a21h(n2 + r, n1), a22h(n2 + r, n2), b2h(n2 + r, m), bd2h(n2 + r, m);
    a21h << a21, nhat * a11;
    a22h << a22, nhat * a12;
    b2h << b2, nhat * b1;
    bd2h << Mat::Zero(n2, m), nsp * b2;

    Eigen::CompleteOrthogonalDecomposition<Mat> cod(a22h);
    cod.setThreshold(rank_tolerance() > 0.0
                         ? rank_tolerance()
                         : static_cast<double>(std::max(a22h.rows(), a22h.cols())) *
                               std::numeric_limits<double>::epsilon());
    if (cod.rank() < n2)
        throw HigherIndex("algebraic constraints remain singular after one augmentation (index > 2)");

    // Least-squares solve x2 = -P (A21h x1 + B2h u + Bd2h u-dot).
    const Mat s21 = cod.solve(a21h);
    const Mat sb = cod.solve(b2h);
    const Mat sbd = cod.solve(bd2h);

    Mat a = a11 - a12 * s21;
    Mat b = b1 - a12 * sb;
    Mat bd = -(a12 * sbd);
    for (Index i = 0; i < n1; ++i) {
        a.row(i) /= e1(i);
        b.row(i) /= e1(i);
        bd.row(i) /= e1(i);
    }
    return pack(std::move(a), std::move(b), std::move(bd),
                c1 - c2 * s21, model.D - c2 * sb, -(c2 * sbd), std::move(kept));
}

} // namespace dss

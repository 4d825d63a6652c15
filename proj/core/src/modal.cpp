#include "dss/modal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

extern "C" {
void zggev_(const char* jobvl, const char* jobvr, const int* n,
            std::complex<double>* a, const int* lda,
            std::complex<double>* b, const int* ldb,
            std::complex<double>* alpha, std::complex<double>* beta,
            std::complex<double>* vl, const int* ldvl,
            std::complex<double>* vr, const int* ldvr,
            std::complex<double>* work, const int* lwork,
            double* rwork, int* info);
}

namespace dss {

namespace {

double class_tolerance(Index n) {
    const double t = rank_tolerance();
    if (t > 0.0) return t;
    return static_cast<double>(std::max<Index>(n, 1)) * std::numeric_limits<double>::epsilon();
}

} // namespace

Index ModeSet::finite_count() const {
    return static_cast<Index>(
        std::count(classification.begin(), classification.end(), ModeClass::Finite));
}

ModeSet generalized_eig(const DssModel& model) {
    if (!pencil_is_regular(model))
        throw IrregularPencil("generalized eigensolve requires a regular pencil");

    const int n = static_cast<int>(model.n());
    ModeSet out;
    out.right = CMat(n, n);
    out.left = CMat(n, n);
    out.defective.assign(static_cast<size_t>(n), false);
    if (n == 0) return out;

    CMat a = model.A.cast<Complex>();
    CMat b = model.E.cast<Complex>();
    CVec alpha(n), beta(n);
    CMat vl(n, n), vr(n, n);
    std::vector<double> rwork(static_cast<size_t>(8 * n));
    int info = 0;
    int lwork = -1;
    Complex work_query;
    zggev_("V", "V", &n, a.data(), &n, b.data(), &n, alpha.data(), beta.data(),
           vl.data(), &n, vr.data(), &n, &work_query, &lwork, rwork.data(), &info);
    if (info != 0) throw ConvergenceFailure("eigensolver workspace query failed");
    lwork = static_cast<int>(std::max(2.0 * n, work_query.real()));
    std::vector<Complex> work(static_cast<size_t>(lwork));
    zggev_("V", "V", &n, a.data(), &n, b.data(), &n, alpha.data(), beta.data(),
           vl.data(), &n, vr.data(), &n, work.data(), &lwork, rwork.data(), &info);
    if (info != 0)
        throw ConvergenceFailure("generalized eigensolver failed to converge (info=" +
                                 std::to_string(info) + ")");

    // A pair (alpha, beta) with vanishing beta is a mode at infinity.
    const double tol = class_tolerance(n);
    std::vector<ModeClass> cls(static_cast<size_t>(n));
    std::vector<Complex> lambda(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double scale = std::hypot(std::abs(alpha(i)), std::abs(beta(i)));
        if (std::abs(beta(i)) <= tol * scale) {
            cls[static_cast<size_t>(i)] = ModeClass::Virtual;
            lambda[static_cast<size_t>(i)] =
                Complex(std::numeric_limits<double>::infinity(), 0.0);
        } else {
            cls[static_cast<size_t>(i)] = ModeClass::Finite;
            lambda[static_cast<size_t>(i)] = alpha(i) / beta(i);
        }
    }

    // Canonical order: finite modes by (re, im), virtual modes last.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        const bool fi = cls[static_cast<size_t>(i)] == ModeClass::Finite;
        const bool fj = cls[static_cast<size_t>(j)] == ModeClass::Finite;
        if (fi != fj) return fi;
        if (!fi) return false;
        const Complex &li = lambda[static_cast<size_t>(i)], &lj = lambda[static_cast<size_t>(j)];
        if (li.real() != lj.real()) return li.real() < lj.real();
        return li.imag() < lj.imag();
    });

    out.eigenvalues.resize(static_cast<size_t>(n));
    out.classification.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<size_t>(k)];
        out.eigenvalues[static_cast<size_t>(k)] = lambda[static_cast<size_t>(src)];
        out.classification[static_cast<size_t>(k)] = cls[static_cast<size_t>(src)];
        out.right.col(k) = vr.col(src);
        // zggev returns left vectors u with u^H A = lambda u^H E; the analysis
        // rows are psi = u^H.
        out.left.row(k) = vl.col(src).adjoint();
    }
    return out;
}

ModeSet normalize(const ModeSet& modes, const DssModel& model) {
    ModeSet out = modes;
    const CMat e = model.E.cast<Complex>();
    for (Index i = 0; i < out.size(); ++i) {
        if (out.classification[static_cast<size_t>(i)] != ModeClass::Finite) continue;
        const CVec ephi = e * out.right.col(i);
        const Complex d = (out.left.row(i) * ephi).value();
        const double scale = out.left.row(i).norm() * ephi.norm();
        if (std::abs(d) <= class_tolerance(model.n()) * scale || d == 0.0) {
            out.defective[static_cast<size_t>(i)] = true;
            continue;
        }
        out.left.row(i) /= d;
    }
    out.normalized = true;
    return out;
}

ParticipationReport participation(const DssModel& model, const ModeSet& modes) {
    if (!modes.normalized)
        throw Error("participation requires a normalized mode set");
    ParticipationReport report;
    const Index n = model.n();
    for (Index i = 0; i < modes.size(); ++i) {
        if (modes.classification[static_cast<size_t>(i)] != ModeClass::Finite) continue;
        if (modes.defective[static_cast<size_t>(i)]) continue;
        ModeParticipation mp;
        mp.mode_index = i;
        mp.lambda = modes.eigenvalues[static_cast<size_t>(i)];
        mp.freq_hz = mp.lambda.imag() / (2.0 * M_PI);
        mp.damping = mp.lambda.real();
        mp.entries.reserve(static_cast<size_t>(n));
        for (Index k = 0; k < n; ++k) {
            ParticipationEntry entry;
            entry.state = model.state_labels[static_cast<size_t>(k)];
            entry.raw = modes.left(i, k) * modes.right(k, i);
            entry.weighted = modes.left(i, k) * model.E(k, k) * modes.right(k, i);
            mp.entries.push_back(std::move(entry));
        }
        std::stable_sort(mp.entries.begin(), mp.entries.end(),
                         [](const ParticipationEntry& a, const ParticipationEntry& b) {
                             return std::abs(a.weighted) > std::abs(b.weighted);
                         });
        report.modes.push_back(std::move(mp));
    }
    return report;
}

Complex eig_sensitivity(const DssModel& model, const ModeSet& modes,
                        Index i, Index k, Index j) {
    if (i < 0 || i >= modes.size() ||
        modes.classification[static_cast<size_t>(i)] != ModeClass::Finite)
        throw VirtualModeRequested("mode " + std::to_string(i) + " is not a finite mode");
    if (!modes.normalized) throw Error("sensitivity requires a normalized mode set");
    if (modes.defective[static_cast<size_t>(i)])
        throw DefectiveMode("mode " + std::to_string(i) + " could not be normalized");
    if (k < 0 || k >= model.n() || j < 0 || j >= model.n())
        throw DimensionMismatch("matrix entry index out of range");
    return modes.left(i, k) * modes.right(j, i);
}

} // namespace dss

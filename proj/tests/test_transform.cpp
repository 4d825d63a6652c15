#include <doctest.h>

#include <dss/algebra.hpp>
#include <dss/elements.hpp>
#include <dss/network.hpp>
#include <dss/transform.hpp>

#include "test_util.hpp"

using namespace dss;

namespace {

// TF of the reduced form: C (sI - A)^{-1} (B + s Bd) + D + s Dd.
CMat ss_tf(const SsResult& ss, Complex s) {
    const Index n1 = ss.A.rows();
    CMat core = CMat::Zero(ss.C.rows(), ss.B.cols());
    if (n1 > 0) {
        const CMat resolvent = (s * CMat::Identity(n1, n1) - ss.A.cast<Complex>()).fullPivLu()
                                   .solve(ss.B.cast<Complex>() + s * ss.Bd.cast<Complex>());
        core = ss.C.cast<Complex>() * resolvent;
    }
    return core + ss.D.cast<Complex>() + s * ss.Dd.cast<Complex>();
}

} // namespace

TEST_CASE("left_nullspace basics") {
    SUBCASE("zero matrix") {
        Mat n = left_nullspace(Mat::Zero(1, 1));
        REQUIRE(n.rows() == 1);
        CHECK(std::abs(n(0, 0)) == 1.0);
    }
    SUBCASE("full rank") {
        Mat n = left_nullspace(Mat::Identity(2, 2));
        CHECK(n.rows() == 0);
        CHECK(n.cols() == 2);
    }
    SUBCASE("repeated row") {
        Mat m(2, 2);
        m << 1.0, 0.0, 1.0, 0.0;
        Mat n = left_nullspace(m);
        REQUIRE(n.rows() == 1);
        CHECK((n * m).norm() < 1e-14);
        CHECK(std::abs(n.row(0).norm() - 1.0) < 1e-14);
        CHECK(std::abs(std::abs(n(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-14);
        CHECK(std::abs(n(0, 0) + n(0, 1)) < 1e-14);
    }
}

TEST_CASE("to_ss uses the invertible-E fast path") {
    Mat e(1, 1), a(1, 1), b(1, 1), c(1, 1), d(1, 1);
    e << 2.0; a << 0.0; b << 1.0; c << 1.0; d << 0.0;
    SsResult ss = to_ss(make_dss(e, a, b, c, d));
    CHECK(ss.A(0, 0) == 0.0);
    CHECK(ss.B(0, 0) == 0.5);
    CHECK(ss.is_proper);
}

TEST_CASE("to_ss round-trips a standard model exactly") {
    Mat a(2, 2), b(2, 1), c(1, 2), d(1, 1);
    a << -1.0, 0.25, 0.5, -3.0;
    b << 0.125, 2.0;
    c << 1.0, -0.75;
    d << 0.5;
    DssModel m = from_ss(a, b, c, d);
    SsResult ss = to_ss(m);
    CHECK(ss.A == a);
    CHECK(ss.B == b);
    CHECK(ss.C == c);
    CHECK(ss.D == d);
    CHECK((ss.Bd.array() == 0.0).all());
    CHECK((ss.Dd.array() == 0.0).all());
    CHECK(ss.is_proper);
    REQUIRE(ss.kept_labels.size() == 2);
    CHECK(ss.kept_labels[0] == m.state_labels[0]);
    CHECK(ss.kept_labels[1] == m.state_labels[1]);
}

TEST_CASE("to_ss eliminates an invertible algebraic block") {
    // E = diag(1, 0), A22 = -1: x2 = A21 x1 + B2 u resolved directly.
    Mat e = Mat::Zero(2, 2), a(2, 2), b(2, 1), c(1, 2), d(1, 1);
    e(0, 0) = 1.0;
    a << -2.0, 1.0, 1.0, -1.0;
    b << 1.0, 0.5;
    c << 1.0, 1.0;
    d << 0.0;
    SsResult ss = to_ss(make_dss(e, a, b, c, d));
    REQUIRE(ss.A.rows() == 1);
    // x2 = x1 + 0.5 u; x1' = -2 x1 + x2 + u = -x1 + 1.5 u; y = x1 + x2
    CHECK(ss.A(0, 0) == doctest::Approx(-1.0));
    CHECK(ss.B(0, 0) == doctest::Approx(1.5));
    CHECK(ss.C(0, 0) == doctest::Approx(2.0));
    CHECK(ss.D(0, 0) == doctest::Approx(0.5));
    CHECK(ss.is_proper);
}

TEST_CASE("to_ss exposes derivative feedthrough of improper models") {
    SUBCASE("inductor impedance") {
        SsResult ss = to_ss(inductor_impedance(3.0));
        REQUIRE(ss.A.rows() == 1);
        CHECK(ss.A(0, 0) == 0.0);
        CHECK(ss.B(0, 0) == 0.0);
        CHECK(ss.Bd(0, 0) == 1.0);
        CHECK(ss.C(0, 0) == 0.0);
        CHECK(ss.D(0, 0) == 0.0);
        CHECK(ss.Dd(0, 0) == 3.0);
        CHECK_FALSE(ss.is_proper);
        REQUIRE(ss.kept_labels.size() == 1);
        CHECK(ss.kept_labels[0].name == "i");
        CHECK(ss.kept_labels[0].kind == StateKind::Physical);
    }
    SUBCASE("capacitor admittance dual") {
        SsResult ss = to_ss(capacitor_admittance(2.0));
        CHECK(ss.Bd(0, 0) == 1.0);
        CHECK(ss.Dd(0, 0) == 2.0);
        CHECK_FALSE(ss.is_proper);
    }
}

TEST_CASE("to_ss reduces the series-inductor chain through the augmentation path") {
    const double l1 = 1.0, l2 = 2.0;
    DssModel chain = inverse(series({inductor_impedance(l1), inductor_impedance(l2)}));
    SsResult ss = to_ss(chain);
    CHECK(ss.is_proper);
    CHECK((ss.Bd.array() == 0.0).all());
    CHECK((ss.Dd.array() == 0.0).all());
    for (Index i = 0; i < ss.B.rows(); ++i)
        CHECK(std::abs(ss.B(i, 0) - 1.0 / (l1 + l2)) < 1e-12);
    for (const auto& label : ss.kept_labels) CHECK(label.kind == StateKind::Physical);
}

TEST_CASE("to_ss preserves the transfer function") {
    std::vector<DssModel> fixtures;
    fixtures.push_back(inductor_impedance(0.5));
    fixtures.push_back(capacitor_admittance(4.0));
    fixtures.push_back(inverse(series({inductor_impedance(1.0), inductor_impedance(3.0)})));
    fixtures.push_back(inverse(series({resistor(2.0, PortRole::Impedance), inductor_impedance(1.5)})));
    {
        Network net = parse_netlist(
            R"({"nodes":["1"],"branches":[{"id":"c1","kind":"C","from":"1","to":"GROUND","C":0.5},
                {"id":"l1","kind":"L","from":"1","to":"GROUND","L":2.0}]})");
        fixtures.push_back(whole_system(network_admittance(net), apparatus_stack(net)));
    }

    for (const DssModel& m : fixtures) {
        SsResult ss = to_ss(m);
        for (Complex s : testutil::sample_frequencies())
            CHECK(testutil::rel_err(ss_tf(ss, s), eval_tf(m, s)) < 1e-9);
    }
}

TEST_CASE("to_ss rejects pencils it cannot reduce") {
    SUBCASE("irregular pencil") {
        Mat e = Mat::Zero(1, 1), a = Mat::Zero(1, 1);
        DssModel m = make_dss(e, a, Mat::Zero(1, 1), Mat::Zero(1, 1), Mat::Zero(1, 1));
        CHECK_THROWS_AS(to_ss(m), IrregularPencil);
    }
    SUBCASE("index above two") {
        Mat a(2, 2), b(2, 1), c(1, 2), d(1, 1);
        a << 0.0, 1.0, 0.0, 0.0;
        b << 0.0, 1.0;
        c << 1.0, 0.0;
        d << 0.0;
        DssModel dbl = from_ss(a, b, c, d);  // 1/s^2
        CHECK_THROWS_AS(to_ss(inverse(dbl)), HigherIndex);
    }
}

#include <doctest.h>

#include <dss/model.hpp>

#include "test_util.hpp"

using namespace dss;

TEST_CASE("make_dss accepts the inductor admittance matrices") {
    Mat e(1, 1), a(1, 1), b(1, 1), c(1, 1), d(1, 1);
    e << 1.0; a << 0.0; b << 1.0; c << 1.0; d << 0.0;
    DssModel m = make_dss(e, a, b, c, d, {{"i", "i", StateKind::Physical}}, {"v"}, {"i"});
    CHECK(m.n() == 1);
    CHECK(m.m() == 1);
    CHECK(m.p() == 1);
    CHECK(m.state_labels[0].name == "i");
}

TEST_CASE("make_dss validates shapes") {
    CHECK_THROWS_AS(make_dss(Mat::Identity(2, 2), Mat::Zero(3, 3), Mat::Zero(3, 1),
                             Mat::Zero(1, 3), Mat::Zero(1, 1)),
                    DimensionMismatch);
    CHECK_THROWS_AS(make_dss(Mat::Identity(2, 2), Mat::Zero(2, 2), Mat::Zero(1, 1),
                             Mat::Zero(1, 2), Mat::Zero(1, 1)),
                    DimensionMismatch);
}

TEST_CASE("make_dss rejects a non-diagonal E") {
    Mat e(2, 2);
    e << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(make_dss(e, Mat::Zero(2, 2), Mat::Zero(2, 1), Mat::Zero(1, 2), Mat::Zero(1, 1)),
                    NonDiagonalE);
}

TEST_CASE("make_dss rejects duplicate state labels") {
    std::vector<StateLabel> labels{{"x", "o", StateKind::Physical}, {"x", "o", StateKind::Physical}};
    CHECK_THROWS_AS(make_dss(Mat::Identity(2, 2), Mat::Zero(2, 2), Mat::Zero(2, 1),
                             Mat::Zero(1, 2), Mat::Zero(1, 1), labels, {"u"}, {"y"}),
                    DuplicateLabel);
    // same name under different origins is fine
    std::vector<StateLabel> ok{{"x", "a", StateKind::Physical}, {"x", "b", StateKind::Physical}};
    CHECK_NOTHROW(make_dss(Mat::Identity(2, 2), Mat::Zero(2, 2), Mat::Zero(2, 1),
                           Mat::Zero(1, 2), Mat::Zero(1, 1), ok, {"u"}, {"y"}));
}

TEST_CASE("from_ss sets E to the identity") {
    Mat a(1, 1), b(1, 1), c(1, 1), d(1, 1);
    a << 0.0; b << 1.0; c << 1.0; d << 0.0;
    DssModel m = from_ss(a, b, c, d);
    CHECK(m.E == Mat::Identity(1, 1));

    SUBCASE("empty state pure gain") {
        Mat dm(1, 1);
        dm << 2.0;
        DssModel gain = from_ss(Mat(0, 0), Mat(0, 1), Mat(1, 0), dm);
        CHECK(gain.n() == 0);
        CHECK(gain.E.rows() == 0);
        CHECK(eval_tf(gain, Complex(3.0, -1.0))(0, 0) == Complex(2.0, 0.0));
    }
    SUBCASE("shape mismatch") {
        CHECK_THROWS_AS(from_ss(Mat::Zero(1, 1), Mat::Zero(2, 1), Mat::Zero(1, 1), Mat::Zero(1, 1)),
                        DimensionMismatch);
    }
}

TEST_CASE("eval_tf matches hand-solved values") {
    Mat e(1, 1), a(1, 1), b(1, 1), c(1, 1), d(1, 1);
    e << 1.0; a << 0.0; b << 1.0; c << 1.0; d << 0.0;
    DssModel yl = make_dss(e, a, b, c, d);
    CHECK(eval_tf(yl, Complex(2.0, 0.0))(0, 0) == Complex(0.5, 0.0));

    SUBCASE("improper two-state impedance structure") {
        // E = diag(L, 0), A = [[0,1],[-1,0]], B = [0;1], C = [0 1]: TF sL.
        Mat e2 = Mat::Zero(2, 2), a2(2, 2), b2(2, 1), c2(1, 2), d2(1, 1);
        e2(0, 0) = 3.0;
        a2 << 0.0, 1.0, -1.0, 0.0;
        b2 << 0.0, 1.0;
        c2 << 0.0, 1.0;
        d2 << 0.0;
        DssModel zl = make_dss(e2, a2, b2, c2, d2);
        const Complex got = eval_tf(zl, Complex(0.0, 2.0))(0, 0);
        CHECK(testutil::rel_err(got, Complex(0.0, 6.0)) < 1e-14);
    }
    SUBCASE("singular sample point") {
        CHECK_THROWS_AS(eval_tf(yl, Complex(0.0, 0.0)), SingularAtS);
    }
}

TEST_CASE("to_explicit_via_einv scales state rows") {
    Mat e(1, 1), a(1, 1), b(1, 1), c(1, 1), d(1, 1);
    e << 2.0; a << 0.0; b << 1.0; c << 1.0; d << 0.0;
    DssModel m = make_dss(e, a, b, c, d);
    DssModel x = to_explicit_via_einv(m);
    CHECK(x.E == Mat::Identity(1, 1));
    CHECK(x.A(0, 0) == 0.0);
    CHECK(x.B(0, 0) == 0.5);

    SUBCASE("identity E returns an equal model") {
        DssModel id = from_ss(a, b, c, d);
        DssModel same = to_explicit_via_einv(id);
        CHECK(same.A == id.A);
        CHECK(same.B == id.B);
        CHECK(same.E == id.E);
    }
    SUBCASE("singular E is rejected") {
        Mat e2 = Mat::Zero(2, 2);
        e2(0, 0) = 1.0;
        DssModel sing = make_dss(e2, Mat::Identity(2, 2), Mat::Zero(2, 1), Mat::Zero(1, 2),
                                 Mat::Zero(1, 1));
        CHECK_THROWS_AS(to_explicit_via_einv(sing), SingularE);
    }
}

TEST_CASE("pencil_is_regular") {
    Mat e(1, 1), a(1, 1);
    e << 1.0; a << 0.0;
    CHECK(pencil_is_regular(make_dss(e, a, Mat::Zero(1, 1), Mat::Zero(1, 1), Mat::Zero(1, 1))));

    e << 0.0;
    CHECK_FALSE(pencil_is_regular(make_dss(e, a, Mat::Zero(1, 1), Mat::Zero(1, 1), Mat::Zero(1, 1))));

    // two-state improper impedance: det(sE - A) is a nonzero constant
    Mat e2 = Mat::Zero(2, 2), a2(2, 2);
    e2(0, 0) = 1.0;
    a2 << 0.0, 1.0, -1.0, 0.0;
    CHECK(pencil_is_regular(make_dss(e2, a2, Mat::Zero(2, 1), Mat::Zero(1, 2), Mat::Zero(1, 1))));
}

TEST_CASE("rank tolerance configuration") {
    CHECK(rank_tolerance() == 0.0);
    CHECK_THROWS_AS(set_rank_tolerance(-1.0), Error);
    set_rank_tolerance(1e-10);
    CHECK(rank_tolerance() == 1e-10);
    CHECK(rank_threshold(4, 4, 2.0) == doctest::Approx(2e-10));
    set_rank_tolerance(0.0);
    CHECK(rank_threshold(4, 4, 1.0) ==
          doctest::Approx(4.0 * std::numeric_limits<double>::epsilon()));
}

#include "support.hpp"

#include <gtest/gtest.h>

using namespace qes;
using qes::testing::px;

namespace {

LaurentPoly py(std::initializer_list<std::pair<int, Rational>> terms) { return px(terms, Var::y); }

}  // namespace

TEST(Sextic, PotentialForMTwo) {
    const PolyMat2 M = sextic_potential({0, 1, 1, 2, 0});
    EXPECT_EQ(M(0, 0), py({{6, 4}, {2, -6}}));
    EXPECT_EQ(M(1, 1), py({{6, 4}, {2, -22}}));
    EXPECT_EQ(M(0, 1), py({{0, -16}}));
    EXPECT_EQ(M(1, 0), py({{0, -16}}));
}

TEST(Sextic, DecouplesWithoutKappa) {
    const PolynomialModel model = build_sextic({0, 1, 0, 3, 0});
    EXPECT_TRUE(model.original.is_diagonal());
    EXPECT_TRUE(model.reduced.is_diagonal());
}

TEST(Sextic, HalfIntegerEpsTail) {
    const SexticParams half{0, 1, 1, 2, make_rational(1, 2)}, zero{0, 1, 1, 2, 0};
    const PolyMat2 diff_ = sextic_potential(half);
    const PolyMat2 base = sextic_potential(zero);
    const LaurentPoly tail = diff_(0, 0).outside(0, 100);
    EXPECT_EQ(tail, py({{-2, make_rational(-1, 4)}}));
    EXPECT_EQ(diff_(1, 1).outside(0, 100), tail);
    EXPECT_NE(diff_(0, 0) - tail, base(0, 0));  // the y^2 coefficient carries (1 - 2 eps)
}

TEST(Sextic, EpsOneDiffersOnlyThroughOneMinusTwoEps) {
    const PolyMat2 a = sextic_potential({make_rational(1, 2), 1, 1, 3, 0});
    const PolyMat2 b = sextic_potential({make_rational(1, 2), 1, 1, 3, 1});
    EXPECT_EQ(a(0, 0) - b(0, 0), py({{2, 4}}));
    EXPECT_EQ(a(0, 1), b(0, 1));
}

TEST(Sextic, GaugedIsPolynomialAndDescriptor) {
    for (int m = 2; m <= 5; ++m)
        for (int eps = 0; eps <= 1; ++eps) {
            const SexticParams p{make_rational(1, 2), make_rational(1, 4), 3, m, eps};
            const MatDiffOp2 op = build_sextic_gauged(p);
            EXPECT_TRUE(laurent_tail(op).empty());
            const auto sp = build_sextic(p).space;
            EXPECT_EQ(sp.n, m - 2);
            EXPECT_EQ(sp.m, m);
            EXPECT_EQ(sp.dim(), 2 * m);
            EXPECT_EQ(sp.mixer.kappa0, Scalar(3));
            EXPECT_TRUE(sp.mixer.kappa1.is_zero());
        }
}

TEST(Sextic, Errors) {
    EXPECT_THROW(build_sextic({0, 1, 1, 1, 0}), DomainError);
    EXPECT_EQ(build_sextic({0, -1, 1, 2, 0}).warnings.size(), 1u);
}

TEST(Sextic, HalfIntegerTailCancelsUnderGauge) {
    // eps(eps-1)/y^2 on the diagonal is exactly what the y^eps prefactor generates
    const SexticParams p{0, 1, 1, 2, make_rational(1, 2)};
    EXPECT_TRUE(laurent_tail(build_sextic_gauged(p)).empty());
    const MatDiffOp2 bare = pushforward_even(gauge_conjugate(
        MatDiffOp2::scalar(-DiffOp::derivative(Var::y, 2)) + MatDiffOp2::potential(sextic_potential({0, 1, 1, 2, 0})),
        sextic_gauge(p)));
    EXPECT_FALSE(laurent_tail(mixer_conjugate(bare, build_sextic(p).space.mixer)).empty());
}

TEST(Lame, CaseOneExample) {
    const LameParams p{1, 0, 1, make_rational(1, 2)};
    const LameDerived d = lame_derived(p);
    EXPECT_EQ(d.A, 2);
    EXPECT_EQ(d.C, 4);
    EXPECT_EQ(d.two_theta_k_sq, 4);
    EXPECT_EQ(*d.R, make_rational(1, 2));
    const auto v1 = lame_space(p, 1);
    ASSERT_TRUE(v1);
    EXPECT_EQ(v1->mixer.kappa3, Scalar(make_rational(1, 2)));
    EXPECT_EQ(v1->dim(), 2);
    const LameModel model = build_lame(p);
    EXPECT_EQ(model.field.two_theta_k, Scalar(2));
}

TEST(Lame, CaseTwoExample) {
    const LameParams p{2, 1, 1, make_rational(1, 2)};
    const LameDerived d = lame_derived(p);
    EXPECT_EQ(d.A, 6);
    EXPECT_EQ(d.C, 8);
    EXPECT_EQ(*d.R, make_rational(2, 3));
    EXPECT_EQ(*lame_kappa_sq(p, d, 5), make_rational(1, 3));
}

TEST(Lame, Invariants) {
    for (int c = 1; c <= 2; ++c)
        for (int m = 0; m <= 4; ++m)
            for (int delta = -3; delta <= 6; ++delta) {
                const LameParams p{c, m, delta, make_rational(9, 16)};
                const int base = c == 1 ? 4 * m + 3 : 4 * m + 1;
                if (std::abs(delta) > base) {
                    EXPECT_THROW(lame_derived(p), DomainError);
                    continue;
                }
                const LameDerived d = lame_derived(p);
                const int diag = c == 1 ? 4 * m * m + 6 * m + 3 : 4 * m * m + 2 * m + 1;
                EXPECT_EQ(d.A + d.C, 2 * diag);
                EXPECT_EQ(d.C - d.A, 2 * delta);
                EXPECT_EQ(d.two_theta_sq + delta * delta, base * base);
                if (d.R && *d.R != 0) {
                    // k^4 pairs: (V1, V2) and (V7, V8); R^2 pairs: (V3, V4) and (V5, V6)
                    const int k4 = c == 1 ? 1 : 7, r2 = c == 1 ? 3 : 5;
                    const Rational k2 = p.ksq;
                    const Rational a = *lame_kappa_sq(p, d, k4), b = *lame_kappa_sq(p, d, k4 + 1);
                    const Rational e = *lame_kappa_sq(p, d, r2), f = *lame_kappa_sq(p, d, r2 + 1);
                    EXPECT_EQ(Rational(a * b), Rational(k2 * k2));
                    EXPECT_EQ(Rational(e * f), Rational(*d.R * *d.R));
                }
            }
}

TEST(Lame, SpaceDimensions) {
    for (int m = 1; m <= 3; ++m) {
        const LameModel c1 = build_lame({1, m, 1, make_rational(1, 2)});
        EXPECT_EQ(c1.spaces[0].dim(), 2 * m + 2);
        EXPECT_EQ(c1.spaces[2].dim(), 2 * m + 1);
        const LameModel c2 = build_lame({2, m, 1, make_rational(1, 2)});
        EXPECT_EQ(c2.spaces[2].dim(), 2 * m);
    }
}

TEST(Lame, NegativeDegreeRejectedPerSpace) {
    const LameModel model = build_lame({2, 0, 1, make_rational(1, 2)});
    EXPECT_FALSE(model.rejected.empty());
    for (const auto& sp : model.spaces) EXPECT_GT(sp.dim(), 0);
    std::string why;
    EXPECT_FALSE(lame_space({2, 0, 1, make_rational(1, 2)}, 7, &why));
    EXPECT_NE(why.find("negative degree"), std::string::npos);
    EXPECT_FALSE(lame_space({1, 0, 1, make_rational(1, 2)}, 5));
}

TEST(Lame, FieldAnalysis) {
    const FieldPlan rational = lame_field_analysis({1, 0, 1, make_rational(1, 2)}, 1);
    EXPECT_TRUE(rational.rational);
    EXPECT_EQ(*rational.kappa, Scalar(make_rational(1, 2)));

    const FieldPlan third = lame_field_analysis({1, 0, 1, make_rational(1, 3)}, 1);
    EXPECT_FALSE(third.rational);
    EXPECT_EQ(third.radicand, 6);
    EXPECT_EQ(*third.kappa * *third.kappa, Scalar(make_rational(1, 6)));
    EXPECT_EQ(third.two_theta_k * third.two_theta_k, Scalar(make_rational(8, 3)));

    const FieldPlan zero_delta = lame_field_analysis({1, 1, 0, make_rational(1, 4)}, 1);
    EXPECT_TRUE(zero_delta.rational);
    EXPECT_EQ(*zero_delta.kappa, Scalar(make_rational(1, 2)));
    EXPECT_FALSE(lame_field_analysis({1, 1, 0, make_rational(1, 2)}, 1).rational);
}

TEST(Lame, DecoupledFlag) {
    const LameModel model = build_lame({1, 1, 7, make_rational(1, 2)});
    EXPECT_TRUE(model.decoupled);
    EXPECT_TRUE(model.H.is_diagonal());
    EXPECT_FALSE(build_lame({1, 1, 6, make_rational(1, 2)}).decoupled);
}

TEST(Lame, TrigonometricLimitFoldsDn) {
    const LameModel model = build_lame({1, 0, 1, Rational(0)});
    EXPECT_TRUE(model.H(0, 0).part(0).coeff(1).is_zero());
    EXPECT_TRUE(model.H(0, 1).part(EllipticMonomial{0, 1, 1}).is_zero());
}

TEST(Admissibility, Examples) {
    GeneralizedLameAnsatz g;
    g.alpha = {0, 1, 1};
    g.gamma = {0, 1, 1};
    EXPECT_TRUE(admissibility_check(g).admissible);

    GeneralizedLameAnsatz odd;
    odd.alpha = {1, 0, 0};
    const auto rep = admissibility_check(odd);
    EXPECT_FALSE(rep.admissible);
    EXPECT_NE(rep.violations.front().find("j=1"), std::string::npos);

    GeneralizedLameAnsatz shifted;
    shifted.alpha = {2, 0, 0};
    shifted.beta = {1, 0, 0};
    EXPECT_FALSE(admissibility_check(shifted).admissible);
}

TEST(Goldstone, FreeAndTrace) {
    const MatEllipticOp zero = build_goldstone(0);
    for (const auto& e : zero.potential) EXPECT_TRUE(e.is_zero());
    const MatEllipticOp H = build_goldstone(5);
    EXPECT_EQ(H(0, 0) + H(1, 1), EllipticElement::constant(Scalar(), 5));
    EXPECT_EQ(H(0, 1), EllipticElement::monomial(Scalar(), {1, 1, 0}, LaurentPoly::constant(5, Var::x)));
    EXPECT_TRUE(H.is_hermitian());
}

TEST(Calogero, Constants) {
    const CalogeroParams p;
    EXPECT_EQ(p.b(), 7);
    EXPECT_EQ(p.gamma(), 0);
    EXPECT_TRUE(calogero_potential(p)(0, 0).is_polynomial());
    CalogeroParams e = p;
    e.eps = 2;
    EXPECT_EQ(e.gamma(), 2 * 2 * (2 - 1 + 7));
    EXPECT_EQ(calogero_potential(e)(0, 0).coeff(-1), Scalar(e.gamma()));
}

TEST(Calogero, NoQuarticPartWithoutP2) {
    CalogeroParams p;
    p.p2 = 0;
    const PolyMat2 V = calogero_potential(p);
    EXPECT_LE(V(0, 0).max_degree(), 1);
    EXPECT_LE(V(1, 1).max_degree(), 1);
    EXPECT_THROW(build_calogero_reduced(p, CalogeroReading::gauge_quadratic, CalogeroMixer::kappa0_over_p2), DomainError);
}

TEST(Calogero, PrintedDescriptor) {
    const PolynomialModel model = build_calogero_reduced(CalogeroParams{});
    EXPECT_TRUE(std::holds_alternative<std::monostate>(model.space.prefactor));
    EXPECT_EQ(model.space.n, 0);
    EXPECT_EQ(model.space.m, 2);
    EXPECT_EQ(model.space.var, Var::tau);
    EXPECT_EQ(model.reduced.e[0].coeff(1), px({{1, 4}, {0, 14}}, Var::tau));
}

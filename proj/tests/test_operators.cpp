#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qde/operators.hpp"

using namespace qde;

namespace {

bool same(const Mat<RatFunc>& a, const Mat<RatFunc>& b) { return (a - b).is_zero(); }

Mat<MpComplex> eval_mat(const NumEval& ev, const Mat<RatFunc>& m) {
    Mat<MpComplex> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ev(m(i, j));
    return out;
}

NumEval full_eval(const VarTablePtr& vt) {
    return NumEval(vt, {{"q", MpComplex(MpReal("0.83"), MpReal("0.41"))},
                        {"t", MpComplex(MpReal("1.37"), MpReal("-0.29"))},
                        {"u1", MpComplex(MpReal("0.57"), MpReal("0.77"))},
                        {"z1", MpComplex(MpReal("0.23"), MpReal("0.91"))},
                        {"z2", MpComplex(MpReal("-0.64"), MpReal("0.37"))},
                        {"p", MpComplex(MpReal("0.15"), MpReal("-0.08"))}});
}

RatFunc q_pow(const VarTablePtr& vt, int doubled) { return RatFunc(Laurent::var_pow2(vt, "q", doubled)); }

}  // namespace

TEST_CASE("arc realization covers every wall direction of the three-box sector") {
    auto ctx = QuiverContext::hilb();
    OperatorAssembler A(ctx, {3, 3});
    std::vector<std::pair<std::vector<int>, Arc>> table = {
        {{1, 0}, {2, 3}}, {{0, 1}, {1, 2}}, {{1, 2}, {1, 4}}, {{2, 1}, {2, 5}},
        {{3, 2}, {2, 7}}, {{2, 3}, {1, 6}}, {{1, 1}, {1, 3}}, {{2, 2}, {1, 5}},
    };
    for (const auto& [d, arc] : table) {
        Arc got = A.arc_for_direction(d);
        CHECK(got.i == arc.i);
        CHECK(got.j == arc.j);
    }
    CHECK_THROWS_AS((void)A.arc_for_direction({0, 2}), std::domain_error);
    CHECK_THROWS_AS((void)A.arc_for_direction({-1, 0}), std::domain_error);
}

TEST_CASE("rank-one ladder reproduces its hand-built three-term form") {
    auto ctx = QuiverContext::hilb();
    const VarTablePtr& vt = ctx.table();
    OperatorAssembler A(ctx, {1, 0}, BracketForm::balanced, ScalarTwist::plain, KappaShift::off);
    Wall wall{{0, 1}, Rat(0), WallKind::sl2, {1}};
    Slope m = {Rat(1, 3), Rat(0)};
    Mat<RatFunc> B = A.wall_operator(wall, m);
    REQUIRE(B.rows() == 1);

    // The raising chain (1,0) -> (1,1) -> (1,2) stops there: (1,3) has no
    // fixed points, so exactly two ladder terms survive on top of the identity.
    REQUIRE(ctx.fixed_points({1, 2}).size() == 1);
    REQUIRE(ctx.fixed_points({1, 3}).empty());

    ShuffleEval sh(ctx);
    Arc arc{1, 2};
    auto b10 = ctx.fixed_points({1, 0});
    auto b11 = ctx.fixed_points({1, 1});
    auto b12 = ctx.fixed_points({1, 2});
    auto P1 = sh.p_matrix(b11, b10, arc, m, Normalization::core);
    auto P2 = sh.p_matrix(b12, b11, arc, m, Normalization::core);
    auto Q1 = sh.q_matrix(b10, b11, arc, m, Normalization::core);
    auto Q2 = sh.q_matrix(b11, b12, arc, m, Normalization::core);
    CHECK_FALSE((P2 * P1).is_zero());

    Laurent qmq = Laurent::var_pow2(vt, "q", 2) - Laurent::var_pow2(vt, "q", -2);
    Laurent two_q2 = Laurent::var_pow2(vt, "q", 4) + Laurent::var_pow2(vt, "q", -4);
    Monomial z1inv = Monomial::var_pow2(vt->size(), ctx.var_z(1), -2);
    Laurent dfac = Laurent::one(vt) - Laurent::monomial(vt, z1inv);
    Mat<RatFunc> expect = Mat<RatFunc>::identity(1, RatFunc::one(vt));
    expect += (Q1 * P1).scaled(RatFunc(-qmq, dfac));
    expect += (Q1 * Q2 * P2 * P1).scaled(RatFunc(qmq * qmq, two_q2 * dfac * dfac));
    CHECK(same(B, expect));

    // The one-dimensional composite itself: QP = -q^4 + q^2 + 1 - q^-2.
    Laurent qp = Laurent::var_pow2(vt, "q", 4) + Laurent::one(vt) - Laurent::var_pow2(vt, "q", 8) -
                 Laurent::var_pow2(vt, "q", -4);
    CHECK((Q1 * P1)(0, 0) == RatFunc(qp));

    CHECK(same(z_zero_limit(ctx, B), Mat<RatFunc>::identity(1, RatFunc::one(vt))));
    CHECK(same(z_infinity_limit(ctx, B), A.wall_operator_at_infinity(wall, m)));
}

TEST_CASE("periodic wall reproduces the two-copy oscillator form") {
    auto ctx = QuiverContext::hilb();
    const VarTablePtr& vt = ctx.table();
    OperatorAssembler A(ctx, {1, 1}, BracketForm::balanced, ScalarTwist::plain, KappaShift::off);
    Wall wall{{1, 1}, Rat(-1), WallKind::heisenberg, {1}};
    Slope m = {Rat(-1, 3), Rat(-2, 3)};
    auto B = A.wall_operator(wall, m);

    ShuffleEval sh(ctx);
    auto b11 = ctx.fixed_points({1, 1});
    auto b00 = ctx.fixed_points({0, 0});
    Arc a1{1, 3}, a2{2, 4};
    Laurent nk = Laurent::var_pow2(vt, "q", 2) - Laurent::var_pow2(vt, "q", -2);
    // One oscillator mode per cyclic start; the scalar denominator carries
    // z1^-1 z2^-1 p^r with r the wall level (-1 here), so p enters inversely.
    Monomial Z(vt->size());
    Z.e[ctx.var_z(1)] = -2;
    Z.e[ctx.var_z(2)] = -2;
    Z.e[ctx.var_p()] = -2;
    RatFunc C1(nk, Laurent::one(vt) - Laurent::monomial(vt, Z));
    Mat<RatFunc> expect = Mat<RatFunc>::identity(2, RatFunc::one(vt));
    expect += (sh.p_matrix(b11, b00, a1, m, Normalization::core) *
               sh.q_matrix(b00, b11, a1, m, Normalization::core))
                  .scaled(-C1);
    expect += (sh.p_matrix(b11, b00, a2, m, Normalization::core) *
               sh.q_matrix(b00, b11, a2, m, Normalization::core))
                  .scaled(-C1);
    CHECK(same(B, expect));

    CHECK(same(z_zero_limit(ctx, B), Mat<RatFunc>::identity(2, RatFunc::one(vt))));
    CHECK(same(z_infinity_limit(ctx, B), A.wall_operator_at_infinity(wall, m)));
}

TEST_CASE("periodic wall expansion enumerates every admissible multiset") {
    auto ctx = QuiverContext::hilb();
    const VarTablePtr& vt = ctx.table();
    OperatorAssembler A(ctx, {2, 2}, BracketForm::balanced, ScalarTwist::plain, KappaShift::off);
    Wall wall{{1, 1}, Rat(-1), WallKind::heisenberg, {1, 2}};
    Slope m = {Rat(-1, 3), Rat(-2, 3)};
    auto Binf = A.wall_operator_at_infinity(wall, m);

    ShuffleEval sh(ctx);
    auto core = Normalization::core;
    auto s0 = ctx.fixed_points({2, 2});
    auto s1 = ctx.fixed_points({1, 1});
    auto s2 = ctx.fixed_points({0, 0});
    REQUIRE(s0.size() == 5);

    // Mode scalars at z -> infinity: n_k = (q^k - q^-k)/k.
    RatFunc n1 = q_pow(vt, 2) - q_pow(vt, -2);
    RatFunc n2 = (q_pow(vt, 4) - q_pow(vt, -4)).scaled(Rat(1, 2));

    auto P = [&](const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from, Arc a) {
        return sh.p_matrix(to, from, a, m, core);
    };
    auto Q = [&](const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from, Arc a) {
        return sh.q_matrix(to, from, a, m, core);
    };
    Arc a11{1, 3}, a21{2, 4}, a12{1, 5}, a22{2, 6};

    Mat<RatFunc> expect = Mat<RatFunc>::identity(5, RatFunc::one(vt));
    // single mode k=1, each copy
    expect += (P(s0, s1, a11) * Q(s1, s0, a11)).scaled(-n1);
    expect += (P(s0, s1, a21) * Q(s1, s0, a21)).scaled(-n1);
    // single mode k=2, each copy
    expect += (P(s0, s2, a12) * Q(s2, s0, a12)).scaled(-n2);
    expect += (P(s0, s2, a22) * Q(s2, s0, a22)).scaled(-n2);
    // doubled mode k=1 on one copy: coefficient n1^2 / 2
    expect += (P(s0, s1, a11) * P(s1, s2, a11) * Q(s2, s1, a11) * Q(s1, s0, a11))
                  .scaled(n1 * n1.scaled(Rat(1, 2)));
    expect += (P(s0, s1, a21) * P(s1, s2, a21) * Q(s2, s1, a21) * Q(s1, s0, a21))
                  .scaled(n1 * n1.scaled(Rat(1, 2)));
    // one k=1 mode on each copy: coefficient n1^2
    expect += (P(s0, s1, a21) * P(s1, s2, a11) * Q(s2, s1, a21) * Q(s1, s0, a11)).scaled(n1 * n1);
    CHECK(same(Binf, expect));
}

TEST_CASE("long-arc raising operators split by the braided recursion in the dominant chamber") {
    auto ctx = QuiverContext::hilb();
    const VarTablePtr& vt = ctx.table();
    ShuffleEval sh(ctx);
    auto core = Normalization::core;
    Slope m = {Rat(1, 3), Rat(1, 7)};
    auto b11 = ctx.fixed_points({1, 1});
    auto b12 = ctx.fixed_points({1, 2});
    auto b22 = ctx.fixed_points({2, 2});
    auto b23 = ctx.fixed_points({2, 3});
    RatFunc q2i = q_pow(vt, -4);
    RatFunc unit = RatFunc::one(vt) - q2i;
    auto E = sh.p_matrix(b23, b11, {1, 4}, m, core).scaled(unit);

    auto first = sh.p_matrix(b23, b22, {1, 2}, m, core) * sh.p_matrix(b22, b11, {2, 4}, m, core);
    auto swapped = sh.p_matrix(b23, b12, {2, 4}, m, core) * sh.p_matrix(b12, b11, {1, 2}, m, core);
    CHECK(same(E, first - swapped.scaled(q2i)));

    auto first2 = sh.p_matrix(b23, b12, {1, 3}, m, core) * sh.p_matrix(b12, b11, {3, 4}, m, core);
    auto swapped2 = sh.p_matrix(b23, b22, {3, 4}, m, core) * sh.p_matrix(b22, b11, {1, 3}, m, core);
    CHECK(same(E, first2 - swapped2.scaled(q2i)));
}

TEST_CASE("raising operators along overlapping arcs commute on the periodic wall") {
    // The oscillator expansion multiplies same-content raising blocks in a
    // fixed canonical order; this is harmless precisely because the blocks
    // commute at slope points lying on the periodic wall (integral pairing
    // with the all-ones direction). Off the wall they need not commute.
    auto ctx = QuiverContext::hilb();
    ShuffleEval sh(ctx);
    auto core = Normalization::core;
    Slope m = {Rat(-1, 3), Rat(-2, 3)};
    auto b11 = ctx.fixed_points({1, 1});
    auto b22 = ctx.fixed_points({2, 2});
    auto b33 = ctx.fixed_points({3, 3});
    Arc a{1, 3}, b{2, 4};
    auto lhs = sh.p_matrix(b33, b22, a, m, core) * sh.p_matrix(b22, b11, b, m, core);
    auto rhs = sh.p_matrix(b33, b22, b, m, core) * sh.p_matrix(b22, b11, a, m, core);
    CHECK(same(lhs, rhs));
}

TEST_CASE("the difference operator is path independent across an alcove") {
    auto ctx = QuiverContext::hilb();
    WallArrangement arr(ctx, {1, 1});
    std::vector<int> L = {1, 1};
    Slope sA = {Rat(-1, 10), Rat(-3, 10)};
    Slope sB = {Rat(-3, 10), Rat(-1, 10)};
    PathTrace pA = arr.trace(sA, path_end(sA, L));
    PathTrace pB = arr.trace(sB, path_end(sB, L));
    REQUIRE(pA.crossings.size() == 4);
    REQUIRE(pB.crossings.size() == 4);
    // The two start points sit in the same alcove but meet the walls in a
    // different order and at different points.
    CHECK(pA.crossings[1].wall.dprim == std::vector<int>{0, 1});
    CHECK(pB.crossings[1].wall.dprim == std::vector<int>{1, 0});

    OperatorAssembler A(ctx, {1, 1});
    DifferenceOperator MA = A.difference_operator(L, pA);
    DifferenceOperator MB = A.difference_operator(L, pB);
    CHECK(MA.degrees == L);
    CHECK(same(MA.line_action, A.l_action(L)));
    CHECK(same(MA.matrix, MB.matrix));

    CHECK(same(z_zero_limit(ctx, MA.matrix), A.l_action(L)));
    auto inf = z_infinity_limit(ctx, MA.matrix);
    CHECK(same(inf, A.difference_operator_at_infinity(L, pA)));
    CHECK(same(inf, z_infinity_limit(ctx, MB.matrix)));
}

TEST_CASE("difference operators of different degrees commute at z to infinity") {
    auto ctx = QuiverContext::hilb();
    WallArrangement arr(ctx, {1, 1});
    OperatorAssembler A(ctx, {1, 1});
    Slope s = {Rat(-1, 10), Rat(-3, 10)};
    std::vector<int> L1 = {1, 1}, L2 = {1, 0};
    auto M1 = A.difference_operator_at_infinity(L1, arr.trace(s, path_end(s, L1)));
    auto M2 = A.difference_operator_at_infinity(L2, arr.trace(s, path_end(s, L2)));
    CHECK(same(M1 * M2, M2 * M1));
}

TEST_CASE("an identity-direction wall acts nontrivially on the ten-point sector") {
    auto ctx = QuiverContext::hilb();
    OperatorAssembler A(ctx, {3, 3});
    Arc arc = A.arc_for_direction({2, 3});
    CHECK(arc.i == 1);
    CHECK(arc.j == 6);
    NumEval ev = full_eval(ctx.table());
    Wall wall{{2, 3}, Rat(1), WallKind::sl2, {1}};
    Slope m = {Rat(5, 7), Rat(-1, 7)};
    auto B = A.wall_operator_num(ev, wall, m);
    REQUIRE(B.rows() == 10);
    auto diff = B - Mat<MpComplex>::identity(10, MpComplex(MpReal(1L)));
    CHECK(mat_max_abs(diff).to_double() > 0.1);
}

TEST_CASE("kappa dressing equals substituting shifted Kaehler variables") {
    auto ctx = QuiverContext::hilb();
    const VarTablePtr& vt = ctx.table();
    Wall wall{{1, 0}, Rat(-1), WallKind::sl2, {1}};
    Slope m = {Rat(-1), Rat(-1, 7)};
    OperatorAssembler on(ctx, {1, 1}, BracketForm::balanced, ScalarTwist::plain, KappaShift::on);
    OperatorAssembler off(ctx, {1, 1}, BracketForm::balanced, ScalarTwist::plain, KappaShift::off);
    auto Bon = on.wall_operator(wall, m);
    auto Boff = off.wall_operator(wall, m);
    CHECK_FALSE(same(Bon, Boff));

    // For v = (1,1), w = (1,0): w - Cv = (1,0). Its only nonzero entry sits
    // at color 0, whose Kaehler variable is z2, so z2 -> z2 q^-1 and z1 stays.
    Monomial image(vt->size());
    image.e[ctx.var_z(2)] = 2;
    image.e[ctx.var_q()] = -2;
    std::map<std::size_t, Laurent::MonoImage> images = {{ctx.var_z(2), {image, Rat(1)}}};
    Mat<RatFunc> shifted(Boff.rows(), Boff.cols());
    for (std::size_t i = 0; i < Boff.rows(); ++i)
        for (std::size_t j = 0; j < Boff.cols(); ++j) shifted(i, j) = Boff(i, j).substitute_monomials(images);
    CHECK(same(Bon, shifted));
}

TEST_CASE("numeric wall operators agree across execution policies and with the exact build") {
    auto ctx = QuiverContext::hilb();
    NumEval ev = full_eval(ctx.table());
    Wall wall{{0, 1}, Rat(-1), WallKind::sl2, {1}};
    Slope m = {Rat(-1, 7), Rat(-1)};
    OperatorAssembler A1(ctx, {1, 1});
    auto exact = eval_mat(ev, A1.wall_operator(wall, m));
    auto serial = A1.wall_operator_num(ev, wall, m, ExecPolicy::serial);
    auto openmp = A1.wall_operator_num(ev, wall, m, ExecPolicy::openmp);
    CHECK(mat_max_abs(exact - serial).to_double() < 1e-60);
    CHECK(mat_max_abs(serial - openmp).to_double() < 1e-60);

    OperatorAssembler A3(ctx, {3, 3});
    Wall w3{{1, 0}, Rat(-1), WallKind::sl2, {1}};
    Slope m3 = {Rat(-1), Rat(-1, 7)};
    auto s3 = A3.wall_operator_num(ev, w3, m3, ExecPolicy::serial);
    auto p3 = A3.wall_operator_num(ev, w3, m3, ExecPolicy::openmp);
    REQUIRE(s3.rows() == 10);
    CHECK(mat_max_abs(s3 - p3).to_double() < 1e-60);
}

TEST_CASE("spectral certificate separates eigenvalues and rejects collisions") {
    auto ctx = QuiverContext::hilb();
    NumEval ev(ctx.table(), {{"q", MpComplex(MpReal("0.31"), MpReal(0L))},
                             {"t", MpComplex(MpReal("1.7"), MpReal(0L))},
                             {"u1", MpComplex(MpReal(1L), MpReal(0L))}});
    WallArrangement arr(ctx, {1, 1});
    OperatorAssembler A(ctx, {1, 1});
    Slope s = {Rat(-1, 10), Rat(-3, 10)};
    std::vector<int> L = {1, 1};
    auto Minf = A.difference_operator_at_infinity_num(ev, L, arr.trace(s, path_end(s, L)));
    SpectralData sd = spectral_certificate(Minf, MpReal("1e-40"), MpReal("1e-8"));
    REQUIRE(sd.values.size() == 2);
    CHECK(sd.min_gap.to_double() > 1e-3);
    CHECK(sd.residual.to_double() < 1e-40);

    auto id2 = Mat<MpComplex>::identity(2, MpComplex(MpReal(1L)));
    CHECK_THROWS_AS((void)spectral_certificate(id2, MpReal("1e-40"), MpReal("1e-8")), std::domain_error);
}

TEST_CASE("off-wall and malformed inputs are rejected") {
    auto ctx = QuiverContext::hilb();
    OperatorAssembler A(ctx, {1, 1});
    Wall sl2w{{0, 1}, Rat(0), WallKind::sl2, {1}};
    CHECK_THROWS_AS((void)A.wall_operator(sl2w, {Rat(1, 3), Rat(1, 7)}), std::domain_error);
    Wall heisw{{1, 1}, Rat(-1), WallKind::heisenberg, {1}};
    CHECK_THROWS_AS((void)A.wall_operator(heisw, {Rat(-1, 3), Rat(-1, 3)}), std::domain_error);
    Wall badheis{{1, 2}, Rat(-1), WallKind::heisenberg, {1}};
    CHECK_THROWS_AS((void)A.wall_operator(badheis, {Rat(-1, 3), Rat(-1, 3)}), std::domain_error);
    CHECK_THROWS_AS((void)A.wall_operator(sl2w, {Rat(0)}), std::domain_error);
    Wall negw{{0, -1}, Rat(0), WallKind::sl2, {1}};
    CHECK_THROWS_AS((void)A.wall_operator(negw, {Rat(0), Rat(0)}), std::domain_error);
}

TEST_CASE("weighted twist keeps the endpoint structure") {
    auto ctx = QuiverContext::hilb();
    const VarTablePtr& vt = ctx.table();
    OperatorAssembler A(ctx, {1, 1}, BracketForm::balanced, ScalarTwist::weighted, KappaShift::on);
    Wall sl2w{{0, 1}, Rat(-1), WallKind::sl2, {1}};
    Slope msl = {Rat(-1, 7), Rat(-1)};
    auto B1 = A.wall_operator(sl2w, msl);
    CHECK(same(z_zero_limit(ctx, B1), Mat<RatFunc>::identity(2, RatFunc::one(vt))));
    CHECK(same(z_infinity_limit(ctx, B1), A.wall_operator_at_infinity(sl2w, msl)));

    Wall heisw{{1, 1}, Rat(-1), WallKind::heisenberg, {1}};
    Slope mh = {Rat(-1, 3), Rat(-2, 3)};
    auto B2 = A.wall_operator(heisw, mh);
    CHECK(same(z_zero_limit(ctx, B2), Mat<RatFunc>::identity(2, RatFunc::one(vt))));

    NumEval ev = full_eval(vt);
    auto Bn = A.wall_operator_num(ev, sl2w, msl);
    CHECK(Bn.inverse(MpComplex(MpReal(1L))).has_value());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plcs/bivar.hpp"
#include "plcs/linalg.hpp"
#include "plcs/series.hpp"
#include "plcs/unipoly.hpp"

#include <random>

using namespace plcs;

namespace {

series t_poly(std::initializer_list<std::pair<expo_t, long long>> terms, expo_t tr = kNoTrunc)
{
    series s(tr);
    for (const auto& [e, c] : terms)
        s.add_to(e, fel(rational(c)));
    return s;
}

fel rnd_fel(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long long> num(-9, 9);
    std::uniform_int_distribution<long long> den(1, 7);
    return fel(rational(num(rng), den(rng)));
}

} // namespace

TEST_CASE("rational parse and print round trip")
{
    CHECK(parse_rational("3/4") == rational(3, 4));
    CHECK(parse_rational("-12") == rational(-12));
    CHECK(rational_to_string(rational(-3, 9)) == "-1/3");
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("field axioms on randomized triples, rationals and an extension")
{
    std::mt19937_64 rng(12345);
    // z^2 + z + 1, a cyclotomic factor of the kind used for x^n + y^n branches
    auto fld = make_extension("z", {rational(1), rational(1), rational(1)});
    for (int it = 0; it < 60; ++it) {
        fel a, b, c;
        if (it % 2 == 0) {
            a = rnd_fel(rng);
            b = rnd_fel(rng);
            c = rnd_fel(rng);
        } else {
            a = fel(fld, {rnd_fel(rng).rat_value(), rnd_fel(rng).rat_value()});
            b = fel(fld, {rnd_fel(rng).rat_value(), rnd_fel(rng).rat_value()});
            c = fel(fld, {rnd_fel(rng).rat_value(), rnd_fel(rng).rat_value()});
        }
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero())
            CHECK(a * a.inverse() == fel(1));
    }
    // z^3 = 1 in QQ[z]/(z^2+z+1)
    const fel z = fel::generator(fld);
    CHECK(z * z * z == fel::one(fld));
    CHECK(z != fel::one(fld));
}

TEST_CASE("series add/mul with truncation")
{
    // (t + t^2) * t = t^2 + t^3 at N=5
    auto prod = t_poly({{1, 1}, {2, 1}}, 5) * t_poly({{1, 1}}, 5);
    CHECK(prod == t_poly({{2, 1}, {3, 1}}, 5));

    // s + 0 = s
    auto s = t_poly({{0, 2}, {3, -1}}, 7);
    CHECK(s + series(7) == s);

    // (t^3 + 2t^4) * (t^3 + 2t^4) at N=5 truncates to 0
    auto c = t_poly({{3, 1}, {4, 2}}, 5);
    CHECK((c * c).is_zero());

    // variable mismatch is rejected
    series other(5, "s");
    other.add_to(1, fel(1));
    CHECK_THROWS_AS(t_poly({{1, 1}}, 5) + other, std::invalid_argument);
    CHECK_THROWS_AS(t_poly({{1, 1}}, 5) * other, std::invalid_argument);
}

TEST_CASE("series valuation is additive under multiplication")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> val(0, 4);
    for (int it = 0; it < 50; ++it) {
        series a(12), b(12);
        const int va = val(rng), vb = val(rng);
        a.add_to(va, fel(1));
        a.add_to(va + 2, rnd_fel(rng));
        b.add_to(vb, fel(1));
        b.add_to(vb + 1, rnd_fel(rng));
        if (va + vb < 12)
            CHECK((a * b).valuation() == va + vb);
    }
}

TEST_CASE("series composition: binomial, identity, derived cubic example")
{
    const fel u(rational(3)), v(rational(-2));
    // outer = t^2, inner = u t + v t^2  ->  u^2 t^2 + 2uv t^3 + v^2 t^4
    series inner(8);
    inner.add_to(1, u);
    inner.add_to(2, v);
    auto sq = compose(t_poly({{2, 1}}, 8), inner);
    series expect(8);
    expect.add_to(2, u * u);
    expect.add_to(3, fel(2) * u * v);
    expect.add_to(4, v * v);
    CHECK(sq == expect);

    // identity inner
    auto any = t_poly({{1, 4}, {3, -5}, {6, 2}}, 9);
    CHECK(compose(any, t_poly({{1, 1}}, 9)) == any);

    // outer = t^3 + c t^4, inner = alpha t + beta t^2:
    // expanded by hand: alpha^3 t^3 + (3 alpha^2 beta + c alpha^4) t^4 + ...
    const fel alpha(rational(2)), beta(rational(5)), cc(rational(7));
    series inner2(5);
    inner2.add_to(1, alpha);
    inner2.add_to(2, beta);
    series outer2(5);
    outer2.add_to(3, fel(1));
    outer2.add_to(4, cc);
    auto comp = compose(outer2, inner2);
    CHECK(comp.coeff(3) == alpha * alpha * alpha);
    CHECK(comp.coeff(4) == fel(3) * alpha * alpha * beta + cc * alpha * alpha * alpha * alpha);

    // composition is not defined when the inner series has a constant term
    CHECK_THROWS(compose(any, t_poly({{0, 1}, {1, 1}}, 9)));
}

TEST_CASE("series composition is associative at matching truncations")
{
    std::mt19937_64 rng(7);
    for (int it = 0; it < 25; ++it) {
        series s(10), phi(10), psi(10);
        for (expo_t e = 0; e < 6; ++e)
            s.add_to(e, rnd_fel(rng));
        phi.add_to(1, fel(1) + fel(rational(it % 3)));
        psi.add_to(1, fel(2));
        for (expo_t e = 2; e < 6; ++e) {
            phi.add_to(e, rnd_fel(rng));
            psi.add_to(e, rnd_fel(rng));
        }
        CHECK(compose(compose(s, phi), psi) == compose(s, compose(phi, psi)));
    }
}

TEST_CASE("series division recovers factors")
{
    auto a = t_poly({{2, 3}, {4, -1}, {5, 2}}, 10);
    auto b = t_poly({{2, 1}, {3, 4}}, 10);
    auto q = series_div(a * b, b, 10);
    CHECK(q == a.truncated(10));
}

TEST_CASE("bivariate basics: order, homogeneous part")
{
    bipoly p; // x^2 + xy + y^3
    p.set(2, 0, fel(1));
    p.set(1, 1, fel(1));
    p.set(0, 3, fel(1));
    CHECK(p.order() == 2);
    CHECK(p.total_degree() == 3);
    bipoly h2 = p.homogeneous_part(2);
    CHECK(h2.coeff(2, 0) == fel(1));
    CHECK(h2.coeff(1, 1) == fel(1));
    CHECK(h2.coeff(0, 3).is_zero());
    CHECK(p.homogeneous_part(1).is_zero());
    CHECK(bipoly().order() == kInfVal);

    // quasi-homogeneous input is its own degree-4 part: xy(x+y)(x+2y)
    bipoly f = bipoly::x() * bipoly::y() * (bipoly::x() + bipoly::y()) *
               (bipoly::x() + fel(2) * bipoly::y());
    CHECK(f.homogeneous_part(4) == f);
    CHECK(f.is_homogeneous());
}

TEST_CASE("poly_divide_exact on trivial and failing cases")
{
    const bipoly x = bipoly::x(), y = bipoly::y();
    auto r1 = poly_divide_exact(x * y, x);
    CHECK(r1.exact);
    CHECK(r1.quotient == y);

    auto r2 = poly_divide_exact(x * x + y * y, x);
    CHECK_FALSE(r2.exact);

    // X1 = x dx, X2 = y dy: wedge = xy, division by xy gives 1 (first Saito pair)
    auto r3 = poly_divide_exact(x * y, x * y);
    CHECK(r3.exact);
    CHECK(r3.quotient == bipoly::constant(fel(1)));
}

TEST_CASE("poly_divide_exact recovers randomized quotients")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> e(0, 3);
    for (int it = 0; it < 40; ++it) {
        bipoly q, d;
        for (int k = 0; k < 4; ++k) {
            q.add_to(e(rng), e(rng), rnd_fel(rng));
            d.add_to(e(rng), e(rng), rnd_fel(rng));
        }
        if (d.is_zero())
            continue;
        auto r = poly_divide_exact(q * d, d);
        CHECK(r.exact);
        CHECK(r.quotient == q);
    }
}

TEST_CASE("unipoly gcd and squarefree decomposition")
{
    // p = (u-1)^2 (u+2)
    unipoly u1{fel(-1), fel(1)};
    unipoly u2{fel(2), fel(1)};
    unipoly p = uni_mul(uni_mul(u1, u1), u2);
    auto sq = uni_squarefree(p);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].second == 1);
    CHECK(sq[0].first == u2);
    CHECK(sq[1].second == 2);
    CHECK(sq[1].first == u1);

    auto [roots, rest] = uni_split_rational_roots(p);
    CHECK(roots.size() == 3);
    CHECK(uni_deg(rest) == 0);
}

TEST_CASE("linear solve and nullspace")
{
    field_ptr fld; // QQ
    fmat a = {{fel(1), fel(2)}, {fel(3), fel(4)}};
    auto x = solve_linear(a, {fel(5), fel(6)}, fld);
    REQUIRE(x.has_value());
    CHECK(a[0][0] * (*x)[0] + a[0][1] * (*x)[1] == fel(5));
    CHECK(a[1][0] * (*x)[0] + a[1][1] * (*x)[1] == fel(6));

    fmat sing = {{fel(1), fel(2)}, {fel(2), fel(4)}};
    CHECK_FALSE(solve_linear(sing, {fel(1), fel(3)}, fld).has_value());
    auto ns = nullspace(sing, 2, fld);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] + fel(2) * ns[0][1] == fel());
}

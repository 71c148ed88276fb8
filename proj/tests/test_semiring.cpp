#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plcs/semiring.hpp"

#include <random>

using namespace plcs;

namespace {

series t_poly(std::initializer_list<std::pair<expo_t, long long>> terms)
{
    series s(kNoTrunc);
    for (const auto& [e, c] : terms)
        s.add_to(e, fel(rational(c)));
    return s;
}

curve_germ golden_curve()
{
    // y (y^2 - x^3), smooth branch first
    return curve_germ({branch(t_poly({{1, 1}}), series(kNoTrunc)),
                       branch(t_poly({{2, 1}}), t_poly({{3, 1}}))});
}

constexpr expo_t INF = kInfVal;

} // namespace

TEST_CASE("golden semiring window of y(y^2-x^3)")
{
    curve_germ c = golden_curve();
    value_semiring gamma(c);
    CHECK(gamma.sigma() == vtuple{3, 5});

    CHECK(gamma.is_member({0, 0}));
    CHECK(gamma.is_member({1, 2}));
    CHECK(gamma.is_member({2, 3}));
    CHECK(gamma.is_member({2, 4}));
    CHECK(gamma.is_member({3, INF}));
    CHECK(gamma.is_member({INF, 3}));
    CHECK(gamma.is_member({INF, 5}));
    CHECK(gamma.is_member({3, 5}));

    CHECK_FALSE(gamma.is_member({1, 1}));
    CHECK_FALSE(gamma.is_member({0, 1}));
    CHECK_FALSE(gamma.is_member({1, 3}));
    CHECK_FALSE(gamma.is_member({1, INF}));
    CHECK_FALSE(gamma.is_member({2, INF}));
    CHECK_FALSE(gamma.is_member({INF, 2}));
    CHECK_FALSE(gamma.is_member({INF, 4}));
    CHECK_FALSE(gamma.is_member({2, 5}));
}

TEST_CASE("golden absolute points and minimal generators")
{
    curve_germ c = golden_curve();
    value_semiring gamma(c);

    auto abs = gamma.absolute_points();
    std::sort(abs.begin(), abs.end());
    CHECK(abs == std::vector<vtuple>{{1, 2}, {2, 4}, {3, INF}, {INF, 3}});

    CHECK_FALSE(gamma.is_irreducible({2, 4})); // (2,4) = (1,2)+(1,2)
    CHECK(gamma.is_irreducible({1, 2}));
    CHECK(gamma.is_irreducible({3, INF}));
    CHECK(gamma.is_absolute({1, 2}));
    CHECK(gamma.is_absolute({2, 4}));
    CHECK_FALSE(gamma.is_absolute({2, 3}));

    auto gens = gamma.minimal_generators();
    CHECK(gens.g == std::vector<vtuple>{{1, 2}, {3, INF}, {INF, 3}});
    // the two flagged generators have independent linear parts, g1 < g2 lex
    CHECK(gens.first == 0);
    CHECK(gens.g[gens.second] == vtuple{INF, 3});
    for (std::size_t k = 0; k < gens.g.size(); ++k)
        CHECK(gens.witnesses[k].val == gens.g[k]);
}

TEST_CASE("two smooth tangent branches: generators (1,1), (inf,n), (n,inf)")
{
    // for tangency order n >= 2 the coordinate value (1,1) is itself
    // irreducible and absolute: (n,inf) and (inf,n) alone cannot regenerate it
    for (expo_t n = 2; n <= 3; ++n) {
        curve_germ c({branch(t_poly({{1, 1}}), series(kNoTrunc)),
                      branch(t_poly({{1, 1}}), t_poly({{n, -1}}))});
        value_semiring gamma(c);
        auto gens = gamma.minimal_generators();
        CHECK(gens.g == std::vector<vtuple>{{1, 1}, {n, INF}, {INF, n}});
    }
    // two transverse smooth branches: exactly the paper's pair, n = 1
    curve_germ c({branch(t_poly({{1, 1}}), series(kNoTrunc)),
                  branch(t_poly({{1, 1}}), t_poly({{1, -1}}))});
    value_semiring gamma(c);
    auto gens = gamma.minimal_generators();
    CHECK(gens.g == std::vector<vtuple>{{1, INF}, {INF, 1}});
}

TEST_CASE("smooth single branch: Gamma = N with generator 1")
{
    curve_germ c({branch(t_poly({{1, 1}}), series(kNoTrunc))});
    value_semiring gamma(c);
    CHECK(gamma.sigma() == vtuple{0});
    auto gens = gamma.minimal_generators();
    CHECK(gens.g == std::vector<vtuple>{{1}});
}

TEST_CASE("single cusp branch: generators {2,3}")
{
    curve_germ c({branch(t_poly({{2, 1}}), t_poly({{3, 1}}))});
    value_semiring gamma(c);
    auto gens = gamma.minimal_generators();
    CHECK(gens.g == std::vector<vtuple>{{2}, {3}});
}

TEST_CASE("window closure under (+) and (.) with conductor clipping")
{
    curve_germ c = golden_curve();
    value_semiring gamma(c);
    const auto members = gamma.window_members();
    for (const auto& a : members) {
        for (const auto& b : members) {
            CHECK(gamma.is_member(tuple_min(a, b)));
            CHECK(gamma.is_member(tuple_add(a, b)));
        }
    }
}

TEST_CASE("every witness valuation equals its recorded tuple")
{
    curve_germ c = golden_curve();
    value_semiring gamma(c);
    for (const auto& t : gamma.canonical_members()) {
        const ring_element& w = gamma.witness(t);
        CHECK(w.val == t);
        // expression and series stay synchronized
        for (std::size_t l = 0; l < c.r(); ++l)
            CHECK(w.expr.eval_on(c.comp(l).x, c.comp(l).y) == w.on_branches[l]);
    }
}

TEST_CASE("random-combination oracle: sampled valuations land in the window")
{
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long long> coef(-6, 6);
    curve_germ c = golden_curve();
    value_semiring gamma(c);
    for (int it = 0; it < 200; ++it) {
        bipoly p;
        for (int k = 0; k < 5; ++k)
            p.add_to(static_cast<expo_t>(rng() % 5), static_cast<expo_t>(rng() % 5),
                     fel(rational(coef(rng))));
        if (p.is_zero())
            continue;
        ring_element e = make_ring_element(c, p);
        if (!e.expr.constant_term().is_zero())
            continue; // units trivially give the zero tuple
        CHECK(gamma.is_member(e.val));
    }
}

TEST_CASE("generators regenerate the window")
{
    curve_germ c = golden_curve();
    value_semiring gamma(c);
    auto gens = gamma.minimal_generators();
    std::set<vtuple> span;
    span.insert(gamma.canonical(vtuple(c.r(), 0)));
    span.insert(vtuple(c.r(), INF));
    for (const auto& g : gens.g)
        span.insert(gamma.canonical(g));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<vtuple> cur(span.begin(), span.end());
        for (const auto& a : cur)
            for (const auto& b : cur) {
                for (const vtuple& t : {tuple_add(a, b), tuple_min(a, b)}) {
                    const vtuple ct = gamma.canonical(t);
                    if (!span.count(ct)) {
                        span.insert(ct);
                        grew = true;
                    }
                }
            }
    }
    std::set<vtuple> expect = gamma.canonical_members();
    CHECK(span == expect);
}

TEST_CASE("semiring equality across members of the same class")
{
    curve_germ c = golden_curve();
    value_semiring gamma(c);
    CHECK(semiring_equal(c, gamma));

    // a != 0 member of the golden family: branches (t, 0), (a t^2 + b t^4, t^3 + c t^4)
    curve_germ member({branch(t_poly({{1, 1}}), series(kNoTrunc)),
                       branch(t_poly({{2, 2}, {4, 3}}), t_poly({{3, 1}, {4, -5}}))});
    CHECK(semiring_equal(member, gamma));

    // a = 0 drops (1,2) from the semiring: conductor changes, reported distinctly
    curve_germ degenerate({branch(t_poly({{1, 1}}), series(kNoTrunc)),
                           branch(t_poly({{4, 1}}), t_poly({{3, 1}}))});
    CHECK_THROWS(semiring_equal(degenerate, gamma));
}

TEST_CASE("truncation lemma: certified truncations")
{
    curve_germ c = golden_curve();
    value_semiring gamma(c);

    // already-short element is unchanged
    ring_element x_elem = make_ring_element(c, bipoly::x());
    ring_element tr = gamma.truncate_ring_element(x_elem, {2, 4});
    CHECK(tr.val == vtuple{1, 2});
    CHECK(tr.on_branches[0].coeff(1) == fel(1));
    CHECK(tr.on_branches[1].coeff(2) == fel(1));

    // x^3 has value (3,6); truncating at (3,5)-1 exposes the honest (3,inf)
    ring_element x3 = make_ring_element(c, bipoly::monomial(3, 0, fel(1)));
    CHECK(x3.val == vtuple{3, 6});
    ring_element tr3 = gamma.truncate_ring_element(x3, {3, 4});
    CHECK(tr3.val == vtuple{3, INF});
    // synchronized expression matches to the truncation order
    for (std::size_t l = 0; l < c.r(); ++l) {
        series lhs = tr3.expr.eval_on(c.comp(l).x, c.comp(l).y, tr3.on_branches[l].trunc());
        series rhs = tr3.on_branches[l].truncated(tr3.on_branches[l].trunc());
        CHECK(lhs == rhs);
    }

    // below the conductor bound the lemma does not apply
    CHECK_THROWS_AS(gamma.truncate_ring_element(x_elem, {1, 4}), std::invalid_argument);
}

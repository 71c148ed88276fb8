// Single blow-up geometry in the two standard charts: strict transforms,
// blown-up vector fields, tangency loci on the exceptional divisor, indices
// and tangency orders, radial-type tests, the invariant nu_0 with the free
// point count, and the closed-form moduli dimension.
#ifndef PLCS_BLOWUP_HPP
#define PLCS_BLOWUP_HPP

#include "plcs/saito.hpp"
#include "plcs/unipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plcs {

// ---- charts -------------------------------------------------------------------

struct chart_poly {
    int chart = 1;        // 1: E(x1,y1) = (x1, y1 x1); 2: E(x2,y2) = (x2 y2, y2)
    bipoly strict;        // f o E divided by the maximal divisor power
    expo_t divided = 0;   // the exponent of that power
};

inline chart_poly blow_up_poly(const bipoly& f, int chart)
{
    chart_poly out;
    out.chart = chart;
    bipoly sub = chart == 1 ? f.subst(bipoly::x(), bipoly::x() * bipoly::y())
                            : f.subst(bipoly::x() * bipoly::y(), bipoly::y());
    out.divided = chart == 1 ? sub.x_divisibility() : sub.y_divisibility();
    out.strict = chart == 1 ? sub.shift_down_x(out.divided) : sub.shift_down_y(out.divided);
    return out;
}

struct chart_field {
    int chart = 1;
    vector_field xe;    // blown-up field divided by the maximal divisor power
    expo_t divided = 0; // total division exponent applied to E*X
};

inline chart_field blow_up_field(const vector_field& x, int chart)
{
    chart_field out;
    out.chart = chart;
    if (chart == 1) {
        // x = x1, y = x1 y1:  E*X = A dx1 + (N / x1) dy1,
        // A = a(x1, x1 y1), N = b(x1, x1 y1) - y1 A
        bipoly A = x.a.subst(bipoly::x(), bipoly::x() * bipoly::y());
        bipoly N = x.b.subst(bipoly::x(), bipoly::x() * bipoly::y()) - bipoly::y() * A;
        const expo_t k = std::min(A.is_zero() ? kInfVal : A.x_divisibility(),
                                  N.is_zero() ? kInfVal : N.x_divisibility() - 1);
        if (k == kInfVal)
            throw std::invalid_argument("cannot blow up the zero field");
        out.xe.a = A.is_zero() ? bipoly() : A.shift_down_x(k);
        out.xe.b = N.is_zero() ? bipoly() : N.shift_down_x(k + 1);
        out.divided = k;
    } else {
        bipoly B = x.b.subst(bipoly::x() * bipoly::y(), bipoly::y());
        bipoly M = x.a.subst(bipoly::x() * bipoly::y(), bipoly::y()) - bipoly::x() * B;
        const expo_t k = std::min(B.is_zero() ? kInfVal : B.y_divisibility(),
                                  M.is_zero() ? kInfVal : M.y_divisibility() - 1);
        if (k == kInfVal)
            throw std::invalid_argument("cannot blow up the zero field");
        out.xe.a = M.is_zero() ? bipoly() : M.shift_down_y(k + 1);
        out.xe.b = B.is_zero() ? bipoly() : B.shift_down_y(k);
        out.divided = k;
    }
    return out;
}

// ---- divisor points -----------------------------------------------------------

// A point of the exceptional divisor: either the chart-2 origin ("infinite
// slope"), or the set of roots of a squarefree chart-1 slope polynomial; the
// points of a factor of degree > 1 live in an extension of the ground field
// and are reported symbolically.
struct divisor_point {
    bool at_infinity = false;
    unipoly slope_poly; // monic squarefree, ignored when at_infinity
    expo_t degree = 1;  // number of geometric points in the record
    expo_t order = 0;   // tangency order (or index) carried by each of them

    std::string to_string() const;
};

inline std::string divisor_point::to_string() const
{
    if (at_infinity)
        return "point [x-direction] order " + std::to_string(order);
    std::string s = "points of ";
    for (std::size_t k = slope_poly.size(); k-- > 0;) {
        if (!slope_poly[k].is_zero()) {
            if (s.back() != ' ')
                s += " + ";
            s += "(" + slope_poly[k].to_string() + ")u^" + std::to_string(k);
        }
    }
    s += " order " + std::to_string(order);
    return s;
}

namespace detail {

// splits a restriction polynomial into squarefree factor records, each
// carrying its multiplicity, keeping only multiplicities >= min_order
inline std::vector<divisor_point> factor_records(const unipoly& u, expo_t min_order)
{
    std::vector<divisor_point> out;
    for (const auto& [factor, mult] : uni_squarefree(u)) {
        if (mult < min_order)
            continue;
        auto [roots, rest] = uni_split_rational_roots(factor);
        for (const auto& r : roots) {
            divisor_point p;
            p.slope_poly = {-r, fel(1)};
            p.degree = 1;
            p.order = mult;
            out.push_back(std::move(p));
        }
        if (uni_deg(rest) >= 1) {
            divisor_point p;
            p.slope_poly = rest;
            p.degree = uni_deg(rest);
            p.order = mult;
            out.push_back(std::move(p));
        }
    }
    return out;
}

inline expo_t total_order(const std::vector<divisor_point>& pts)
{
    expo_t s = 0;
    for (const auto& p : pts)
        s += p.degree * p.order;
    return s;
}

} // namespace detail

// Tangency locus Tan(X^E, D): the common zeros of the divisor equation and
// its image under the blown-up field, with tangency orders.
inline std::vector<divisor_point> tangency_locus_field(const vector_field& x)
{
    chart_field c1 = blow_up_field(x, 1);
    chart_field c2 = blow_up_field(x, 2);
    const unipoly a_restr = restrict_to_y(c1.xe.a);
    if (uni_is_zero(a_restr) && c2.xe.b.coeff(0, 0).is_zero() &&
        restrict_to_x(c2.xe.b).empty())
        throw std::domain_error("the blown-up field leaves the divisor invariant; use the "
                                "index instead");
    if (uni_is_zero(a_restr))
        throw std::domain_error("the blown-up field leaves the divisor invariant; use the "
                                "index instead");
    std::vector<divisor_point> pts = detail::factor_records(a_restr, 1);
    // the remaining divisor point is the chart-2 origin
    const unipoly b_restr = restrict_to_x(c2.xe.b);
    const expo_t v = uni_val(b_restr);
    if (v == kInfVal)
        throw std::domain_error("the blown-up field leaves the divisor invariant; use the "
                                "index instead");
    if (v >= 1) {
        divisor_point p;
        p.at_infinity = true;
        p.order = v;
        pts.push_back(std::move(p));
    }
    return pts;
}

// Tangency locus Tan(S^E, D) of the strict transform: divisor points met with
// local intersection >= 2 (several strict branches or genuine tangency).
inline std::vector<divisor_point> tangency_locus_curve(const bipoly& f)
{
    chart_poly c1 = blow_up_poly(f, 1);
    chart_poly c2 = blow_up_poly(f, 2);
    std::vector<divisor_point> pts = detail::factor_records(restrict_to_y(c1.strict), 2);
    const unipoly b = restrict_to_x(c2.strict);
    const expo_t v = uni_val(b);
    if (v >= 2) {
        divisor_point p;
        p.at_infinity = true;
        p.order = v;
        pts.push_back(std::move(p));
    }
    return pts;
}

// index / tangency order of a field along {x = 0} at the origin of the given
// coordinates: ind = ord_y b(0, y) when invariant, tan = ord_y a(0, y) if not
inline expo_t index_at(const vector_field& x)
{
    const unipoly a = restrict_to_y(x.a);
    if (!uni_is_zero(a))
        throw std::invalid_argument("the curve {x=0} is not invariant: use the tangency order");
    return uni_val(restrict_to_y(x.b));
}
inline expo_t tangency_order_at(const vector_field& x)
{
    const unipoly a = restrict_to_y(x.a);
    if (uni_is_zero(a))
        throw std::invalid_argument("the curve {x=0} is invariant: use the index");
    return uni_val(a);
}

// sum of the indices of a non-dicritical blown-up field along the divisor
inline expo_t divisor_index_sum(const vector_field& x)
{
    if (is_dicritical(x))
        throw std::invalid_argument("index sum needs a non-dicritical field");
    chart_field c1 = blow_up_field(x, 1);
    chart_field c2 = blow_up_field(x, 2);
    // chart 1 divisor {x1 = 0} is invariant: indices are the root orders of
    // the dy-component restricted to it
    expo_t s = 0;
    const unipoly b1 = restrict_to_y(c1.xe.b);
    for (const auto& [factor, mult] : uni_squarefree(b1))
        s += mult * uni_deg(factor);
    const unipoly a2 = restrict_to_x(c2.xe.a);
    const expo_t v = uni_val(a2);
    if (v >= 1 && v != kInfVal)
        s += v;
    return s;
}

// ---- radial type ----------------------------------------------------------------

enum class radial_status { not_radial, radial, pure_radial };

inline const char* radial_status_name(radial_status s)
{
    switch (s) {
    case radial_status::not_radial: return "not_radial";
    case radial_status::radial: return "radial";
    default: return "pure_radial";
    }
}

// ---- nu0 and free points ----------------------------------------------------------

// gcd of two homogeneous binary forms
inline bipoly binary_form_gcd(const bipoly& p, const bipoly& q)
{
    if (p.is_zero())
        return q;
    if (q.is_zero())
        return p;
    if (!p.is_homogeneous() || !q.is_homogeneous())
        throw std::invalid_argument("binary form gcd needs homogeneous inputs");
    const expo_t xp = p.x_divisibility(), xq = q.x_divisibility();
    const expo_t yp = p.y_divisibility(), yq = q.y_divisibility();
    // dehomogenize along u = x at y = 1
    auto dehom = [](const bipoly& h) {
        unipoly u;
        for (const auto& [m, c] : h.terms()) {
            if (static_cast<std::size_t>(m.i) >= u.size())
                u.resize(m.i + 1, fel());
            u[m.i] = c;
        }
        uni_strip(u);
        return u;
    };
    const unipoly g = uni_gcd(dehom(p.shift_down_x(xp).shift_down_y(yp)),
                              dehom(q.shift_down_x(xq).shift_down_y(yq)));
    const expo_t dg = uni_deg(g);
    bipoly out;
    for (expo_t k = 0; k <= dg; ++k)
        if (static_cast<std::size_t>(k) < g.size() && !g[k].is_zero())
            out.add_to(k, dg - k, g[k]);
    bipoly mono = bipoly::monomial(std::min(xp, xq), std::min(yp, yq), fel(1));
    return mono * out;
}

struct nu0_result {
    expo_t nu0 = 0;
    expo_t free_points_mult = 0;     // counted with tangency order
    expo_t free_points_distinct = 0; // counted as geometric points
    bool cross_check_ok = true;
};

// For an adapted basis with nu1 + nu2 = nu(S) - 1 the initial parts are
// proportional: X_i^(nu_i) = delta_i X_0; nu_0 = nu(X_0) and
// nu(X1) - nu0 counts the free points of X1 with multiplicity.
inline nu0_result nu0_and_free_points(const saito_basis& basis, const bipoly& f)
{
    const vector_field i1 = basis.x1.initial_part();
    const vector_field i2 = basis.x2.initial_part();
    if (!wedge(i1, i2).is_zero())
        throw std::invalid_argument("nu0 needs proportional initial parts "
                                    "(nu1 + nu2 = nu(S) - 1)");
    const bipoly g1 = binary_form_gcd(i1.a, i1.b);
    const bipoly g2 = binary_form_gcd(i2.a, i2.b);
    // primitive parts must agree up to a scalar
    auto prim = [](const vector_field& x, const bipoly& g) {
        auto qa = poly_divide_exact(x.a, g);
        auto qb = poly_divide_exact(x.b, g);
        if (!qa.exact || !qb.exact)
            throw std::logic_error("content division failed on an initial part");
        return vector_field{qa.quotient, qb.quotient};
    };
    const vector_field p1 = prim(i1, g1);
    const vector_field p2 = prim(i2, g2);
    if (!wedge(p1, p2).is_zero())
        throw std::invalid_argument("primitive initial parts are not proportional: "
                                    "inconsistent adapted basis");
    nu0_result out;
    const bipoly g0 = binary_form_gcd(g1, g2);
    out.nu0 = g0.total_degree() + p1.valuation();
    out.free_points_mult = basis.x1.valuation() - out.nu0;

    // cross-check: tangency orders of X1^E on the divisor, outside Tan(S^E, D)
    try {
        auto tan_x = tangency_locus_field(basis.x1);
        auto tan_s = tangency_locus_curve(f);
        unipoly s_poly{fel(1)};
        bool s_at_inf = false;
        for (const auto& p : tan_s) {
            if (p.at_infinity)
                s_at_inf = true;
            else
                s_poly = uni_mul(s_poly, p.slope_poly);
        }
        expo_t mult = 0, distinct = 0;
        for (const auto& p : tan_x) {
            if (p.at_infinity) {
                if (!s_at_inf) {
                    mult += p.order;
                    distinct += 1;
                }
                continue;
            }
            // remove the common part with the curve tangency locus
            unipoly q = p.slope_poly;
            for (;;) {
                unipoly g = uni_gcd(q, s_poly);
                if (uni_deg(g) < 1)
                    break;
                q = uni_divmod(q, g).first;
            }
            const expo_t deg = uni_deg(q);
            if (deg >= 1) {
                mult += p.order * deg;
                distinct += deg;
            }
        }
        out.free_points_distinct = distinct;
        out.cross_check_ok = (mult == out.free_points_mult);
    } catch (const std::domain_error&) {
        out.cross_check_ok = false; // divisor invariant: no tangency reading
    }
    return out;
}

// ---- dimension ---------------------------------------------------------------------

// dim H^1(D, Theta_S) from the multiplicities of an adapted basis
inline expo_t moduli_dimension(expo_t nu1, expo_t nu2, expo_t nu_s, expo_t nu0)
{
    const auto tri = [](expo_t n) { return (n - 1) * (n - 2) / 2; };
    if (nu1 + nu2 == nu_s)
        return tri(nu1) + tri(nu2);
    if (nu1 + nu2 == nu_s - 1)
        return tri(nu1) + tri(nu2) + nu_s - 2 - nu0;
    throw std::invalid_argument("nu1 + nu2 must be nu(S) or nu(S) - 1");
}

// ---- classification -----------------------------------------------------------------

struct classification_report {
    expo_t nu_s = 0;
    expo_t nu1 = 0, nu2 = 0;
    saito_type type = saito_type::unclassified;
    bool dicritical1 = false, dicritical2 = false;
    radial_status radial = radial_status::not_radial;
    std::optional<expo_t> nu0;
    std::optional<expo_t> free_points;          // with multiplicity
    std::optional<expo_t> free_points_distinct; // as geometric points
    std::vector<divisor_point> tan_s;
    std::optional<expo_t> dimension;
    std::string note;
    saito_basis basis;
};

// radial test: every optimal field in the slice is dicritical
inline radial_status radial_tests(const bipoly& f, const saito_basis& adapted,
                                  expo_t degree_bound = 0)
{
    tangent_slice_t slice = tangent_slice(f, degree_bound > 0 ? degree_bound
                                                              : 2 * f.total_degree());
    if (slice.members.empty())
        return radial_status::not_radial;
    const expo_t s = slice.members.front().valuation();
    for (const auto& m : slice.members) {
        if (m.valuation() != s)
            break;
        if (!is_dicritical(m))
            return radial_status::not_radial;
    }
    // pure radial is equivalent to the adapted type being Ed' or Od'
    if (adapted.label == saito_type::EdP || adapted.label == saito_type::OdP)
        return radial_status::pure_radial;
    return radial_status::radial;
}

// literal classification of the given reduced equation
inline classification_report classify_equation(const bipoly& f, expo_t degree_bound = 0)
{
    classification_report rep;
    rep.nu_s = f.order();
    saito_basis basis = adapt_basis(find_saito_basis(f, degree_bound), f);
    rep.basis = basis;
    rep.nu1 = basis.x1.valuation();
    rep.nu2 = basis.x2.valuation();
    rep.type = basis.label;
    rep.dicritical1 = is_dicritical(basis.x1);
    rep.dicritical2 = is_dicritical(basis.x2);
    rep.tan_s = tangency_locus_curve(f);
    rep.radial = radial_tests(f, basis, degree_bound);
    if (rep.type == saito_type::unclassified) {
        rep.note = "no adapted shape matches: the curve is not generic in its class";
        return rep;
    }
    if (rep.nu_s <= 1) {
        rep.dimension = 0; // a smooth germ has a single analytic class
        return rep;
    }
    if (rep.nu1 + rep.nu2 == rep.nu_s - 1) {
        nu0_result n0 = nu0_and_free_points(basis, f);
        rep.nu0 = n0.nu0;
        rep.free_points = n0.free_points_mult;
        rep.free_points_distinct = n0.free_points_distinct;
        if (!n0.cross_check_ok)
            rep.note = "free point cross-check disagreed; multiplicity count reported";
        rep.dimension = moduli_dimension(rep.nu1, rep.nu2, rep.nu_s, n0.nu0);
    } else {
        rep.dimension = moduli_dimension(rep.nu1, rep.nu2, rep.nu_s, 0);
    }
    return rep;
}

} // namespace plcs

#endif

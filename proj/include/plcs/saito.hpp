// The Saito module Der(log S): degree slices of tangent vector fields, exact
// basis verification through the wedge criterion, the Saito number, adapted
// bases of the six generic shapes, and the add/remove-a-smooth-line
// constructions.
#ifndef PLCS_SAITO_HPP
#define PLCS_SAITO_HPP

#include "plcs/branch.hpp"
#include "plcs/linalg.hpp"
#include "plcs/vector_field.hpp"

#include <optional>
#include <vector>

namespace plcs {

enum class saito_type { E, Ed, EdP, O, Od, OdP, unclassified };

inline const char* saito_type_name(saito_type t)
{
    switch (t) {
    case saito_type::E: return "E";
    case saito_type::Ed: return "Ed";
    case saito_type::EdP: return "Ed'";
    case saito_type::O: return "O";
    case saito_type::Od: return "Od";
    case saito_type::OdP: return "Od'";
    default: return "unclassified";
    }
}

struct saito_basis {
    vector_field x1, x2;
    bipoly unit; // X1 /\ X2 = unit * f
    saito_type label = saito_type::unclassified;
};

// ---- tangent slice -----------------------------------------------------------

struct tangent_slice_t {
    expo_t degree_bound = 0;
    std::vector<vector_field> members; // staircase-reduced, valuations ascending
};

namespace detail {

inline std::vector<mono> monomials_up_to(expo_t d)
{
    std::vector<mono> ms;
    for (expo_t deg = 0; deg <= d; ++deg)
        for (expo_t i = deg; i >= 0; --i)
            ms.push_back({i, deg - i});
    return ms;
}

} // namespace detail

// All polynomial vector fields of degree <= d with X . f in (f), as the exact
// nullspace of the linear tangency system; every member is re-verified by
// exact division.
inline tangent_slice_t tangent_slice(const bipoly& f, expo_t d)
{
    if (f.is_zero() || !f.constant_term().is_zero())
        throw std::invalid_argument("tangency slice needs f reduced with f(0,0) = 0");
    const bipoly fx = f.dx(), fy = f.dy();
    const auto ab_monos = detail::monomials_up_to(d);
    const auto h_monos = detail::monomials_up_to(std::max<expo_t>(d - 1, 0));
    const std::size_t na = ab_monos.size();
    const std::size_t nh = h_monos.size();

    // rows: coefficients of a fx + b fy - h f, indexed by occurring monomials
    std::map<mono, std::size_t, grlex_less> row_of;
    auto touch = [&](const bipoly& p) {
        for (const auto& [m, c] : p.terms())
            if (!row_of.count(m)) {
                const std::size_t id = row_of.size();
                row_of[m] = id;
            }
    };
    std::vector<bipoly> cols;
    cols.reserve(2 * na + nh);
    for (const auto& m : ab_monos)
        cols.push_back(bipoly::monomial(m.i, m.j, fel(1)) * fx);
    for (const auto& m : ab_monos)
        cols.push_back(bipoly::monomial(m.i, m.j, fel(1)) * fy);
    for (const auto& m : h_monos)
        cols.push_back(-(bipoly::monomial(m.i, m.j, fel(1)) * f));
    for (const auto& p : cols)
        touch(p);

    fmat mat(row_of.size(), fvec(cols.size(), fel()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [m, coef] : cols[c].terms())
            mat[row_of[m]][c] = coef;
    fmat null = nullspace(mat, cols.size(), nullptr);

    // staircase order on (a, b) coefficients: total degree first so that the
    // reduced members expose increasing valuations
    std::vector<std::pair<int, mono>> positions; // (component, monomial)
    for (expo_t deg = 0; deg <= d; ++deg)
        for (int comp = 0; comp < 2; ++comp)
            for (expo_t i = deg; i >= 0; --i)
                positions.push_back({comp, {i, deg - i}});
    std::map<std::pair<int, std::pair<expo_t, expo_t>>, std::size_t> pos_of;
    for (std::size_t k = 0; k < positions.size(); ++k)
        pos_of[{positions[k].first, {positions[k].second.i, positions[k].second.j}}] = k;

    echelon ech(positions.size());
    for (const auto& sol : null) {
        fvec v(positions.size(), fel());
        bool nonzero = false;
        for (std::size_t k = 0; k < na; ++k) {
            if (!sol[k].is_zero()) {
                v[pos_of[{0, {ab_monos[k].i, ab_monos[k].j}}]] = sol[k];
                nonzero = true;
            }
            if (!sol[na + k].is_zero()) {
                v[pos_of[{1, {ab_monos[k].i, ab_monos[k].j}}]] = sol[na + k];
                nonzero = true;
            }
        }
        if (nonzero)
            ech.insert(std::move(v));
    }
    tangent_slice_t out;
    out.degree_bound = d;
    for (const auto& row : ech.rows()) {
        vector_field x;
        for (std::size_t k = 0; k < positions.size(); ++k) {
            if (row[k].is_zero())
                continue;
            if (positions[k].first == 0)
                x.a.add_to(positions[k].second.i, positions[k].second.j, row[k]);
            else
                x.b.add_to(positions[k].second.i, positions[k].second.j, row[k]);
        }
        if (!is_tangent(x, f))
            throw std::logic_error("slice member fails exact tangency re-verification");
        out.members.push_back(std::move(x));
    }
    std::sort(out.members.begin(), out.members.end(),
              [](const vector_field& x, const vector_field& y) {
                  return x.valuation() < y.valuation();
              });
    return out;
}

// ---- Saito criterion -----------------------------------------------------------

struct criterion_result {
    bool ok = false;
    bipoly unit;
};

// X1 /\ X2 = u f with u a unit; the wedge test alone, tangency is checked by
// the callers that need it
inline criterion_result criterion_check(const vector_field& x1, const vector_field& x2,
                                        const bipoly& f)
{
    auto d = poly_divide_exact(wedge(x1, x2), f);
    if (!d.exact || d.quotient.constant_term().is_zero())
        return {};
    return {true, d.quotient};
}

// ---- basis search ----------------------------------------------------------------

struct saito_number_result {
    expo_t value = 0;
    bool certified = false; // a verified basis witnesses the value
    saito_basis basis;
};

// Scans the slice for a verified pair; any verified pair {X1, X2} generates
// the module, so s(S) = min(nu(X1), nu(X2)) is certified.
inline std::optional<saito_basis> find_basis_in_slice(const tangent_slice_t& slice,
                                                      const bipoly& f)
{
    for (std::size_t i = 0; i < slice.members.size(); ++i) {
        for (std::size_t j = 0; j < slice.members.size(); ++j) {
            if (i == j)
                continue;
            auto cr = criterion_check(slice.members[i], slice.members[j], f);
            if (cr.ok) {
                saito_basis b;
                b.x1 = slice.members[i];
                b.x2 = slice.members[j];
                if (b.x2.valuation() < b.x1.valuation()) {
                    std::swap(b.x1, b.x2);
                    cr.unit = -cr.unit;
                }
                b.unit = std::move(cr.unit);
                return b;
            }
        }
    }
    return std::nullopt;
}

// A verified pair certifies the Saito number at any degree bound, so the
// ladder climbs from a small bound towards the spec default 2 deg f and one
// doubling beyond it.
inline saito_number_result saito_number(const bipoly& f, expo_t degree_bound = 0)
{
    std::vector<expo_t> ladder;
    if (degree_bound > 0) {
        ladder = {degree_bound, 2 * degree_bound};
    } else {
        const expo_t d0 = f.total_degree();
        ladder = {d0 + 2, 2 * d0, 4 * d0};
    }
    saito_number_result out;
    for (expo_t d : ladder) {
        tangent_slice_t slice = tangent_slice(f, d);
        if (slice.members.empty())
            continue;
        auto basis = find_basis_in_slice(slice, f);
        if (basis) {
            out.value = basis->x1.valuation();
            out.certified = true;
            out.basis = std::move(*basis);
            if (out.value != slice.members.front().valuation())
                throw std::logic_error("verified basis valuation disagrees with the slice "
                                       "minimum");
            return out;
        }
        out.value = slice.members.front().valuation();
    }
    out.certified = false; // only a lower bound: warn upstream
    return out;
}

inline saito_basis find_saito_basis(const bipoly& f, expo_t degree_bound = 0)
{
    saito_number_result r = saito_number(f, degree_bound);
    if (!r.certified)
        throw std::runtime_error("no verified Saito basis within the degree bound; "
                                 "escalation exhausted");
    return r.basis;
}

// ---- adapted bases ------------------------------------------------------------------

namespace detail {

// deterministic generic scalars 2, 3, 5, 7, ...
inline std::vector<long long> generic_scalars()
{
    return {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
}

// tries to write target = h * source with h homogeneous of the right degree
inline std::optional<bipoly> homogeneous_factor(const vector_field& target,
                                                const vector_field& source)
{
    const expo_t dt = target.valuation(), ds = source.valuation();
    if (dt == kInfVal || ds == kInfVal || dt < ds)
        return std::nullopt;
    const expo_t dh = dt - ds;
    std::vector<mono> hm;
    for (expo_t i = 0; i <= dh; ++i)
        hm.push_back({i, dh - i});
    // rows: coefficients of h*sa - ta and h*sb - tb over degree-dt monomials
    std::vector<mono> rows;
    for (expo_t i = 0; i <= dt; ++i)
        rows.push_back({i, dt - i});
    fmat a(2 * rows.size(), fvec(hm.size(), fel()));
    fvec b(2 * rows.size(), fel());
    const vector_field s = source.homogeneous_part(ds);
    const vector_field t = target.homogeneous_part(dt);
    for (std::size_t c = 0; c < hm.size(); ++c) {
        const bipoly hmono = bipoly::monomial(hm[c].i, hm[c].j, fel(1));
        const bipoly pa = hmono * s.a, pb = hmono * s.b;
        for (std::size_t rIdx = 0; rIdx < rows.size(); ++rIdx) {
            a[rIdx][c] = pa.coeff(rows[rIdx].i, rows[rIdx].j);
            a[rows.size() + rIdx][c] = pb.coeff(rows[rIdx].i, rows[rIdx].j);
        }
    }
    for (std::size_t rIdx = 0; rIdx < rows.size(); ++rIdx) {
        b[rIdx] = t.a.coeff(rows[rIdx].i, rows[rIdx].j);
        b[rows.size() + rIdx] = t.b.coeff(rows[rIdx].i, rows[rIdx].j);
    }
    auto sol = solve_linear(a, b, nullptr);
    if (!sol)
        return std::nullopt;
    bipoly h;
    for (std::size_t c = 0; c < hm.size(); ++c)
        if (!(*sol)[c].is_zero())
            h.add_to(hm[c].i, hm[c].j, (*sol)[c]);
    return h;
}

} // namespace detail

// Adapts a verified basis to one of the six generic shapes when possible; the
// label stays `unclassified` for curves that are not generic in their moduli
// class.  Every move keeps the wedge criterion, which is re-verified at the
// end.
inline saito_basis adapt_basis(saito_basis basis, const bipoly& f)
{
    const expo_t nu_s = f.order();
    if (basis.x2.valuation() < basis.x1.valuation())
        std::swap(basis.x1, basis.x2);

    // reduce X2 by polynomial multiples of X1 while the initial parts are
    // polynomially proportional
    for (;;) {
        const expo_t n1 = basis.x1.valuation(), n2 = basis.x2.valuation();
        if (n1 + n2 >= nu_s)
            break;
        auto h = detail::homogeneous_factor(basis.x2, basis.x1);
        if (!h)
            break;
        basis.x2 = basis.x2 - (*h) * basis.x1;
        if (basis.x2.is_zero())
            throw std::logic_error("basis degenerated during adaptation");
        if (basis.x2.valuation() < basis.x1.valuation())
            std::swap(basis.x1, basis.x2);
    }

    const expo_t n1 = basis.x1.valuation();
    const expo_t n2 = basis.x2.valuation();
    const expo_t sum = n1 + n2;
    const bool d1 = is_dicritical(basis.x1);
    const bool d2 = is_dicritical(basis.x2);
    basis.label = saito_type::unclassified;

    if (nu_s % 2 == 0) {
        const expo_t half = nu_s / 2;
        if (sum == nu_s && n1 == half && n2 == half) {
            // (E): both non-dicritical, arranged by a generic combination
            if (d1 && !d2) {
                for (long long c : detail::generic_scalars()) {
                    vector_field cand = basis.x1 + fel(c) * basis.x2;
                    if (cand.valuation() == half && !is_dicritical(cand)) {
                        basis.x1 = cand;
                        break;
                    }
                }
            }
            if (!is_dicritical(basis.x1) && !is_dicritical(basis.x2))
                basis.label = saito_type::E;
        } else if (sum == nu_s && n1 == half - 1 && n2 == half + 1 && d1 && !d2) {
            basis.label = saito_type::EdP;
        } else if (sum == nu_s - 1 && n1 == half - 1 && n2 == half && d1 && d2) {
            basis.label = saito_type::Ed;
        }
    } else {
        const expo_t low = (nu_s - 1) / 2;
        if (sum == nu_s && n1 == low && n2 == low + 1) {
            if (d1 && !d2) {
                basis.label = saito_type::OdP;
            } else if (!d1) {
                // (O): make X2 non-dicritical with a generic linear multiple
                if (is_dicritical(basis.x2)) {
                    for (long long c : detail::generic_scalars()) {
                        bipoly lin = bipoly::x() + fel(c) * bipoly::y();
                        vector_field cand = basis.x2 + lin * basis.x1;
                        if (cand.valuation() == n2 && !is_dicritical(cand)) {
                            basis.x2 = cand;
                            break;
                        }
                    }
                }
                if (!is_dicritical(basis.x2))
                    basis.label = saito_type::O;
            }
        } else if (sum == nu_s - 1 && n1 == low && n2 == low && d1 && d2) {
            basis.label = saito_type::Od;
        }
    }

    auto cr = criterion_check(basis.x1, basis.x2, f);
    if (!cr.ok)
        throw std::logic_error("adaptation broke the Saito criterion");
    basis.unit = std::move(cr.unit);
    return basis;
}

// ---- add / remove a smooth line ---------------------------------------------------

// parametrizes a smooth curve L = 0 as a polynomial branch to order n
inline branch parametrize_smooth(const bipoly& l, expo_t n)
{
    if (l.order() != 1)
        throw std::invalid_argument("the added curve must be smooth");
    const fel ly = l.coeff(0, 1);
    const bool graph_over_x = !ly.is_zero();
    // solve L(t, e(t)) = 0 (or symmetrically) degree by degree
    series par(kNoTrunc);
    const fel lead = graph_over_x ? l.coeff(0, 1) : l.coeff(1, 0);
    for (expo_t k = 1; k <= n; ++k) {
        series xs = graph_over_x ? series::monomial(1, fel(1), n + 1) : par.truncated(n + 1);
        series ys = graph_over_x ? par.truncated(n + 1) : series::monomial(1, fel(1), n + 1);
        series residual = l.eval_on(xs, ys, k + 1);
        const fel r = residual.coeff(k);
        if (!r.is_zero())
            par.add_to(k, -(r / lead));
    }
    series xs = graph_over_x ? series::monomial(1, fel(1), kNoTrunc) : par;
    series ys = graph_over_x ? par : series::monomial(1, fel(1), kNoTrunc);
    branch out(xs, ys);
    if (!l.eval_on(out.x, out.y, n + 1).is_zero())
        throw std::logic_error("smooth parametrization failed to invert L");
    return out;
}

inline series derivative_series(const series& s, expo_t tr)
{
    series r(tr, s.var());
    for (const auto& [e, c] : s.terms())
        if (e >= 1)
            r.add_to(e - 1, fel(rational(static_cast<long long>(e))) * c);
    return r;
}

// Saito basis for S u l from one for S, by the unit-quotient construction;
// the returned pair is wedge-exact, and tangent to l to the working order.
inline saito_basis add_line(saito_basis basis, const bipoly& f, const bipoly& l,
                            expo_t work_order = 0)
{
    if (l.order() != 1)
        throw std::invalid_argument("added curve must be smooth");
    if (poly_divide_exact(f, l).exact)
        throw std::invalid_argument("added curve already divides f");
    if (basis.x1.valuation() != basis.x2.valuation()) {
        // generic change of basis so that both fields realize the minimum
        if (basis.x2.valuation() < basis.x1.valuation())
            std::swap(basis.x1, basis.x2);
        basis.x2 = basis.x2 + basis.x1;
    }
    const expo_t n = work_order > 0 ? work_order : 4 * f.total_degree() + 8;
    branch gam = parametrize_smooth(l, n);
    const series dx = derivative_series(gam.x, n + 1);
    const series dy = derivative_series(gam.y, n + 1);
    auto pair_with = [&](const vector_field& x) {
        series ax = x.a.eval_on(gam.x, gam.y, n + 1);
        series bx = x.b.eval_on(gam.x, gam.y, n + 1);
        return ax * dy - bx * dx;
    };
    const series num = pair_with(basis.x1);
    const series den = pair_with(basis.x2);
    if (num.is_zero() || den.is_zero() || num.valuation() != den.valuation())
        throw std::domain_error("the chosen line is tangent to the wrong locus; pick "
                                "another generic line");
    series phi = series_div(num, den, n + 1 - den.valuation());
    bipoly phi_x;
    const bool graph_over_x = !l.coeff(0, 1).is_zero();
    for (const auto& [e, c] : phi.terms())
        phi_x.add_to(graph_over_x ? e : 0, graph_over_x ? 0 : e, c);

    saito_basis out;
    out.x1 = basis.x1 - phi_x * basis.x2;
    out.x2 = l * basis.x2;
    auto cr = criterion_check(out.x1, out.x2, f * l);
    if (!cr.ok)
        throw std::logic_error("add-line construction lost the Saito criterion");
    out.unit = std::move(cr.unit);
    return out;
}

// Saito basis for S from one for S u l, l a smooth component given by the
// exact linear equation L; the division process is an exact linear solve.
inline saito_basis remove_line(const saito_basis& basis, const bipoly& f, const bipoly& l,
                               expo_t degree_bound = 0)
{
    if (l.order() != 1)
        throw std::invalid_argument("remove_line expects a smooth component");
    if (l.coeff(0, 1).is_zero() && l.coeff(1, 0).is_zero())
        throw std::invalid_argument("remove_line expects a smooth component");
    {
        auto check = criterion_check(basis.x1, basis.x2, f * l);
        if (!check.ok)
            throw std::invalid_argument("input pair is not a verified basis of f * L");
    }
    auto component_divisible = [&](const vector_field& x) {
        return poly_divide_exact(x.a, l).exact && poly_divide_exact(x.b, l).exact;
    };
    auto finish = [&](vector_field x1, vector_field x2) -> std::optional<saito_basis> {
        if (!is_tangent(x1, f) || !is_tangent(x2, f))
            return std::nullopt;
        auto cr = criterion_check(x1, x2, f);
        if (!cr.ok)
            return std::nullopt;
        saito_basis out;
        out.x1 = std::move(x1);
        out.x2 = std::move(x2);
        if (out.x2.valuation() < out.x1.valuation()) {
            std::swap(out.x1, out.x2);
            cr.unit = -cr.unit;
        }
        out.unit = std::move(cr.unit);
        return out;
    };

    // a field already divisible by L divides out directly
    for (int which = 0; which < 2; ++which) {
        const vector_field& cand = which == 0 ? basis.x1 : basis.x2;
        const vector_field& other = which == 0 ? basis.x2 : basis.x1;
        if (component_divisible(cand)) {
            vector_field div{poly_divide_exact(cand.a, l).quotient,
                             poly_divide_exact(cand.b, l).quotient};
            if (auto out = finish(other, div))
                return *out;
        }
    }

    // general division process: solve (X1 + c X2) - L T = Q (X1' combination)
    const expo_t d = degree_bound > 0
                         ? degree_bound
                         : std::max<expo_t>(basis.x1.a.total_degree(),
                                            std::max(basis.x1.b.total_degree(),
                                                     std::max(basis.x2.a.total_degree(),
                                                              basis.x2.b.total_degree()))) +
                               2;
    struct change {
        long long c11, c12, c21, c22;
    };
    std::vector<change> changes = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 1}, {0, 1, 1, 1},
                                   {1, 2, 1, 1}, {2, 1, 1, 1}};
    for (const auto& ch : changes) {
        const vector_field y1 = fel(ch.c11) * basis.x1 + fel(ch.c12) * basis.x2;
        const vector_field y2 = fel(ch.c21) * basis.x1 + fel(ch.c22) * basis.x2;
        // unknowns: T (two components, deg <= d), Q (polynomial in the
        // complementary coordinate, deg <= d): Y1 - L T - Q Y2 = 0
        const auto t_monos = detail::monomials_up_to(d);
        const bool graph_over_x = !l.coeff(0, 1).is_zero();
        std::vector<bipoly> q_monos;
        for (expo_t k = 0; k <= d; ++k)
            q_monos.push_back(graph_over_x ? bipoly::monomial(k, 0, fel(1))
                                           : bipoly::monomial(0, k, fel(1)));
        const std::size_t nt = t_monos.size();
        std::map<std::pair<int, std::pair<expo_t, expo_t>>, std::size_t> rows;
        auto row_id = [&rows](int comp, const mono& m) {
            auto key = std::make_pair(comp, std::make_pair(m.i, m.j));
            auto it = rows.find(key);
            if (it == rows.end())
                it = rows.emplace(key, rows.size()).first;
            return it->second;
        };
        std::vector<std::vector<std::pair<std::size_t, fel>>> cols;
        auto add_col = [&](int comp, const bipoly& p, std::vector<std::pair<std::size_t, fel>>& col) {
            for (const auto& [m, c] : p.terms())
                col.emplace_back(row_id(comp, m), c);
        };
        for (std::size_t k = 0; k < nt; ++k) { // T_a
            std::vector<std::pair<std::size_t, fel>> col;
            add_col(0, l * bipoly::monomial(t_monos[k].i, t_monos[k].j, fel(1)), col);
            cols.push_back(std::move(col));
        }
        for (std::size_t k = 0; k < nt; ++k) { // T_b
            std::vector<std::pair<std::size_t, fel>> col;
            add_col(1, l * bipoly::monomial(t_monos[k].i, t_monos[k].j, fel(1)), col);
            cols.push_back(std::move(col));
        }
        for (const auto& qm : q_monos) { // Q
            std::vector<std::pair<std::size_t, fel>> col;
            add_col(0, qm * y2.a, col);
            add_col(1, qm * y2.b, col);
            cols.push_back(std::move(col));
        }
        std::vector<std::pair<std::size_t, fel>> rhs_entries;
        add_col(0, y1.a, rhs_entries);
        add_col(1, y1.b, rhs_entries);
        fmat a(rows.size(), fvec(cols.size(), fel()));
        fvec b(rows.size(), fel());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [rid, coef] : cols[c])
                a[rid][c] += coef;
        for (const auto& [rid, coef] : rhs_entries)
            b[rid] += coef;
        auto sol = solve_linear(a, b, nullptr);
        if (!sol)
            continue;
        vector_field t;
        for (std::size_t k = 0; k < nt; ++k) {
            if (!(*sol)[k].is_zero())
                t.a.add_to(t_monos[k].i, t_monos[k].j, (*sol)[k]);
            if (!(*sol)[nt + k].is_zero())
                t.b.add_to(t_monos[k].i, t_monos[k].j, (*sol)[nt + k]);
        }
        if (t.is_zero())
            continue;
        if (auto out = finish(t, y2))
            return *out;
    }
    throw std::runtime_error("division by the smooth component was not exact at the degree "
                             "bound; escalate");
}

} // namespace plcs

#endif

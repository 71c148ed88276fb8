// Gamma-reduction calculus, the normalized generator pair, the coefficient
// map into the moduli parameter space, and the action of the jet groups
// prod_l Diff^{sigma_l}(C,0) on the coefficients.
#ifndef PLCS_NORMALFORM_HPP
#define PLCS_NORMALFORM_HPP

#include "plcs/semiring.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace plcs {

struct exponent_family {
    // finite exponent sets per branch, the infinity marker always present
    std::vector<std::set<expo_t>> p;

    bool operator==(const exponent_family& o) const { return p == o.p; }
};

struct reduction_step {
    vtuple n_bar;
    std::size_t coord;
};

// initial family of a generator g with lead branch l_i, per the normalization
// construction: [g_l, max(sigma_l-1, g_l)] with the lead entry excluded
inline exponent_family initial_family(const vtuple& g, std::size_t lead, const vtuple& sigma)
{
    exponent_family fam;
    fam.p.resize(g.size());
    for (std::size_t l = 0; l < g.size(); ++l) {
        fam.p[l].insert(kInfVal);
        if (g[l] == kInfVal)
            continue;
        const expo_t lo = g[l] + (l == lead ? 1 : 0);
        const expo_t hi = std::max(sigma[l] - 1, g[l]);
        for (expo_t e = lo; e <= hi; ++e)
            fam.p[l].insert(e);
    }
    return fam;
}

namespace detail {

inline void family_tuples(const exponent_family& fam, std::size_t l, vtuple& t,
                          std::vector<vtuple>& out)
{
    if (l == fam.p.size()) {
        out.push_back(t);
        return;
    }
    for (expo_t v : fam.p[l]) {
        t[l] = v;
        family_tuples(fam, l + 1, t, out);
    }
}

} // namespace detail

// deterministic maximal sequence of Gamma-reductions ending in a
// Gamma-reduced family; selection by (P1) minimal Init, (P2) minimal entry at
// that coordinate, residual ties by lexicographic order on the full tuple
inline std::vector<reduction_step> reduce_family(exponent_family& fam, const vtuple& g,
                                                 const value_semiring& gamma)
{
    std::vector<reduction_step> log;
    const std::size_t r = fam.p.size();
    for (;;) {
        std::vector<vtuple> cands;
        {
            vtuple t(r);
            std::vector<vtuple> all;
            detail::family_tuples(fam, 0, t, all);
            for (auto& n : all)
                if (!tuple_all_inf(n) && gamma.is_member(n))
                    cands.push_back(std::move(n));
        }
        if (cands.empty())
            return log;
        std::size_t best = cands.size();
        std::size_t best_init = r;
        for (std::size_t k = 0; k < cands.size(); ++k) {
            std::size_t init = r;
            for (std::size_t l = 0; l < r; ++l)
                if (cands[k][l] != kInfVal && cands[k][l] != g[l]) {
                    init = l;
                    break;
                }
            if (init == r)
                throw std::logic_error("Gamma-reduction candidate matches the generator "
                                       "everywhere: absoluteness is violated");
            if (best == cands.size() || init < best_init ||
                (init == best_init && (cands[k][init] < cands[best][init] ||
                                       (cands[k][init] == cands[best][init] &&
                                        cands[k] < cands[best])))) {
                best = k;
                best_init = init;
            }
        }
        reduction_step step{cands[best], best_init};
        fam.p[step.coord].erase(step.n_bar[step.coord]);
        log.push_back(std::move(step));
    }
}

struct coeff_position {
    int gen;       // 0 or 1
    std::size_t l; // branch
    expo_t k;      // exponent

    friend bool operator==(const coeff_position& a, const coeff_position& b)
    {
        return a.gen == b.gen && a.l == b.l && a.k == b.k;
    }
    friend bool operator<(const coeff_position& a, const coeff_position& b)
    {
        if (a.gen != b.gen)
            return a.gen < b.gen;
        if (a.l != b.l)
            return a.l < b.l;
        return a.k < b.k;
    }
};

struct generator_shape {
    vtuple g;
    std::size_t lead = 0;
    exponent_family family_final;
    std::vector<reduction_step> log;
};

struct normalized_generators {
    vtuple sigma;
    generator_shape shape[2];
    std::vector<coeff_position> positions; // generator-major, branch, exponent
    std::vector<fel> coeffs;
    std::vector<series> branches[2]; // normalized generator series per branch

    std::size_t position_index(const coeff_position& p) const
    {
        for (std::size_t k = 0; k < positions.size(); ++k)
            if (positions[k] == p)
                return k;
        throw std::invalid_argument("unknown coefficient position");
    }
};

namespace detail {

inline expo_t keep_bound(const vtuple& sigma, const vtuple& g, std::size_t l)
{
    if (g[l] == kInfVal)
        return sigma[l] - 1;
    return std::max(sigma[l] - 1, g[l]);
}

// scales the lead coefficients to one and solves for the correction
// combination that clears every constrained position; the outcome below the
// conductor is unique whatever correction basis realizes it
inline void renormalize_pair(std::vector<series> gb[2], normalized_generators& ctx)
{
    const std::size_t r = ctx.sigma.size();
    // working truncations
    std::vector<expo_t> tr(r);
    for (std::size_t l = 0; l < r; ++l)
        tr[l] = std::max(detail::keep_bound(ctx.sigma, ctx.shape[0].g, l),
                         detail::keep_bound(ctx.sigma, ctx.shape[1].g, l)) +
                1;
    for (int i = 0; i < 2; ++i)
        for (std::size_t l = 0; l < r; ++l)
            gb[i][l] = gb[i][l].truncated(tr[l]);

    // lead normalization
    for (int i = 0; i < 2; ++i) {
        const std::size_t li = ctx.shape[i].lead;
        const fel lead = gb[i][li].coeff(ctx.shape[i].g[li]);
        if (lead.is_zero())
            throw std::domain_error("generator lost its leading coefficient");
        const fel inv = lead.inverse();
        for (std::size_t l = 0; l < r; ++l)
            gb[i][l] = inv * gb[i][l];
    }

    // correction products (G1)^b1 (G2)^b2 with a window-visible valuation
    struct prod_entry {
        expo_t b1, b2;
        std::vector<series> on;
    };
    const vtuple& g1 = ctx.shape[0].g;
    const vtuple& g2 = ctx.shape[1].g;
    expo_t cap = 0;
    for (std::size_t l = 0; l < r; ++l)
        cap = std::max(cap, ctx.sigma[l]);
    std::vector<prod_entry> prods;
    for (expo_t b1 = 0; b1 <= cap; ++b1) {
        for (expo_t b2 = 0; b2 + b1 <= cap; ++b2) {
            if (b1 + b2 == 0)
                continue;
            bool visible = false;
            for (std::size_t l = 0; l < r; ++l) {
                const expo_t v = val_add(b1 == 0 ? 0 : (g1[l] == kInfVal ? kInfVal : b1 * g1[l]),
                                         b2 == 0 ? 0 : (g2[l] == kInfVal ? kInfVal : b2 * g2[l]));
                if (v <= ctx.sigma[l] - 1)
                    visible = true;
            }
            if (visible)
                prods.push_back({b1, b2, {}});
        }
    }
    // power caches per branch
    for (auto& pe : prods) {
        pe.on.resize(r);
        for (std::size_t l = 0; l < r; ++l) {
            series s = series::monomial(0, fel(1), tr[l]);
            for (expo_t k = 0; k < pe.b1; ++k)
                s = s * gb[0][l];
            for (expo_t k = 0; k < pe.b2; ++k)
                s = s * gb[1][l];
            pe.on[l] = std::move(s);
        }
    }

    for (int i = 0; i < 2; ++i) {
        const generator_shape& sh = ctx.shape[i];
        // constrained positions: exponents below sigma that are neither the
        // lead nor a surviving (free) family position
        std::vector<std::pair<std::size_t, expo_t>> constrained;
        for (std::size_t l = 0; l < r; ++l) {
            for (expo_t e = 0; e <= ctx.sigma[l] - 1; ++e) {
                if (l == sh.lead && sh.g[l] != kInfVal && e == sh.g[l])
                    continue; // lead position, pinned to 1 by the scaling
                if (sh.family_final.p[l].count(e))
                    continue; // free position
                constrained.emplace_back(l, e);
            }
        }
        // drop the identity product of this generator from its own basis
        std::vector<const prod_entry*> basis;
        for (const auto& pe : prods) {
            if (i == 0 && pe.b1 == 1 && pe.b2 == 0)
                continue;
            if (i == 1 && pe.b1 == 0 && pe.b2 == 1)
                continue;
            basis.push_back(&pe);
        }
        fmat a(constrained.size(), fvec(basis.size(), fel()));
        fvec b(constrained.size(), fel());
        for (std::size_t row = 0; row < constrained.size(); ++row) {
            const auto& [l, e] = constrained[row];
            for (std::size_t col = 0; col < basis.size(); ++col)
                a[row][col] = basis[col]->on[l].coeff(e);
            b[row] = gb[i][l].coeff(e);
        }
        auto sol = solve_linear(a, b, nullptr);
        if (!sol)
            throw std::domain_error("no correction combination clears the normal form "
                                    "constraints: generator data is inconsistent");
        std::vector<series> result = gb[i];
        for (std::size_t col = 0; col < basis.size(); ++col) {
            if ((*sol)[col].is_zero())
                continue;
            for (std::size_t l = 0; l < r; ++l)
                result[l] = result[l] - (*sol)[col] * basis[col]->on[l];
        }
        // final truncation at sigma (keeping a lead beyond it, if any)
        for (std::size_t l = 0; l < r; ++l) {
            const expo_t keep = detail::keep_bound(ctx.sigma, sh.g, l);
            result[l] = result[l].kept_up_to(keep).truncated(keep + 1);
        }
        gb[i] = std::move(result);
    }
}

inline void read_coefficients(normalized_generators& ctx)
{
    ctx.positions.clear();
    ctx.coeffs.clear();
    for (int i = 0; i < 2; ++i) {
        const generator_shape& sh = ctx.shape[i];
        for (std::size_t l = 0; l < ctx.sigma.size(); ++l)
            for (expo_t e : sh.family_final.p[l]) {
                if (e == kInfVal)
                    continue;
                ctx.positions.push_back({i, l, e});
                ctx.coeffs.push_back(ctx.branches[i][l].coeff(e));
            }
    }
}

} // namespace detail

// Normalizes a generator pair (realizing the two distinguished generators
// with independent linear parts) into the unique normal form.
inline normalized_generators normalize(const ring_element& rg1, const ring_element& rg2,
                                       const value_semiring& gamma)
{
    normalized_generators ctx;
    ctx.sigma = gamma.sigma();
    const std::size_t r = ctx.sigma.size();
    const ring_element* in[2] = {&rg1, &rg2};
    for (int i = 0; i < 2; ++i) {
        generator_shape sh;
        sh.g = in[i]->val;
        sh.lead = r;
        for (std::size_t l = 0; l < r; ++l)
            if (sh.g[l] != kInfVal) {
                sh.lead = l;
                break;
            }
        if (sh.lead == r)
            throw std::invalid_argument("generator vanishes on every branch");
        exponent_family fam = initial_family(sh.g, sh.lead, ctx.sigma);
        sh.log = reduce_family(fam, sh.g, gamma);
        sh.family_final = std::move(fam);
        ctx.shape[i] = std::move(sh);
    }
    std::vector<series> gb[2];
    for (int i = 0; i < 2; ++i) {
        gb[i].resize(r);
        for (std::size_t l = 0; l < r; ++l)
            gb[i][l] = in[i]->on_branches[l];
    }
    detail::renormalize_pair(gb, ctx);
    ctx.branches[0] = gb[0];
    ctx.branches[1] = gb[1];
    detail::read_coefficients(ctx);
    return ctx;
}

// ---- the jet group ----------------------------------------------------------

// one polynomial jet per branch: phi_l(0) = 0, phi_l'(0) != 0, deg < sigma_l
inline void validate_jets(const std::vector<series>& phi, const vtuple& sigma)
{
    if (phi.size() != sigma.size())
        throw std::invalid_argument("jet tuple has wrong arity");
    for (std::size_t l = 0; l < phi.size(); ++l) {
        if (!phi[l].is_zero() && phi[l].valuation() < 1)
            throw std::invalid_argument("jet does not fix the origin");
        if (phi[l].coeff(1).is_zero())
            throw std::invalid_argument("jet is not a diffeomorphism: phi'(0) = 0");
        if (phi[l].degree() >= std::max<expo_t>(sigma[l], 2))
            throw std::invalid_argument("jet degree exceeds the group truncation");
    }
}

inline std::vector<series> identity_jets(const vtuple& sigma)
{
    std::vector<series> phi;
    for (std::size_t l = 0; l < sigma.size(); ++l)
        phi.push_back(series::monomial(1, fel(1), kNoTrunc));
    return phi;
}

// component-wise composition (psi o phi)_l = psi_l(phi_l(t)), truncated to the
// group order
inline std::vector<series> compose_jets(const std::vector<series>& psi,
                                        const std::vector<series>& phi, const vtuple& sigma)
{
    std::vector<series> out;
    for (std::size_t l = 0; l < psi.size(); ++l) {
        const expo_t tr = std::max<expo_t>(sigma[l], 2);
        out.push_back(compose(psi[l].truncated(tr), phi[l].truncated(tr)).truncated(tr));
    }
    return out;
}

// reconstruct the generator series of a coefficient vector in the fixed shape
inline void reconstruct_generators(const normalized_generators& ctx, const std::vector<fel>& a,
                                   std::vector<series> gb[2])
{
    if (a.size() != ctx.positions.size())
        throw std::invalid_argument("coefficient vector has wrong length");
    const std::size_t r = ctx.sigma.size();
    for (int i = 0; i < 2; ++i) {
        gb[i].assign(r, series(kNoTrunc));
        for (std::size_t l = 0; l < r; ++l) {
            series s(detail::keep_bound(ctx.sigma, ctx.shape[i].g, l) + 1);
            if (ctx.shape[i].g[l] != kInfVal && l == ctx.shape[i].lead)
                s.add_to(ctx.shape[i].g[l], fel(1));
            gb[i][l] = std::move(s);
        }
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        const coeff_position& p = ctx.positions[k];
        gb[p.gen][p.l].add_to(p.k, a[k]);
    }
}

// right-composition action of the jet tuple on a normalized coefficient
// vector; the reduction families are the fixed ones recorded in ctx
inline std::vector<fel> act(const std::vector<series>& phi, const std::vector<fel>& a,
                            const normalized_generators& ctx)
{
    validate_jets(phi, ctx.sigma);
    const std::size_t r = ctx.sigma.size();
    std::vector<series> gb[2];
    reconstruct_generators(ctx, a, gb);
    normalized_generators work = ctx;
    for (int i = 0; i < 2; ++i)
        for (std::size_t l = 0; l < r; ++l) {
            const expo_t tr = detail::keep_bound(ctx.sigma, ctx.shape[i].g, l) + 1;
            gb[i][l] = compose(gb[i][l].truncated(tr), phi[l].truncated(tr));
        }
    detail::renormalize_pair(gb, work);
    work.branches[0] = gb[0];
    work.branches[1] = gb[1];
    detail::read_coefficients(work);
    return work.coeffs;
}

// ---- the moduli point --------------------------------------------------------

struct moduli_point_result {
    bool two_smooth_short_circuit = false;
    expo_t tangency = 0; // n of the normal form y(y + x^n) when short-circuited
    normalized_generators nf;
};

inline moduli_point_result moduli_point(const curve_germ& c, expo_t n0 = 32)
{
    moduli_point_result out;
    if (c.is_two_smooth_union()) {
        out.two_smooth_short_circuit = true;
        out.tangency = c.pairwise(0, 1);
        return out;
    }
    value_semiring gamma(c, n0);
    auto gens = gamma.minimal_generators();
    if (c.r() > 1 && !gens.has_pair)
        throw std::logic_error("no generator pair with independent linear parts");
    if (c.r() == 1) {
        // single branch: the two smallest semigroup generators play the role
        if (gens.g.size() < 2) {
            out.two_smooth_short_circuit = false;
            // smooth single branch: nothing to normalize, empty vector
            normalized_generators nf;
            nf.sigma = gamma.sigma();
            out.nf = std::move(nf);
            return out;
        }
        out.nf = normalize(gens.witnesses[0], gens.witnesses[1], gamma);
        return out;
    }
    out.nf = normalize(gens.witnesses[gens.first], gens.witnesses[gens.second], gamma);
    return out;
}

// ---- orbit reduction ---------------------------------------------------------

struct orbit_reduce_result {
    std::vector<fel> rep;
    std::vector<bool> still_free; // positions that resisted normalization: moduli
};

namespace detail {

// Triangular processing order: leading-type positions first (they consume the
// scaling jets), then by ascending degree of the jet coefficient that cancels
// them, d = k - g_l + 1.  A jet of degree d only disturbs positions consumed
// by jets of larger degree, never the ones already processed.
inline std::vector<std::size_t> positions_by_degree(const normalized_generators& ctx)
{
    std::vector<std::size_t> idx(ctx.positions.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
        idx[k] = k;
    auto rank = [&](std::size_t i) -> expo_t {
        const auto& p = ctx.positions[i];
        const expo_t g = ctx.shape[p.gen].g[p.l];
        if (g == kInfVal)
            return kInfVal - 1; // cannot be reached by a jet: processed last
        if (p.k == g)
            return 1; // scaling
        return p.k - g + 1;
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const expo_t ra = rank(a), rb = rank(b);
        if (ra != rb)
            return ra < rb;
        const auto& pa = ctx.positions[a];
        const auto& pb = ctx.positions[b];
        if (pa.l != pb.l)
            return pa.l < pb.l;
        if (pa.gen != pb.gen)
            return pa.gen < pb.gen;
        return pa.k < pb.k;
    });
    return idx;
}

} // namespace detail

// greedy triangular reduction to a distinguished orbit representative:
// leading coefficients are scaled to one, higher coefficients cancelled
// lowest degree first; a position whose solve is infeasible stays free and is
// a modulus
inline orbit_reduce_result orbit_reduce(const std::vector<fel>& a0,
                                        const normalized_generators& ctx)
{
    const std::size_t r = ctx.sigma.size();
    orbit_reduce_result out;
    out.rep = a0;
    out.still_free.assign(a0.size(), false);
    std::vector<bool> scale_used(r, false);
    std::set<std::pair<std::size_t, expo_t>> jet_used; // (branch, degree)

    for (std::size_t idx : detail::positions_by_degree(ctx)) {
        const coeff_position& p = ctx.positions[idx];
        const generator_shape& sh = ctx.shape[p.gen];
        if (sh.g[p.l] != kInfVal && p.k == sh.g[p.l]) {
            // leading-type position: normalize to 1 by a scaling jet
            if (out.rep[idx].is_zero() || out.rep[idx] == fel(1)) {
                out.still_free[idx] = out.rep[idx].is_zero();
                continue;
            }
            // scaling u_m t multiplies this coefficient by u_m^e with
            // e = k [l = m] - g_lead [lead = m]; prefer an exponent of +-1
            bool done = false;
            struct cand {
                std::size_t m;
                expo_t e;
            };
            std::vector<cand> cands;
            if (ctx.shape[p.gen].lead != p.l)
                cands.push_back({sh.lead, -sh.g[sh.lead]});
            cands.push_back({p.l, p.k - (sh.lead == p.l ? sh.g[sh.lead] : 0)});
            for (const cand& cd : cands) {
                if (cd.e != 1 && cd.e != -1)
                    continue;
                if (scale_used[cd.m])
                    continue;
                const fel v = out.rep[idx];
                const fel u = cd.e == 1 ? v.inverse() : v;
                std::vector<series> phi = identity_jets(ctx.sigma);
                phi[cd.m] = series::monomial(1, u, kNoTrunc);
                out.rep = act(phi, out.rep, ctx);
                scale_used[cd.m] = true;
                done = !(out.rep[idx] != fel(1));
                break;
            }
            if (!done && out.rep[idx] != fel(1))
                out.still_free[idx] = true;
            continue;
        }
        // higher position: cancel with the jet coefficient t + eps t^d on the
        // same branch, d = k - g_l + 1
        if (out.rep[idx].is_zero())
            continue;
        if (sh.g[p.l] == kInfVal) {
            out.still_free[idx] = true;
            continue;
        }
        const expo_t d = p.k - sh.g[p.l] + 1;
        if (d < 2 || d > ctx.sigma[p.l] - 1 || jet_used.count({p.l, d})) {
            out.still_free[idx] = true;
            continue;
        }
        // the targeted coefficient depends affinely on eps
        auto with_eps = [&](const fel& eps) {
            std::vector<series> phi = identity_jets(ctx.sigma);
            series s = series::monomial(1, fel(1), kNoTrunc);
            s.add_to(d, eps);
            phi[p.l] = std::move(s);
            return act(phi, out.rep, ctx);
        };
        const fel p0 = out.rep[idx];
        const std::vector<fel> at1 = with_eps(fel(1));
        const fel slope = at1[idx] - p0;
        if (slope.is_zero()) {
            out.still_free[idx] = true;
            continue;
        }
        const fel eps = -(p0 / slope);
        std::vector<fel> next = with_eps(eps);
        if (!next[idx].is_zero()) {
            out.still_free[idx] = true; // the dependence was not affine here
            continue;
        }
        out.rep = std::move(next);
        jet_used.insert({p.l, d});
    }
    return out;
}

// ---- marked equivalence -------------------------------------------------------

// decides marked analytic equivalence through the canonical orbit
// representatives of the two normalized coefficient vectors
inline bool marked_equivalence_probe(const curve_germ& c1, const curve_germ& c2, expo_t n0 = 32)
{
    conductor(c1, n0);
    conductor(c2, n0);
    value_semiring gamma1(c1, n0);
    if (!semiring_equal(c2, gamma1))
        throw std::domain_error("curves have different semirings: not topologically "
                                "equivalent as marked curves");
    if (c1.is_two_smooth_union())
        return true; // single analytic class y(y + x^n)
    moduli_point_result m1 = moduli_point(c1, n0);
    moduli_point_result m2 = moduli_point(c2, n0);
    orbit_reduce_result r1 = orbit_reduce(m1.nf.coeffs, m1.nf);
    orbit_reduce_result r2 = orbit_reduce(m2.nf.coeffs, m2.nf);
    if (m1.nf.positions.size() != m2.nf.positions.size())
        return false;
    for (std::size_t k = 0; k < r1.rep.size(); ++k) {
        if (!(m1.nf.positions[k] == m2.nf.positions[k]))
            return false;
        if (r1.rep[k] != r2.rep[k])
            return false;
    }
    return true;
}

} // namespace plcs

#endif

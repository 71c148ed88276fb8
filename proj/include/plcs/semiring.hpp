// The tropical semiring of values of a marked curve germ.
//
// Membership of a value tuple is decided exactly: an element with prescribed
// valuation profile exists iff a certain linear form stays independent of the
// vanishing conditions below the profile, over the space of polynomial
// multiples of the equations of the branches carrying an infinite coordinate.
// Tuples are kept in the window prod_l([0, sigma_l] u {inf}); a finite
// coordinate >= sigma_l is interchangeable with inf by the truncation lemma,
// which the canonical form below exploits.
#ifndef PLCS_SEMIRING_HPP
#define PLCS_SEMIRING_HPP

#include "plcs/curve.hpp"
#include "plcs/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace plcs {

// ---- value tuples ----------------------------------------------------------

inline expo_t val_add(expo_t a, expo_t b)
{
    return (a == kInfVal || b == kInfVal) ? kInfVal : a + b;
}
inline vtuple tuple_add(const vtuple& a, const vtuple& b)
{
    vtuple r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = val_add(a[i], b[i]);
    return r;
}
inline vtuple tuple_min(const vtuple& a, const vtuple& b)
{
    vtuple r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = std::min(a[i], b[i]);
    return r;
}
inline bool tuple_leq(const vtuple& a, const vtuple& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}
inline bool tuple_all_inf(const vtuple& a)
{
    for (expo_t v : a)
        if (v != kInfVal)
            return false;
    return true;
}
inline bool tuple_all_zero(const vtuple& a)
{
    for (expo_t v : a)
        if (v != 0)
            return false;
    return true;
}
inline std::string tuple_to_string(const vtuple& a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            s += ",";
        s += a[i] == kInfVal ? "inf" : std::to_string(a[i]);
    }
    return s + ")";
}

// ---- ring elements ---------------------------------------------------------

// An element of the local ring of the curve: an (x, y)-polynomial
// representative together with its restrictions to the branches.  The series
// agree with the evaluated expression up to their truncation; an infinite
// coordinate of `val` certifies that the component vanishes identically.
struct ring_element {
    bipoly expr;
    std::vector<series> on_branches;
    vtuple val;
};

inline ring_element make_ring_element(const curve_germ& c, const bipoly& expr)
{
    ring_element g;
    g.expr = expr;
    g.val.resize(c.r());
    for (std::size_t l = 0; l < c.r(); ++l) {
        g.on_branches.push_back(expr.eval_on(c.comp(l).x, c.comp(l).y));
        g.val[l] = g.on_branches.back().valuation();
    }
    return g;
}

// ---- the decision engine ---------------------------------------------------

namespace detail {

struct profile_engine {
    const curve_germ* c;
    vtuple vx, vy; // valuations of the coordinate functions per branch

    explicit profile_engine(const curve_germ& curve) : c(&curve)
    {
        vx.resize(curve.r());
        vy.resize(curve.r());
        for (std::size_t l = 0; l < curve.r(); ++l) {
            vx[l] = curve.comp(l).x.valuation();
            vy[l] = curve.comp(l).y.valuation();
        }
    }

    struct basis_row {
        fvec vec;
        bipoly poly;
    };

    // Decides whether some element has exact valuation profile T: finite
    // coordinates are hit exactly, infinite coordinates vanish identically.
    // Returns a realizing element when wanted.
    bool decide(const vtuple& t, ring_element* witness_out) const
    {
        const std::size_t r = c->r();
        std::vector<bool> in_z(r, false);
        bool all_inf = true;
        for (std::size_t l = 0; l < r; ++l) {
            in_z[l] = t[l] == kInfVal;
            all_inf = all_inf && in_z[l];
        }
        if (all_inf) {
            if (witness_out)
                *witness_out = ring_element{bipoly(), std::vector<series>(r, series(kNoTrunc)),
                                            vtuple(r, kInfVal)};
            return true;
        }

        const bipoly bz = complement_equation(*c, in_z);
        vtuple vbz(r, 0);
        std::vector<series> bz_on(r);
        for (std::size_t l = 0; l < r; ++l) {
            if (in_z[l])
                continue;
            bz_on[l] = bz.eval_on(c->comp(l).x, c->comp(l).y);
            vbz[l] = bz_on[l].valuation();
            if (vbz[l] > t[l])
                return false; // even the bare product already overshoots
        }

        // position layout: for l not in Z, exponents 0..t_l
        std::vector<std::size_t> offset(r + 1, 0);
        for (std::size_t l = 0; l < r; ++l)
            offset[l + 1] = offset[l] + (in_z[l] ? 0 : static_cast<std::size_t>(t[l]) + 1);
        const std::size_t ncols = offset[r];

        expo_t tmax = 0;
        for (std::size_t l = 0; l < r; ++l)
            if (!in_z[l])
                tmax = std::max(tmax, t[l]);

        // reduced independent family of coefficient vectors with their
        // polynomials carried along
        std::vector<basis_row> basis;
        auto try_insert = [&](fvec v, bipoly p) {
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const std::size_t piv = pivot_of(basis[k].vec);
                const fel coef = v[piv];
                if (coef.is_zero())
                    continue;
                for (std::size_t q = piv; q < ncols; ++q)
                    if (!basis[k].vec[q].is_zero())
                        v[q] -= coef * basis[k].vec[q];
                p = p - coef * basis[k].poly;
            }
            const std::size_t piv = pivot_of(v);
            if (piv == ncols)
                return;
            const fel inv = v[piv].inverse();
            for (std::size_t q = piv; q < ncols; ++q)
                if (!v[q].is_zero())
                    v[q] = inv * v[q];
            p = inv * p;
            basis.push_back({std::move(v), std::move(p)});
        };

        for (expo_t i = 0; i <= tmax; ++i) {
            for (expo_t j = 0; j <= tmax; ++j) {
                bool alive = false;
                for (std::size_t l = 0; l < r; ++l) {
                    if (in_z[l])
                        continue;
                    const expo_t v =
                        val_add(vbz[l], val_add(mul_val(vx[l], i), mul_val(vy[l], j)));
                    if (v <= t[l])
                        alive = true;
                }
                if (!alive)
                    continue;
                bipoly p = bz * bipoly::monomial(i, j, fel(1));
                fvec vec(ncols, fel());
                bool nonzero = false;
                for (std::size_t l = 0; l < r; ++l) {
                    if (in_z[l])
                        continue;
                    series s = p.eval_on(c->comp(l).x, c->comp(l).y, t[l] + 1);
                    for (const auto& [e, cc] : s.terms()) {
                        vec[offset[l] + static_cast<std::size_t>(e)] = cc;
                        nonzero = true;
                    }
                }
                if (nonzero)
                    try_insert(std::move(vec), std::move(p));
            }
        }
        if (basis.empty())
            return false;

        // constraints: all positions strictly below the profile vanish
        std::vector<std::size_t> below, targets;
        for (std::size_t l = 0; l < r; ++l) {
            if (in_z[l])
                continue;
            for (expo_t e = 0; e < t[l]; ++e)
                below.push_back(offset[l] + static_cast<std::size_t>(e));
            targets.push_back(offset[l] + static_cast<std::size_t>(t[l]));
        }
        const std::size_t v = basis.size();
        fmat cons;
        cons.reserve(below.size());
        for (std::size_t p : below) {
            fvec row(v, fel());
            bool nz = false;
            for (std::size_t k = 0; k < v; ++k) {
                row[k] = basis[k].vec[p];
                nz = nz || !row[k].is_zero();
            }
            if (nz)
                cons.push_back(std::move(row));
        }
        const field_ptr fld = ground_field();
        fmat lam = cons.empty() ? identity_basis(v, fld) : nullspace(cons, v, fld);
        if (lam.empty())
            return false;

        // each target functional must be nonzero somewhere on the solution space
        fmat funcs;
        for (std::size_t p : targets) {
            fvec row(v, fel());
            for (std::size_t k = 0; k < v; ++k)
                row[k] = basis[k].vec[p];
            funcs.push_back(std::move(row));
        }
        for (const auto& f : funcs) {
            bool hit = false;
            for (const auto& mu : lam) {
                fel dot;
                for (std::size_t k = 0; k < v; ++k)
                    dot += f[k] * mu[k];
                if (!dot.is_zero()) {
                    hit = true;
                    break;
                }
            }
            if (!hit)
                return false;
        }
        if (!witness_out)
            return true;

        // pick one combination avoiding every target hyperplane: mu^k weights
        for (long long mu = 1; mu <= 4096; ++mu) {
            fvec lambda(v, fel());
            fel w(1);
            for (const auto& nu : lam) {
                for (std::size_t k = 0; k < v; ++k)
                    lambda[k] += w * nu[k];
                w *= fel(mu);
            }
            bool ok = true;
            for (const auto& f : funcs) {
                fel dot;
                for (std::size_t k = 0; k < v; ++k)
                    dot += f[k] * lambda[k];
                if (dot.is_zero()) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            bipoly expr;
            for (std::size_t k = 0; k < v; ++k)
                if (!lambda[k].is_zero())
                    expr = expr + lambda[k] * basis[k].poly;
            *witness_out = make_ring_element(*c, expr);
            // sanity: the witness valuation must match the requested profile
            for (std::size_t l = 0; l < r; ++l) {
                if (in_z[l]) {
                    if (witness_out->val[l] != kInfVal)
                        throw std::logic_error("witness fails to vanish on a branch");
                } else if (witness_out->val[l] != t[l]) {
                    throw std::logic_error("witness valuation mismatch");
                }
            }
            return true;
        }
        throw std::logic_error("no combination clears every target hyperplane");
    }

private:
    static expo_t mul_val(expo_t v, expo_t k)
    {
        if (k == 0)
            return 0;
        return v == kInfVal ? kInfVal : v * k;
    }
    static std::size_t pivot_of(const fvec& v)
    {
        for (std::size_t q = 0; q < v.size(); ++q)
            if (!v[q].is_zero())
                return q;
        return v.size();
    }
    field_ptr ground_field() const
    {
        for (std::size_t l = 0; l < c->r(); ++l) {
            for (const auto& [e, cc] : c->comp(l).x.terms())
                if (cc.field())
                    return cc.field();
            for (const auto& [e, cc] : c->comp(l).y.terms())
                if (cc.field())
                    return cc.field();
        }
        return nullptr;
    }
    static fmat identity_basis(std::size_t v, const field_ptr& fld)
    {
        fmat id(v, fvec(v, fel::zero(fld)));
        for (std::size_t k = 0; k < v; ++k)
            id[k][k] = fel::one(fld);
        return id;
    }
};

} // namespace detail

// ---- conductor -------------------------------------------------------------

struct conductor_result {
    vtuple sigma;
    std::vector<expo_t> branch_conductors;
};

// Value semigroup membership for a single branch, decided exactly.
inline bool branch_semigroup_member(const branch& b, expo_t k)
{
    curve_germ single({b});
    detail::profile_engine eng(single);
    return eng.decide({k}, nullptr);
}

// Conductor of the value semigroup of one branch, with the stabilization
// check at doubled truncation.
inline expo_t branch_semigroup_conductor(const branch& b, expo_t n0 = 32)
{
    const expo_t m = b.mult();
    for (int attempt = 0; attempt < 3; ++attempt, n0 *= 2) {
        std::vector<bool> member(static_cast<std::size_t>(n0), false);
        for (expo_t k = 0; k < n0; ++k)
            member[static_cast<std::size_t>(k)] = branch_semigroup_member(b, k);
        expo_t c = n0;
        for (expo_t k = n0; k-- > 0;) {
            if (!member[static_cast<std::size_t>(k)])
                break;
            c = k;
        }
        if (c == n0 || c + m >= n0 || 2 * c >= n0)
            continue; // window too small, escalate
        // certificate: [c, c+m) in S and c-1 not in S; with m in S this pins
        // the semigroup conductor exactly
        bool ok = true;
        for (expo_t k = c; k < c + m; ++k)
            ok = ok && member[static_cast<std::size_t>(k)];
        if (c > 0)
            ok = ok && !member[static_cast<std::size_t>(c - 1)];
        if (ok)
            return c;
    }
    throw std::runtime_error("branch semigroup conductor did not stabilize; raise the truncation");
}

// sigma_l = (conductor of the branch value semigroup) + sum of pairwise
// intersection numbers, validated a posteriori.
inline conductor_result conductor(const curve_germ& c, expo_t n0 = 32)
{
    conductor_result res;
    res.sigma.resize(c.r());
    res.branch_conductors.resize(c.r());
    for (std::size_t l = 0; l < c.r(); ++l) {
        res.branch_conductors[l] = branch_semigroup_conductor(c.comp(l), n0);
        expo_t s = res.branch_conductors[l];
        for (std::size_t j = 0; j < c.r(); ++j)
            if (j != l)
                s += c.pairwise(l, j);
        res.sigma[l] = s;
    }
    // validation in the window: sigma + [0,1]^r lies in Gamma and sigma is
    // coordinate-wise minimal
    detail::profile_engine eng(c);
    const std::size_t r = c.r();
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        vtuple t = res.sigma;
        for (std::size_t l = 0; l < r; ++l)
            if (mask & (std::size_t{1} << l))
                t[l] += 1;
        if (!eng.decide(t, nullptr))
            throw std::logic_error("conductor validation failed: " + tuple_to_string(t) +
                                   " is not attained");
    }
    for (std::size_t l = 0; l < r; ++l) {
        if (res.sigma[l] == 0)
            continue;
        vtuple t = res.sigma;
        t[l] -= 1;
        if (eng.decide(t, nullptr))
            throw std::logic_error("conductor validation failed: not minimal at branch " +
                                   std::to_string(l));
    }
    c.set_sigma(res.sigma);
    return res;
}

// ---- the semiring window ---------------------------------------------------

class value_semiring {
public:
    value_semiring(const curve_germ& c, expo_t n0 = 32)
        : curve_(&c), engine_(c)
    {
        if (c.sigma_cache())
            sigma_ = *c.sigma_cache();
        else
            sigma_ = conductor(c, n0).sigma;
        build_members();
    }

    const curve_germ& curve() const { return *curve_; }
    const vtuple& sigma() const { return sigma_; }
    std::size_t r() const { return sigma_.size(); }

    // canonical form: finite coordinates >= sigma_l become inf
    vtuple canonical(vtuple t) const
    {
        for (std::size_t l = 0; l < t.size(); ++l)
            if (t[l] >= sigma_[l])
                t[l] = kInfVal;
        return t;
    }

    bool is_member(const vtuple& t) const
    {
        if (t.size() != sigma_.size())
            throw std::invalid_argument("value tuple has wrong arity");
        return members_.count(canonical(t)) != 0;
    }

    // all members of the window prod([0, sigma_l] u {inf}), mirrors included
    std::vector<vtuple> window_members() const
    {
        std::vector<vtuple> out;
        vtuple t(r(), 0);
        enumerate_window(0, t, out);
        return out;
    }
    const std::set<vtuple>& canonical_members() const { return members_; }

    // realizes the honest profile t itself (boundary coordinates included)
    const ring_element& witness(const vtuple& t) const
    {
        auto it = witnesses_.find(t);
        if (it != witnesses_.end())
            return it->second;
        ring_element w;
        if (!engine_.decide(t, &w))
            throw std::invalid_argument("tuple " + tuple_to_string(t) + " is not in the semiring");
        return witnesses_.emplace(t, std::move(w)).first->second;
    }

    // literal irreducibility: no decomposition a (.) b with both parts proper
    bool is_irreducible(const vtuple& alpha) const
    {
        require_member(alpha);
        if (tuple_all_inf(alpha))
            return false;
        std::vector<vtuple> parts;
        vtuple a(r(), 0);
        return !search_decomposition(alpha, 0, a);
    }

    // literal absoluteness: every F_J empty (vacuously true when |I_alpha|<=1)
    bool is_absolute(const vtuple& alpha) const
    {
        require_member(alpha);
        std::vector<std::size_t> support;
        for (std::size_t l = 0; l < r(); ++l)
            if (alpha[l] != kInfVal)
                support.push_back(l);
        const std::size_t n = support.size();
        if (n <= 1)
            return true;
        for (std::size_t jmask = 1; jmask + 1 < (std::size_t{1} << n); ++jmask) {
            if (!f_j_empty(alpha, support, jmask))
                return false;
        }
        return true;
    }

    // the finite absolute set reported by the library: absolute points with
    // all finite coordinates below the conductor, plus the one irreducible
    // point supported on each single branch (the class of the product of the
    // complementary branch equations)
    std::vector<vtuple> absolute_points() const
    {
        std::vector<vtuple> out;
        for (const auto& t : generator_candidates())
            if (is_absolute(t))
                out.push_back(t);
        return out;
    }

    std::vector<vtuple> irreducible_points() const
    {
        std::vector<vtuple> out;
        for (const auto& t : generator_candidates())
            if (is_irreducible(t))
                out.push_back(t);
        return out;
    }

    struct generators {
        std::vector<vtuple> g;
        std::vector<ring_element> witnesses;
        bool has_pair = false;             // two generators with independent
        std::size_t first = 0, second = 0; // linear parts (absent exactly for
                                           // the excluded special families)
    };

    // minimal semiring generators: irreducible absolute points, lex-sorted,
    // with the two distinguished elements of independent linear part flagged
    generators minimal_generators() const
    {
        generators out;
        if (r() == 1) {
            out.g = numerical_semigroup_generators();
        } else {
            for (const auto& t : generator_candidates())
                if (is_absolute(t) && is_irreducible(t))
                    out.g.push_back(t);
            std::sort(out.g.begin(), out.g.end());
        }
        for (const auto& t : out.g)
            out.witnesses.push_back(witness(t));
        // flag the two generators with independent linear parts
        bool found_first = false;
        fel ax, ay;
        std::size_t i1 = out.g.size(), i2 = out.g.size();
        for (std::size_t k = 0; k < out.g.size(); ++k) {
            const bipoly& e = out.witnesses[k].expr;
            const fel cx = e.coeff(1, 0), cy = e.coeff(0, 1);
            if (cx.is_zero() && cy.is_zero())
                continue;
            if (!found_first) {
                i1 = k;
                ax = cx;
                ay = cy;
                found_first = true;
            } else if (!(cx * ay - cy * ax).is_zero()) {
                i2 = k;
                break;
            }
        }
        if (i2 != out.g.size()) {
            out.has_pair = true;
            out.first = i1;
            out.second = i2;
        }
        return out;
    }

    friend bool semiring_equal(const curve_germ& c, const value_semiring& reference)
    {
        conductor_result cr = conductor(c);
        if (cr.sigma != reference.sigma_)
            throw std::domain_error("conductor mismatch: " + tuple_to_string(cr.sigma) + " vs " +
                                    tuple_to_string(reference.sigma_));
        value_semiring other(c);
        return other.members_ == reference.members_;
    }

    // component-wise truncation of a ring element at exponents p (inclusive),
    // certified by the membership test
    ring_element truncate_ring_element(const ring_element& g, const vtuple& p) const
    {
        for (std::size_t l = 0; l < r(); ++l)
            if (p[l] != kInfVal && p[l] < sigma_[l] - 1)
                throw std::invalid_argument("truncation below the conductor bound");
        ring_element out;
        out.val.resize(r());
        for (std::size_t l = 0; l < r(); ++l) {
            series s = g.on_branches[l];
            if (p[l] != kInfVal)
                s = s.kept_up_to(p[l]).truncated(p[l] + 1);
            out.val[l] = s.is_zero() ? kInfVal : s.valuation();
            out.on_branches.push_back(std::move(s));
        }
        if (!is_member(out.val))
            throw std::logic_error("truncated element leaves the ring");
        out.expr = rebuild_expression(out);
        return out;
    }

private:
    const curve_germ* curve_;
    detail::profile_engine engine_;
    vtuple sigma_;
    std::set<vtuple> members_;
    mutable std::map<vtuple, ring_element> witnesses_;

    void require_member(const vtuple& t) const
    {
        if (!is_member(t))
            throw std::invalid_argument("tuple " + tuple_to_string(t) +
                                        " is not in the semiring");
    }

    void build_members()
    {
        vtuple t(r(), 0);
        build_rec(0, t);
        members_.insert(vtuple(r(), kInfVal));
    }
    void build_rec(std::size_t l, vtuple& t)
    {
        if (l == r()) {
            if (!tuple_all_inf(t) && engine_.decide(t, nullptr))
                members_.insert(t);
            return;
        }
        for (expo_t v = 0; v < sigma_[l]; ++v) {
            t[l] = v;
            build_rec(l + 1, t);
        }
        t[l] = kInfVal;
        build_rec(l + 1, t);
    }

    void enumerate_window(std::size_t l, vtuple& t, std::vector<vtuple>& out) const
    {
        if (l == r()) {
            if (members_.count(canonical(t)))
                out.push_back(t);
            return;
        }
        for (expo_t v = 0; v <= sigma_[l]; ++v) {
            t[l] = v;
            enumerate_window(l + 1, t, out);
        }
        t[l] = kInfVal;
        enumerate_window(l + 1, t, out);
    }

    // honest decomposition search alpha = a (.) b with a, b in Gamma proper
    bool search_decomposition(const vtuple& alpha, std::size_t l, vtuple& a) const
    {
        if (l == alpha.size()) {
            if (!is_member(a))
                return false;
            // b is determined except at coordinates where both may vary
            vtuple b(alpha.size());
            std::vector<std::size_t> wild;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (alpha[i] != kInfVal) {
                    b[i] = alpha[i] - a[i];
                } else if (a[i] == kInfVal) {
                    b[i] = 0; // wildcard, scanned below
                    wild.push_back(i);
                } else {
                    b[i] = kInfVal;
                }
            }
            return scan_wild(alpha, a, b, wild, 0);
        }
        if (alpha[l] != kInfVal) {
            for (expo_t v = 0; v <= alpha[l]; ++v) {
                a[l] = v;
                if (search_decomposition(alpha, l + 1, a))
                    return true;
            }
        } else {
            for (expo_t v = 0; v <= sigma_[l]; ++v) {
                a[l] = v;
                if (search_decomposition(alpha, l + 1, a))
                    return true;
            }
            a[l] = kInfVal;
            if (search_decomposition(alpha, l + 1, a))
                return true;
        }
        return false;
    }
    bool scan_wild(const vtuple& alpha, const vtuple& a, vtuple b,
                   const std::vector<std::size_t>& wild, std::size_t k) const
    {
        if (k == wild.size()) {
            if (a == alpha || b == alpha)
                return false;
            return is_member(b);
        }
        for (expo_t v = 0; v <= sigma_[wild[k]]; ++v) {
            b[wild[k]] = v;
            if (scan_wild(alpha, a, b, wild, k + 1))
                return true;
        }
        b[wild[k]] = kInfVal;
        return scan_wild(alpha, a, b, wild, k + 1);
    }

    bool f_j_empty(const vtuple& alpha, const std::vector<std::size_t>& support,
                   std::size_t jmask) const
    {
        // F_J = { a in Gamma : a_i > alpha_i on support \ J, a_i = alpha_i off }
        std::vector<std::size_t> raised;
        for (std::size_t k = 0; k < support.size(); ++k)
            if (!(jmask & (std::size_t{1} << k)))
                raised.push_back(support[k]);
        vtuple probe = alpha;
        return !scan_raised(alpha, probe, raised, 0);
    }
    bool scan_raised(const vtuple& alpha, vtuple& probe, const std::vector<std::size_t>& raised,
                     std::size_t k) const
    {
        if (k == raised.size())
            return is_member(probe);
        const std::size_t i = raised[k];
        for (expo_t v = alpha[i] + 1; v <= sigma_[i]; ++v) {
            probe[i] = v;
            if (scan_raised(alpha, probe, raised, k + 1))
                return true;
        }
        probe[i] = kInfVal;
        const bool hit = scan_raised(alpha, probe, raised, k + 1);
        probe[i] = alpha[i];
        return hit;
    }

    // candidates that can carry generators: members with all finite
    // coordinates strictly below the conductor, plus the per-branch points
    // nu(prod of the other branch equations)
    std::vector<vtuple> generator_candidates() const
    {
        std::set<vtuple> cands;
        for (const auto& t : members_) {
            if (tuple_all_zero(t) || tuple_all_inf(t))
                continue;
            cands.insert(t);
        }
        for (std::size_t l = 0; l < r(); ++l) {
            std::vector<bool> in_z(r(), true);
            in_z[l] = false;
            bipoly bl = complement_equation(*curve_, in_z);
            ring_element e = make_ring_element(*curve_, bl);
            if (e.val[l] <= sigma_[l])
                cands.insert(e.val);
        }
        return {cands.begin(), cands.end()};
    }

    // r = 1: ordinary numerical semigroup generators
    std::vector<vtuple> numerical_semigroup_generators() const
    {
        const expo_t c = sigma_[0];
        const expo_t m = curve_->comp(0).mult();
        std::vector<expo_t> elems;
        for (expo_t k = 1; k <= c + m; ++k)
            if (k >= c || members_.count({k}))
                elems.push_back(k);
        std::vector<vtuple> gens;
        for (expo_t k : elems) {
            bool dec = false;
            for (expo_t a : elems) {
                if (a >= k)
                    break;
                for (expo_t b : elems) {
                    if (a + b == k) {
                        dec = true;
                        break;
                    }
                    if (a + b > k)
                        break;
                }
                if (dec)
                    break;
            }
            if (!dec)
                gens.push_back({k});
        }
        return gens;
    }

    // expression matching the element's branch series up to their truncation
    bipoly rebuild_expression(const ring_element& target) const;
};

// Solves for a polynomial whose branch restrictions match the given series up
// to the series' truncations (or full polynomial content when untruncated).
inline bipoly value_semiring::rebuild_expression(const ring_element& target) const
{
    const std::size_t r = sigma_.size();
    std::vector<expo_t> upto(r);
    for (std::size_t l = 0; l < r; ++l) {
        const series& s = target.on_branches[l];
        upto[l] = s.trunc() != kNoTrunc ? s.trunc() : std::max<expo_t>(s.degree() + 1, sigma_[l] + 1);
    }
    // monomial family: every x^i y^j contributing below the match orders
    detail::profile_engine eng(*curve_);
    std::vector<std::pair<expo_t, expo_t>> monos;
    expo_t cap = 0;
    for (std::size_t l = 0; l < r; ++l)
        cap = std::max(cap, upto[l]);
    for (expo_t i = 0; i <= cap; ++i)
        for (expo_t j = 0; j <= cap; ++j) {
            bool alive = false;
            for (std::size_t l = 0; l < r; ++l) {
                const expo_t v = val_add(i == 0 ? 0 : (eng.vx[l] == kInfVal ? kInfVal : eng.vx[l] * i),
                                         j == 0 ? 0 : (eng.vy[l] == kInfVal ? kInfVal : eng.vy[l] * j));
                if (v < upto[l])
                    alive = true;
            }
            if (alive)
                monos.emplace_back(i, j);
        }
    std::vector<std::size_t> offset(r + 1, 0);
    for (std::size_t l = 0; l < r; ++l)
        offset[l + 1] = offset[l] + static_cast<std::size_t>(upto[l]);
    fmat a(offset[r], fvec(monos.size(), fel()));
    fvec b(offset[r], fel());
    for (std::size_t k = 0; k < monos.size(); ++k) {
        bipoly p = bipoly::monomial(monos[k].first, monos[k].second, fel(1));
        for (std::size_t l = 0; l < r; ++l) {
            series s = p.eval_on(curve_->comp(l).x, curve_->comp(l).y, upto[l]);
            for (const auto& [e, cc] : s.terms())
                a[offset[l] + static_cast<std::size_t>(e)][k] = cc;
        }
    }
    for (std::size_t l = 0; l < r; ++l)
        for (const auto& [e, cc] : target.on_branches[l].terms())
            if (e < upto[l])
                b[offset[l] + static_cast<std::size_t>(e)] = cc;
    auto sol = solve_linear(a, b, nullptr);
    if (!sol)
        throw std::logic_error("no polynomial expression matches the truncated element");
    bipoly expr;
    for (std::size_t k = 0; k < monos.size(); ++k)
        if (!(*sol)[k].is_zero())
            expr.add_to(monos[k].first, monos[k].second, (*sol)[k]);
    return expr;
}

} // namespace plcs

#endif

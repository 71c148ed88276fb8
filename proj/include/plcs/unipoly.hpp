// Dense univariate polynomials over the ground field: gcd, squarefree
// decomposition, rational-root splitting.  Used for binary forms and for the
// restriction of data to the exceptional divisor.
#ifndef PLCS_UNIPOLY_HPP
#define PLCS_UNIPOLY_HPP

#include "plcs/field.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace plcs {

using unipoly = std::vector<fel>; // coefficient of u^k at index k

inline void uni_strip(unipoly& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}
inline bool uni_is_zero(const unipoly& p)
{
    for (const auto& c : p)
        if (!c.is_zero())
            return false;
    return true;
}
inline expo_t uni_deg(const unipoly& p)
{
    for (std::size_t k = p.size(); k-- > 0;)
        if (!p[k].is_zero())
            return static_cast<expo_t>(k);
    return -1;
}
inline expo_t uni_val(const unipoly& p)
{
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!p[k].is_zero())
            return static_cast<expo_t>(k);
    return kInfVal;
}

inline unipoly uni_mul(const unipoly& a, const unipoly& b)
{
    if (uni_is_zero(a) || uni_is_zero(b))
        return {};
    unipoly r(a.size() + b.size() - 1, fel());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero())
                r[i + j] += a[i] * b[j];
    }
    uni_strip(r);
    return r;
}
inline unipoly uni_sub(const unipoly& a, const unipoly& b)
{
    unipoly r = a;
    r.resize(std::max(a.size(), b.size()), fel());
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    uni_strip(r);
    return r;
}

inline std::pair<unipoly, unipoly> uni_divmod(unipoly num, const unipoly& den)
{
    unipoly d = den;
    uni_strip(d);
    uni_strip(num);
    if (d.empty())
        throw std::domain_error("univariate division by zero");
    unipoly q(num.size() >= d.size() ? num.size() - d.size() + 1 : 0, fel());
    while (num.size() >= d.size() && !num.empty()) {
        const fel c = num.back() / d.back();
        const std::size_t shift = num.size() - d.size();
        q[shift] = c;
        for (std::size_t i = 0; i < d.size(); ++i)
            num[shift + i] -= c * d[i];
        uni_strip(num);
    }
    uni_strip(q);
    return {std::move(q), std::move(num)};
}

inline unipoly uni_monic(unipoly p)
{
    uni_strip(p);
    if (p.empty())
        return p;
    const fel inv = p.back().inverse();
    for (auto& c : p)
        c = inv * c;
    return p;
}

inline unipoly uni_gcd(unipoly a, unipoly b)
{
    uni_strip(a);
    uni_strip(b);
    while (!b.empty()) {
        auto [q, r] = uni_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(std::move(a));
}

inline unipoly uni_derivative(const unipoly& p)
{
    unipoly r;
    for (std::size_t k = 1; k < p.size(); ++k)
        r.push_back(fel(rational(static_cast<long long>(k))) * p[k]);
    uni_strip(r);
    return r;
}

inline fel uni_eval(const unipoly& p, const fel& v)
{
    fel acc;
    for (std::size_t k = p.size(); k-- > 0;)
        acc = acc * v + p[k];
    return acc;
}

// Yun squarefree decomposition (characteristic zero): p = c * prod f_k^k with
// f_k squarefree and pairwise coprime.  Returns (f_k, k) for nonconstant f_k.
inline std::vector<std::pair<unipoly, expo_t>> uni_squarefree(unipoly p)
{
    std::vector<std::pair<unipoly, expo_t>> out;
    p = uni_monic(std::move(p));
    if (uni_deg(p) < 1)
        return out;
    unipoly dp = uni_derivative(p);
    unipoly g = uni_gcd(p, dp);
    unipoly w = uni_divmod(p, g).first;
    expo_t k = 1;
    while (uni_deg(w) >= 1) {
        unipoly y = uni_gcd(w, g);
        unipoly f = uni_divmod(w, y).first;
        if (uni_deg(f) >= 1)
            out.emplace_back(uni_monic(std::move(f)), k);
        g = uni_divmod(g, y).first;
        w = std::move(y);
        ++k;
    }
    return out;
}

// Splits all roots lying in the ground field off a squarefree polynomial:
// returns the roots and the (monic) rootless cofactor.  Roots in QQ are found
// by the rational-root theorem; over extensions only roots visible by direct
// evaluation of small candidates are found, the rest stays in the cofactor.
inline std::pair<std::vector<fel>, unipoly> uni_split_rational_roots(unipoly p)
{
    std::vector<fel> roots;
    p = uni_monic(std::move(p));
    bool again = true;
    while (again && uni_deg(p) >= 1) {
        again = false;
        if (uni_deg(p) == 1) {
            roots.push_back(-p[0]);
            p = {fel(1)};
            break;
        }
        // monic over QQ: candidate rational roots are integer divisors of the
        // scaled constant term; keep the search bounded
        if (!p[0].is_rational())
            break;
        if (uni_val(p) > 0) {
            roots.push_back(fel());
            unipoly q(p.begin() + 1, p.end());
            p = std::move(q);
            again = true;
            continue;
        }
        bool all_rat = true;
        for (const auto& c : p)
            if (!c.is_rational())
                all_rat = false;
        bigint denom = 1;
        if (all_rat)
            for (const auto& c : p)
                denom = lcm(denom, denominator(c.rat_value()));
        if (!all_rat || denom > 100000) {
            // fall back to small direct trials
            for (long long cand = -12; cand <= 12 && !again; ++cand) {
                const fel v{rational(cand)};
                if (uni_eval(p, v).is_zero()) {
                    roots.push_back(v);
                    p = uni_divmod(p, unipoly{-v, fel(1)}).first;
                    again = true;
                }
            }
            if (!again)
                break;
            continue;
        }
        // integral model: roots of monic-scaled integer polynomial divide a0
        bigint a0 = numerator(p[0].rat_value() * rational(denom));
        if (a0 == 0)
            a0 = 1;
        if (abs(a0) > bigint(1000000000))
            break;
        const bigint a0_abs = abs(a0);
        for (bigint d = 1; d * d <= a0_abs && !again; ++d) {
            if (a0_abs % d != 0)
                continue;
            for (const bigint& base : {bigint(d), bigint(a0_abs / d)}) {
                for (int sign : {1, -1}) {
                    // candidate root = sign*base/denom-divisor search: try q | denom
                    for (bigint q = 1; q <= denom; ++q) {
                        if (denom % q != 0)
                            continue;
                        const fel v{rational(sign * base, q)};
                        if (uni_eval(p, v).is_zero()) {
                            roots.push_back(v);
                            p = uni_divmod(p, unipoly{-v, fel(1)}).first;
                            again = true;
                            break;
                        }
                    }
                    if (again)
                        break;
                }
                if (again)
                    break;
            }
        }
    }
    return {std::move(roots), uni_monic(std::move(p))};
}

} // namespace plcs

#endif

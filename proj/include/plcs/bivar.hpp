// Sparse exact bivariate polynomials in (x, y) with graded-lex order, x > y.
#ifndef PLCS_BIVAR_HPP
#define PLCS_BIVAR_HPP

#include "plcs/series.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plcs {

struct mono {
    expo_t i = 0; // exponent of x
    expo_t j = 0; // exponent of y
    expo_t deg() const { return i + j; }
    friend bool operator==(const mono& a, const mono& b) { return a.i == b.i && a.j == b.j; }
};

// graded lexicographic, x > y; ascending so that rbegin() is the leading term
struct grlex_less {
    bool operator()(const mono& a, const mono& b) const
    {
        if (a.deg() != b.deg())
            return a.deg() < b.deg();
        return a.i < b.i;
    }
};

class bipoly {
public:
    using term_map = std::map<mono, fel, grlex_less>;

    bipoly() = default;

    static bipoly constant(const fel& c)
    {
        bipoly p;
        p.set(0, 0, c);
        return p;
    }
    static bipoly monomial(expo_t i, expo_t j, const fel& c)
    {
        bipoly p;
        p.set(i, j, c);
        return p;
    }
    static bipoly x() { return monomial(1, 0, fel(1)); }
    static bipoly y() { return monomial(0, 1, fel(1)); }

    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    fel coeff(expo_t i, expo_t j) const
    {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? fel() : it->second;
    }
    void set(expo_t i, expo_t j, const fel& c)
    {
        if (i < 0 || j < 0)
            throw std::invalid_argument("negative exponent in polynomial");
        if (c.is_zero())
            terms_.erase({i, j});
        else
            terms_[{i, j}] = c;
    }
    void add_to(expo_t i, expo_t j, const fel& c)
    {
        auto key = mono{i, j};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (!c.is_zero())
                terms_[key] = c;
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    // minimal total degree of a term; kInfVal for the zero polynomial
    expo_t order() const
    {
        expo_t o = kInfVal;
        for (const auto& [m, c] : terms_)
            o = std::min(o, m.deg());
        return o;
    }
    expo_t total_degree() const
    {
        expo_t d = -1;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m.deg());
        return d;
    }
    fel constant_term() const { return coeff(0, 0); }

    friend bipoly operator-(const bipoly& a)
    {
        bipoly r;
        for (const auto& [m, c] : a.terms_)
            r.terms_[m] = -c;
        return r;
    }
    friend bipoly operator+(const bipoly& a, const bipoly& b)
    {
        bipoly r = a;
        for (const auto& [m, c] : b.terms_)
            r.add_to(m.i, m.j, c);
        return r;
    }
    friend bipoly operator-(const bipoly& a, const bipoly& b)
    {
        bipoly r = a;
        for (const auto& [m, c] : b.terms_)
            r.add_to(m.i, m.j, -c);
        return r;
    }
    friend bipoly operator*(const bipoly& a, const bipoly& b)
    {
        bipoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_to(ma.i + mb.i, ma.j + mb.j, ca * cb);
        return r;
    }
    friend bipoly operator*(const fel& c, const bipoly& a)
    {
        bipoly r;
        for (const auto& [m, ce] : a.terms_) {
            const fel p = c * ce;
            if (!p.is_zero())
                r.terms_[m] = p;
        }
        return r;
    }
    friend bool operator==(const bipoly& a, const bipoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const bipoly& a, const bipoly& b) { return !(a == b); }

    bipoly dx() const
    {
        bipoly r;
        for (const auto& [m, c] : terms_)
            if (m.i > 0)
                r.set(m.i - 1, m.j, fel(rational(static_cast<long long>(m.i))) * c);
        return r;
    }
    bipoly dy() const
    {
        bipoly r;
        for (const auto& [m, c] : terms_)
            if (m.j > 0)
                r.set(m.i, m.j - 1, fel(rational(static_cast<long long>(m.j))) * c);
        return r;
    }

    // sum of the degree-d terms
    bipoly homogeneous_part(expo_t d) const
    {
        bipoly r;
        for (const auto& [m, c] : terms_)
            if (m.deg() == d)
                r.terms_[m] = c;
        return r;
    }
    bipoly initial_part() const
    {
        const expo_t o = order();
        return o == kInfVal ? bipoly() : homogeneous_part(o);
    }
    bool is_homogeneous() const { return is_zero() || order() == total_degree(); }

    // evaluation on a branch parametrization (x(t), y(t)); exact when both
    // series are untruncated polynomials
    series eval_on(const series& xs, const series& ys, expo_t tr = kNoTrunc) const
    {
        series acc(tr, xs.var());
        // cache powers
        std::vector<series> xp{series::monomial(0, fel(1), tr)};
        std::vector<series> yp{series::monomial(0, fel(1), tr)};
        for (const auto& [m, c] : terms_) {
            while (static_cast<expo_t>(xp.size()) <= m.i)
                xp.push_back(xp.back() * xs.truncated(tr));
            while (static_cast<expo_t>(yp.size()) <= m.j)
                yp.push_back(yp.back() * ys.truncated(tr));
            acc = acc + c * (xp[m.i] * yp[m.j]);
        }
        return acc;
    }

    // substitution x -> px, y -> py
    bipoly subst(const bipoly& px, const bipoly& py) const
    {
        bipoly acc;
        std::vector<bipoly> xp{constant(fel(1))};
        std::vector<bipoly> yp{constant(fel(1))};
        for (const auto& [m, c] : terms_) {
            while (static_cast<expo_t>(xp.size()) <= m.i)
                xp.push_back(xp.back() * px);
            while (static_cast<expo_t>(yp.size()) <= m.j)
                yp.push_back(yp.back() * py);
            acc = acc + c * (xp[m.i] * yp[m.j]);
        }
        return acc;
    }

    // exact division by x^k (throws if not divisible)
    bipoly shift_down_x(expo_t k) const
    {
        bipoly r;
        for (const auto& [m, c] : terms_) {
            if (m.i < k)
                throw std::domain_error("polynomial not divisible by x^k");
            r.terms_[{m.i - k, m.j}] = c;
        }
        return r;
    }
    bipoly shift_down_y(expo_t k) const
    {
        bipoly r;
        for (const auto& [m, c] : terms_) {
            if (m.j < k)
                throw std::domain_error("polynomial not divisible by y^k");
            r.terms_[{m.i, m.j - k}] = c;
        }
        return r;
    }
    expo_t x_divisibility() const
    {
        expo_t k = kInfVal;
        for (const auto& [m, c] : terms_)
            k = std::min(k, m.i);
        return k;
    }
    expo_t y_divisibility() const
    {
        expo_t k = kInfVal;
        for (const auto& [m, c] : terms_)
            k = std::min(k, m.j);
        return k;
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty())
                s += " + ";
            s += "(" + it->second.to_string() + ")";
            if (it->first.i == 1)
                s += "*x";
            else if (it->first.i > 1)
                s += "*x^" + std::to_string(it->first.i);
            if (it->first.j == 1)
                s += "*y";
            else if (it->first.j > 1)
                s += "*y^" + std::to_string(it->first.j);
        }
        return s;
    }

private:
    term_map terms_;
};

// Multivariate division with the grlex(x>y) term order.  Returns the quotient
// and whether the remainder vanished; the quotient is confirmed by
// re-multiplication when exact.
struct division_result {
    bipoly quotient;
    bool exact = false;
};

inline division_result poly_divide_exact(const bipoly& num, const bipoly& den)
{
    if (den.is_zero())
        throw std::domain_error("division by the zero polynomial");
    bipoly q, r = num;
    const auto& lead = *den.terms().rbegin();
    while (!r.is_zero()) {
        const auto& rl = *r.terms().rbegin();
        if (rl.first.i < lead.first.i || rl.first.j < lead.first.j)
            return {bipoly(), false};
        const mono m{rl.first.i - lead.first.i, rl.first.j - lead.first.j};
        const fel c = rl.second / lead.second;
        bipoly t = bipoly::monomial(m.i, m.j, c);
        q = q + t;
        r = r - t * den;
    }
    if (!(q * den == num))
        return {bipoly(), false};
    return {q, true};
}

// Univariate view used for restrictions to the exceptional divisor: the
// coefficient list of p(0, y) or p(x, 0).
inline std::vector<fel> restrict_to_y(const bipoly& p)
{
    std::vector<fel> cs;
    for (const auto& [m, c] : p.terms()) {
        if (m.i != 0)
            continue;
        if (static_cast<expo_t>(cs.size()) <= m.j)
            cs.resize(m.j + 1, fel());
        cs[m.j] = c;
    }
    return cs;
}
inline std::vector<fel> restrict_to_x(const bipoly& p)
{
    std::vector<fel> cs;
    for (const auto& [m, c] : p.terms()) {
        if (m.j != 0)
            continue;
        if (static_cast<expo_t>(cs.size()) <= m.i)
            cs.resize(m.i + 1, fel());
        cs[m.i] = c;
    }
    return cs;
}

} // namespace plcs

#endif

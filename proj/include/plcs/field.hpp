// Ground field arithmetic: exact rationals or a simple algebraic extension
// QQ[z]/(m(z)) with monic minimal polynomial m.
#ifndef PLCS_FIELD_HPP
#define PLCS_FIELD_HPP

#include "plcs/rational.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plcs {

struct field_spec {
    std::string var;               // extension variable name, e.g. "z"
    std::vector<rational> minpoly; // monic, degree d >= 1, coefficient of z^k at index k

    std::size_t degree() const { return minpoly.size() - 1; }
};

using field_ptr = std::shared_ptr<const field_spec>;

inline field_ptr make_extension(std::string var, std::vector<rational> minpoly)
{
    if (minpoly.size() < 2)
        throw std::invalid_argument("minimal polynomial must have degree >= 1");
    if (minpoly.back() != 1)
        throw std::invalid_argument("minimal polynomial must be monic");
    auto spec = std::make_shared<field_spec>();
    spec->var = std::move(var);
    spec->minpoly = std::move(minpoly);
    return spec;
}

// Element of QQ or of QQ[z]/(m(z)); canonical representative of degree < deg m.
// A null field pointer means the prime field QQ.
class fel {
public:
    fel() : coeffs_{rational(0)} {}
    explicit fel(const rational& q) : coeffs_{q} {}
    explicit fel(long long n) : coeffs_{rational(n)} {}

    fel(field_ptr fld, std::vector<rational> coeffs)
        : field_(std::move(fld)), coeffs_(std::move(coeffs))
    {
        if (field_) {
            coeffs_.resize(field_->degree(), rational(0));
            reduce_mod_minpoly();
        } else if (coeffs_.size() != 1) {
            throw std::invalid_argument("rational element needs exactly one coefficient");
        }
        trim();
    }

    static fel zero(const field_ptr& fld)
    {
        return fld ? fel(fld, std::vector<rational>(fld->degree(), rational(0))) : fel();
    }
    static fel one(const field_ptr& fld)
    {
        if (!fld)
            return fel(rational(1));
        std::vector<rational> c(fld->degree(), rational(0));
        c[0] = 1;
        return fel(fld, std::move(c));
    }
    // The class of z itself.
    static fel generator(const field_ptr& fld)
    {
        if (!fld || fld->degree() < 1)
            throw std::invalid_argument("generator needs an extension field");
        std::vector<rational> c(fld->degree(), rational(0));
        if (fld->degree() == 1)
            return fel(fld, {-fld->minpoly[0]});
        c[1] = 1;
        return fel(fld, std::move(c));
    }

    const field_ptr& field() const { return field_; }
    const std::vector<rational>& coeffs() const { return coeffs_; }

    bool is_zero() const
    {
        for (const auto& c : coeffs_)
            if (c != 0)
                return false;
        return true;
    }
    bool is_rational() const
    {
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0)
                return false;
        return true;
    }
    const rational& rat_value() const
    {
        if (!is_rational())
            throw std::logic_error("element does not lie in QQ");
        return coeffs_[0];
    }

    friend bool operator==(const fel& a, const fel& b)
    {
        const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        for (std::size_t k = 0; k < n; ++k) {
            const rational& ca = k < a.coeffs_.size() ? a.coeffs_[k] : rational(0);
            const rational& cb = k < b.coeffs_.size() ? b.coeffs_[k] : rational(0);
            if (!(ca == cb))
                return false;
        }
        return true;
    }
    friend bool operator!=(const fel& a, const fel& b) { return !(a == b); }

    friend fel operator-(const fel& a)
    {
        fel r = a;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }
    friend fel operator+(const fel& a, const fel& b)
    {
        fel r = fel::promote(a, b);
        const fel rb = fel::promote(b, a);
        for (std::size_t k = 0; k < rb.coeffs_.size(); ++k)
            r.coeffs_[k] += rb.coeffs_[k];
        r.trim();
        return r;
    }
    friend fel operator-(const fel& a, const fel& b) { return a + (-b); }
    friend fel operator*(const fel& a, const fel& b)
    {
        const fel pa = fel::promote(a, b);
        const fel pb = fel::promote(b, a);
        if (!pa.field_) {
            return fel(pa.coeffs_[0] * pb.coeffs_[0]);
        }
        std::vector<rational> prod(2 * pa.coeffs_.size(), rational(0));
        for (std::size_t i = 0; i < pa.coeffs_.size(); ++i) {
            if (pa.coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; j < pb.coeffs_.size(); ++j)
                if (pb.coeffs_[j] != 0)
                    prod[i + j] += pa.coeffs_[i] * pb.coeffs_[j];
        }
        fel r;
        r.field_ = pa.field_;
        r.coeffs_ = std::move(prod);
        r.reduce_mod_minpoly();
        r.trim();
        return r;
    }
    friend fel operator/(const fel& a, const fel& b) { return a * b.inverse(); }

    fel& operator+=(const fel& o) { return *this = *this + o; }
    fel& operator-=(const fel& o) { return *this = *this - o; }
    fel& operator*=(const fel& o) { return *this = *this * o; }
    fel& operator/=(const fel& o) { return *this = *this / o; }

    fel inverse() const
    {
        if (is_zero())
            throw std::domain_error("division by zero field element");
        if (!field_)
            return fel(rational(1) / coeffs_[0]);
        // Extended Euclid in QQ[z] against the minimal polynomial.
        std::vector<rational> r0 = field_->minpoly, r1 = coeffs_;
        std::vector<rational> t0, t1{rational(1)};
        strip(r1);
        while (!r1.empty()) {
            auto [q, rem] = poly_divmod(r0, r1);
            std::vector<rational> t2 = poly_sub(t0, poly_mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r0 = gcd, a unit in QQ since the minimal polynomial is irreducible in use.
        if (r0.size() != 1)
            throw std::domain_error("element is a zero divisor: minimal polynomial is reducible");
        for (auto& c : t0)
            c /= r0[0];
        return fel(field_, std::move(t0));
    }

    std::string to_string() const
    {
        if (!field_ || is_rational())
            return rational_to_string(coeffs_.empty() ? rational(0) : coeffs_[0]);
        std::string s;
        bool first = true;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0)
                continue;
            if (!first)
                s += "+";
            s += rational_to_string(coeffs_[k]);
            if (k >= 1)
                s += "*" + field_->var + (k > 1 ? "^" + std::to_string(k) : "");
            first = false;
        }
        return first ? "0" : s;
    }

private:
    field_ptr field_;               // null: QQ
    std::vector<rational> coeffs_;  // degree-indexed, size d (or 1 for QQ)

    void trim()
    {
        if (!field_)
            coeffs_.resize(1, rational(0));
        else
            coeffs_.resize(field_->degree(), rational(0));
    }

    void reduce_mod_minpoly()
    {
        const std::size_t d = field_->degree();
        for (std::size_t k = coeffs_.size(); k-- > d;) {
            const rational lead = coeffs_[k];
            if (lead == 0)
                continue;
            coeffs_[k] = 0;
            for (std::size_t j = 0; j < d; ++j)
                coeffs_[k - d + j] -= lead * field_->minpoly[j];
        }
        coeffs_.resize(d);
    }

    // promote(a, b): representative of a in the common field of a and b
    static fel promote(const fel& a, const fel& b)
    {
        if (a.field_ || !b.field_)
            return a;
        fel r;
        r.field_ = b.field_;
        r.coeffs_.assign(b.field_->degree(), rational(0));
        r.coeffs_[0] = a.coeffs_[0];
        return r;
    }

    static void strip(std::vector<rational>& p)
    {
        while (!p.empty() && p.back() == 0)
            p.pop_back();
    }
    static std::vector<rational> poly_mul(const std::vector<rational>& a,
                                          const std::vector<rational>& b)
    {
        if (a.empty() || b.empty())
            return {};
        std::vector<rational> r(a.size() + b.size() - 1, rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
        strip(r);
        return r;
    }
    static std::vector<rational> poly_sub(const std::vector<rational>& a,
                                          const std::vector<rational>& b)
    {
        std::vector<rational> r = a;
        r.resize(std::max(a.size(), b.size()), rational(0));
        for (std::size_t i = 0; i < b.size(); ++i)
            r[i] -= b[i];
        strip(r);
        return r;
    }
    static std::pair<std::vector<rational>, std::vector<rational>>
    poly_divmod(std::vector<rational> num, const std::vector<rational>& den)
    {
        std::vector<rational> q(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0,
                                rational(0));
        while (num.size() >= den.size() && !num.empty()) {
            const rational c = num.back() / den.back();
            const std::size_t shift = num.size() - den.size();
            q[shift] = c;
            for (std::size_t i = 0; i < den.size(); ++i)
                num[shift + i] -= c * den[i];
            strip(num);
        }
        strip(q);
        return {std::move(q), std::move(num)};
    }
};

} // namespace plcs

#endif

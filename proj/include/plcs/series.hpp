// Truncated univariate power series with exact coefficients.
// A truncation order of kNoTrunc gives plain polynomial arithmetic.
#ifndef PLCS_SERIES_HPP
#define PLCS_SERIES_HPP

#include "plcs/field.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace plcs {

using expo_t = std::int64_t;
inline constexpr expo_t kInfVal = std::numeric_limits<expo_t>::max();  // valuation of 0
inline constexpr expo_t kNoTrunc = std::numeric_limits<expo_t>::max();

class series {
public:
    series() = default;
    explicit series(expo_t trunc, std::string var = "t")
        : trunc_(trunc), var_(std::move(var)) {}

    static series monomial(expo_t e, const fel& c, expo_t trunc = kNoTrunc)
    {
        series s(trunc);
        s.set(e, c);
        return s;
    }

    expo_t trunc() const { return trunc_; }
    const std::string& var() const { return var_; }
    const std::map<expo_t, fel>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    expo_t valuation() const { return terms_.empty() ? kInfVal : terms_.begin()->first; }
    expo_t degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

    fel coeff(expo_t e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? fel() : it->second;
    }

    void set(expo_t e, const fel& c)
    {
        if (e < 0)
            throw std::invalid_argument("negative exponent in series");
        if (trunc_ != kNoTrunc && e >= trunc_)
            return;
        if (c.is_zero())
            terms_.erase(e);
        else
            terms_[e] = c;
    }
    void add_to(expo_t e, const fel& c)
    {
        if (e < 0)
            throw std::invalid_argument("negative exponent in series");
        if (trunc_ != kNoTrunc && e >= trunc_)
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!c.is_zero())
                terms_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    // Retruncates (only ever downward) to order n: exponents >= n are dropped.
    series truncated(expo_t n) const
    {
        series r(n, var_);
        for (const auto& [e, c] : terms_) {
            if (e >= n)
                break;
            r.terms_[e] = c;
        }
        return r;
    }

    // Keeps exponents <= p (inclusive cut used by ring-element truncation).
    series kept_up_to(expo_t p) const
    {
        series r(trunc_, var_);
        for (const auto& [e, c] : terms_) {
            if (e > p)
                break;
            r.terms_[e] = c;
        }
        return r;
    }

    friend series operator-(const series& a)
    {
        series r(a.trunc_, a.var_);
        for (const auto& [e, c] : a.terms_)
            r.terms_[e] = -c;
        return r;
    }

    friend series operator+(const series& a, const series& b)
    {
        series r(common_trunc(a, b), a.pick_var(b));
        for (const auto& [e, c] : a.terms_)
            r.add_to(e, c);
        for (const auto& [e, c] : b.terms_)
            r.add_to(e, c);
        return r;
    }
    friend series operator-(const series& a, const series& b) { return a + (-b); }

    friend series operator*(const series& a, const series& b)
    {
        series r(common_trunc(a, b), a.pick_var(b));
        for (const auto& [ea, ca] : a.terms_) {
            if (r.trunc_ != kNoTrunc && ea >= r.trunc_)
                break;
            for (const auto& [eb, cb] : b.terms_) {
                const expo_t e = ea + eb;
                if (r.trunc_ != kNoTrunc && e >= r.trunc_)
                    break;
                r.add_to(e, ca * cb);
            }
        }
        return r;
    }

    friend series operator*(const fel& c, const series& a)
    {
        series r(a.trunc_, a.var_);
        for (const auto& [e, ce] : a.terms_) {
            const fel p = c * ce;
            if (!p.is_zero())
                r.terms_[e] = p;
        }
        return r;
    }

    friend bool operator==(const series& a, const series& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const series& a, const series& b) { return !(a == b); }

    // outer(inner(t)); requires valuation(inner) >= 1.
    friend series compose(const series& outer, const series& inner)
    {
        if (!inner.is_zero() && inner.valuation() < 1)
            throw std::domain_error("series composition needs inner valuation >= 1");
        expo_t tr = inner.trunc_;
        if (outer.trunc_ != kNoTrunc) {
            // exponent e of outer contributes from t-order e on
            tr = std::min(tr, outer.trunc_);
        }
        series r(tr, inner.var_);
        // Horner over decreasing exponents of outer.
        expo_t prev = -1;
        series acc(tr, inner.var_);
        for (auto it = outer.terms_.rbegin(); it != outer.terms_.rend(); ++it) {
            if (prev >= 0)
                acc = acc * pow(inner, prev - it->first, tr);
            acc.add_to(0, it->second);
            prev = it->first;
        }
        if (prev > 0)
            acc = acc * pow(inner, prev, tr);
        return prev < 0 ? r : acc;
    }

    friend series pow(const series& base, expo_t n, expo_t tr)
    {
        series r = series::monomial(0, fel(1), tr);
        r.var_ = base.var_;
        series b = tr == kNoTrunc ? base : base.truncated(tr);
        while (n > 0) {
            if (n & 1)
                r = r * b;
            b = (n >>= 1) ? b * b : b;
        }
        return r;
    }

    // Quotient a/b of series to the common truncation; b must have valuation 0
    // unless a's valuation dominates, in which case t^v is cancelled first.
    friend series series_div(const series& a, const series& b, expo_t tr)
    {
        if (b.is_zero())
            throw std::domain_error("series division by zero");
        const expo_t vb = b.valuation();
        const expo_t va = a.valuation();
        if (va != kInfVal && va < vb)
            throw std::domain_error("series division is not regular");
        series num(kNoTrunc, a.var_), den(kNoTrunc, b.var_);
        for (const auto& [e, c] : a.terms_)
            num.terms_[e - vb] = c;
        for (const auto& [e, c] : b.terms_)
            den.terms_[e - vb] = c;
        const fel lead = den.terms_.at(0);
        series q(tr, a.var_);
        series rem = num.truncated(tr == kNoTrunc ? num.degree() + 1 : tr);
        for (expo_t e = 0; tr != kNoTrunc && e < tr; ++e) {
            const fel c = rem.coeff(e) / lead;
            if (!c.is_zero()) {
                q.set(e, c);
                rem = rem - series::monomial(e, c, rem.trunc()) * den;
            }
        }
        if (tr == kNoTrunc)
            throw std::invalid_argument("series division needs a finite truncation");
        return q;
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first)
                s += " + ";
            s += "(" + c.to_string() + ")";
            if (e == 1)
                s += "*" + var_;
            else if (e > 1)
                s += "*" + var_ + "^" + std::to_string(e);
            first = false;
        }
        return s;
    }

private:
    expo_t trunc_ = kNoTrunc;
    std::string var_ = "t";
    std::map<expo_t, fel> terms_;

    static expo_t common_trunc(const series& a, const series& b)
    {
        return std::min(a.trunc_, b.trunc_);
    }
    const std::string& pick_var(const series& b) const
    {
        if (!terms_.empty() && !b.terms_.empty() && var_ != b.var_)
            throw std::invalid_argument("series variable mismatch: " + var_ + " vs " + b.var_);
        return terms_.empty() ? b.var_ : var_;
    }
};

} // namespace plcs

#endif

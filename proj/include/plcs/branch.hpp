// Branches of a curve germ: polynomial parametrizations t -> (x(t), y(t)).
#ifndef PLCS_BRANCH_HPP
#define PLCS_BRANCH_HPP

#include "plcs/bivar.hpp"
#include "plcs/series.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace plcs {

struct branch {
    series x; // untruncated polynomial series in t
    series y;

    branch() = default;
    branch(series xs, series ys) : x(std::move(xs)), y(std::move(ys))
    {
        if (x.trunc() != kNoTrunc || y.trunc() != kNoTrunc)
            throw std::invalid_argument("branch parametrizations must be polynomial");
        if (x.is_zero() && y.is_zero())
            throw std::invalid_argument("branch parametrization is identically zero");
        if (std::min(x.valuation(), y.valuation()) < 1)
            throw std::invalid_argument("branch parametrization must vanish at the origin");
    }

    // multiplicity of the branch
    expo_t mult() const { return std::min(x.valuation(), y.valuation()); }

    // primitive <=> the exponent gcd over both series is 1
    bool is_primitive() const
    {
        expo_t g = 0;
        for (const auto& [e, c] : x.terms())
            g = std::gcd(g, e);
        for (const auto& [e, c] : y.terms())
            g = std::gcd(g, e);
        return g == 1;
    }
};

// Determinant by fraction-free Bareiss elimination; entries are exact
// bivariate polynomials, every division is exact.
inline bipoly bareiss_det(std::vector<std::vector<bipoly>> m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return bipoly::constant(fel(1));
    bipoly prev = bipoly::constant(fel(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t s = k + 1;
            while (s < n && m[s][k].is_zero())
                ++s;
            if (s == n)
                return bipoly();
            std::swap(m[s], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                bipoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto d = poly_divide_exact(num, prev);
                if (!d.exact)
                    throw std::logic_error("Bareiss division failed to be exact");
                m[i][j] = std::move(d.quotient);
            }
            m[i][k] = bipoly();
        }
        prev = m[k][k];
    }
    bipoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// Reduced local equation of a single branch: the eliminant of
// (x - x(t), y - y(t)) with respect to t.
inline bipoly branch_equation(const branch& b)
{
    if (b.x.is_zero())
        return bipoly::x();
    if (b.y.is_zero())
        return bipoly::y();

    const expo_t dx = b.x.degree();
    const expo_t dy = b.y.degree();
    // rows of the Sylvester matrix of A = x - x(t), B = y - y(t) in t
    auto coeff_of = [](const series& s, expo_t e, const bipoly& var) -> bipoly {
        bipoly c = e == 0 ? var : bipoly();
        const fel sc = s.coeff(e);
        if (!sc.is_zero())
            c = c - bipoly::constant(sc);
        return c;
    };
    const std::size_t n = static_cast<std::size_t>(dx + dy);
    std::vector<std::vector<bipoly>> m(n, std::vector<bipoly>(n));
    for (expo_t row = 0; row < dy; ++row)
        for (expo_t e = 0; e <= dx; ++e)
            m[row][row + dx - e] = coeff_of(b.x, e, bipoly::x());
    for (expo_t row = 0; row < dx; ++row)
        for (expo_t e = 0; e <= dy; ++e)
            m[dy + row][row + dy - e] = coeff_of(b.y, e, bipoly::y());
    bipoly res = bareiss_det(std::move(m));
    if (res.is_zero())
        throw std::logic_error("vanishing resultant for a branch");
    // normalize: leading grlex coefficient 1
    const fel lead = res.terms().rbegin()->second;
    return lead.inverse() * res;
}

// t-valuation of the local equation of b2 pulled back to b1; infinite only if
// the branches coincide.
inline expo_t intersection_multiplicity_by_eq(const bipoly& eq2, const branch& b1)
{
    series pulled = eq2.eval_on(b1.x, b1.y);
    return pulled.valuation();
}

} // namespace plcs

#endif

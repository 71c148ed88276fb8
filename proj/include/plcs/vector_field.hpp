// Plane vector fields X = a dx + b dy with exact polynomial components.
#ifndef PLCS_VECTOR_FIELD_HPP
#define PLCS_VECTOR_FIELD_HPP

#include "plcs/bivar.hpp"

namespace plcs {

struct vector_field {
    bipoly a, b; // X = a dx + b dy

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    expo_t valuation() const { return std::min(a.order(), b.order()); }

    // homogeneous parts of degree nu(X)
    vector_field initial_part() const
    {
        const expo_t v = valuation();
        if (v == kInfVal)
            return {};
        return {a.homogeneous_part(v), b.homogeneous_part(v)};
    }
    vector_field homogeneous_part(expo_t d) const
    {
        return {a.homogeneous_part(d), b.homogeneous_part(d)};
    }

    bipoly apply(const bipoly& f) const { return a * f.dx() + b * f.dy(); }

    friend vector_field operator+(const vector_field& x, const vector_field& y)
    {
        return {x.a + y.a, x.b + y.b};
    }
    friend vector_field operator-(const vector_field& x, const vector_field& y)
    {
        return {x.a - y.a, x.b - y.b};
    }
    friend vector_field operator*(const bipoly& h, const vector_field& x)
    {
        return {h * x.a, h * x.b};
    }
    friend vector_field operator*(const fel& c, const vector_field& x)
    {
        return {c * x.a, c * x.b};
    }
    friend bool operator==(const vector_field& x, const vector_field& y)
    {
        return x.a == y.a && x.b == y.b;
    }

    std::string to_string() const
    {
        return "(" + a.to_string() + ") dx + (" + b.to_string() + ") dy";
    }
};

inline vector_field radial_field() { return {bipoly::x(), bipoly::y()}; }

// hamiltonian field of f: f_x dy - f_y dx
inline vector_field hamiltonian_field(const bipoly& f) { return {-f.dy(), f.dx()}; }

inline bipoly wedge(const vector_field& x, const vector_field& y)
{
    return x.a * y.b - y.a * x.b;
}

// exact tangency: X . f lies in (f)
inline bool is_tangent(const vector_field& x, const bipoly& f)
{
    return poly_divide_exact(x.apply(f), f).exact;
}

// dicritical <=> the initial part is a multiple of the radial field,
// equivalently y A - x B = 0 for the initial part (A, B)
inline bool is_dicritical(const vector_field& x)
{
    const vector_field in = x.initial_part();
    return !x.is_zero() && (bipoly::y() * in.a - bipoly::x() * in.b).is_zero();
}

} // namespace plcs

#endif

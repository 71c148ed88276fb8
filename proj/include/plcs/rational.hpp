// Exact rational scalars used throughout the library.
#ifndef PLCS_RATIONAL_HPP
#define PLCS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace plcs {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline rational rat(long long num, long long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    return rational(bigint(num), bigint(den));
}

// Parses "p", "-p" or "p/q".
inline rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return rational(bigint(s));
        bigint num(s.substr(0, slash));
        bigint den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

inline std::string rational_to_string(const rational& q)
{
    std::string s = numerator(q).str();
    if (denominator(q) != 1)
        s += "/" + denominator(q).str();
    return s;
}

} // namespace plcs

#endif

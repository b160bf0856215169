#ifndef SANDLAB_NUMERIC_HPP
#define SANDLAB_NUMERIC_HPP

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sandlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 significant decimal digits; enough to make every literal-constant
// comparison (e^{-2-2c}, sqrt(2*pi), ...) unambiguous.
using Real50 = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>>;

BigInt binomial(std::int64_t n, std::int64_t k);
BigInt factorial(std::int64_t n);
BigInt pow2(std::int64_t e);

Real50 to_real50(const BigInt& x);
Real50 to_real50(const Rational& q);
double to_double(const Rational& q);

inline std::string rational_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

// Ordinary least squares y = a*x + b.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sandlab

#endif

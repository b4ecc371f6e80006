#pragma once

// Exact integer/rational arithmetic shared by every module.
//
// Generator coordinates grow like q^(4k) and overflow 64-bit integers for
// modest parameters, so everything that feeds a verification path is kept in
// arbitrary precision.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mdg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer point of Z^2.
struct Vec2 {
    BigInt x;
    BigInt y;

    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend std::strong_ordering operator<=>(const Vec2& a, const Vec2& b);

    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    friend Vec2 operator*(const BigInt& s, const Vec2& v) { return {s * v.x, s * v.y}; }

    bool is_zero() const { return x == 0 && y == 0; }
};

BigInt ipow(std::int64_t base, unsigned exponent);

/// Euclidean residue in [0, m).
BigInt mod_floor(const BigInt& a, const BigInt& m);
std::int64_t mod_floor(const BigInt& a, std::int64_t m);

BigInt gcd(const BigInt& a, const BigInt& b);

/// Largest e with q^e | a. Requires a != 0 and q >= 2.
unsigned valuation(BigInt a, std::int64_t q);

/// Exact square root if `a` is a perfect square.
std::optional<BigInt> exact_sqrt(const BigInt& a);

/// If `v` is an integer multiple s*d of `d` (d != 0), returns s.
std::optional<BigInt> exact_multiplier(const Vec2& v, const Vec2& d);

/// Rationals always render as "num/den", including den = 1.
std::string to_fraction_string(const Rational& r);
std::string to_decimal_string(const BigInt& a);

double to_double(const Rational& r);

}  // namespace mdg

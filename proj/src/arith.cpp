#include "mdg/arith.hpp"

#include <stdexcept>

namespace mdg {

std::strong_ordering operator<=>(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.y != b.y) return a.y < b.y ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigInt ipow(std::int64_t base, unsigned exponent) {
    return boost::multiprecision::pow(BigInt(base), exponent);
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

std::int64_t mod_floor(const BigInt& a, std::int64_t m) {
    return static_cast<std::int64_t>(mod_floor(a, BigInt(m)));
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

unsigned valuation(BigInt a, std::int64_t q) {
    if (a == 0 || q < 2) throw std::domain_error("valuation: need a != 0 and q >= 2");
    unsigned e = 0;
    const BigInt bq(q);
    while (a % bq == 0) {
        a /= bq;
        ++e;
    }
    return e;
}

std::optional<BigInt> exact_sqrt(const BigInt& a) {
    if (a < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(a);
    if (r * r != a) return std::nullopt;
    return r;
}

std::optional<BigInt> exact_multiplier(const Vec2& v, const Vec2& d) {
    if (d.is_zero()) return std::nullopt;
    // Cross product must vanish for v to lie on the line through d.
    if (v.x * d.y - v.y * d.x != 0) return std::nullopt;
    const BigInt& num = d.x != 0 ? v.x : v.y;
    const BigInt& den = d.x != 0 ? d.x : d.y;
    if (num % den != 0) return std::nullopt;
    return num / den;
}

std::string to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

std::string to_decimal_string(const BigInt& a) { return a.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace mdg

// SPDX-License-Identifier: Apache-2.0

#include "sastlong/rational.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sastlong {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct RawRatio {
    std::int64_t num;
    std::int64_t den;
};

RawRatio reduce(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {narrow(num), narrow(den)};
}

Rational from_raw(RawRatio r) {
    return Rational(r.num, r.den);
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    RawRatio r = reduce(num, den);
    num_ = r.num;
    den_ = r.den;
}

Rational Rational::operator+(const Rational& o) const {
    return from_raw(reduce(Wide(num_) * o.den_ + Wide(o.num_) * den_, Wide(den_) * o.den_));
}

Rational Rational::operator-(const Rational& o) const {
    return from_raw(reduce(Wide(num_) * o.den_ - Wide(o.num_) * den_, Wide(den_) * o.den_));
}

Rational Rational::operator*(const Rational& o) const {
    return from_raw(reduce(Wide(num_) * o.num_, Wide(den_) * o.den_));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return from_raw(reduce(Wide(num_) * o.den_, Wide(den_) * o.num_));
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    Wide lhs = Wide(num_) * o.den_;
    Wide rhs = Wide(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_decimal(int significant_digits) const {
    if (significant_digits < 1) significant_digits = 1;

    std::string out;
    std::int64_t n = num_;
    if (n < 0) {
        out += '-';
        n = -n;
    }

    std::int64_t whole = n / den_;
    std::int64_t rem = n % den_;
    std::string whole_str = std::to_string(whole);
    out += whole_str;
    if (rem == 0) return out;

    int significant = whole == 0 ? 0 : static_cast<int>(whole_str.size());
    out += '.';
    Wide r = rem;
    while (r != 0 && significant < significant_digits) {
        r *= 10;
        Wide digit = r / den_;
        r %= den_;
        out += static_cast<char>('0' + static_cast<int>(digit));
        if (significant > 0 || digit != 0) ++significant;
    }
    return out;
}

} // namespace sastlong

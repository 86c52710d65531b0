// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sastlong {

/// Exact rational arithmetic for the locality metrics and CDF fractions.
/// Values are kept normalized (den > 0, gcd(num, den) = 1). Intermediate
/// products use 128-bit arithmetic; a reduced value that still does not fit
/// in 64 bits throws std::overflow_error.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den);
    Rational(std::int64_t value) : num_(value) {} // NOLINT(google-explicit-constructor)

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Decimal rendering with at least `significant_digits` significant
    /// digits; terminating expansions are printed exactly ("0.25", "1").
    std::string to_decimal(int significant_digits = 12) const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace sastlong

#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace quinary {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den);

    /// Parses "a", "-a" or "a/b".
    static Rational parse(std::string_view text);

    /// Exact value of a finite double.
    static Rational from_double(double value);

    [[nodiscard]] const BigInt& num() const noexcept { return num_; }
    [[nodiscard]] const BigInt& den() const noexcept { return den_; }

    [[nodiscard]] double to_double() const;
    /// "a/b", or "a" when the denominator is 1.
    [[nodiscard]] std::string str() const;
    /// Truncated decimal expansion with the given number of fractional digits.
    [[nodiscard]] std::string decimal(int digits) const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    void normalize();

    BigInt num_ = 0;
    BigInt den_ = 1;
};

}  // namespace quinary

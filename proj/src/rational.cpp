#include "quinary/rational.hpp"

#include <cmath>
#include <string>

#include "quinary/errors.hpp"

namespace quinary {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw ArgumentError("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)), BigInt(1));
        return Rational(BigInt(std::string(text.substr(0, slash))), BigInt(std::string(text.substr(slash + 1))));
    } catch (const std::runtime_error&) {
        throw ArgumentError("Rational: cannot parse '" + std::string(text) + "'");
    }
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw ArgumentError("Rational: non-finite double");
    int exp = 0;
    const double mant = std::frexp(value, &exp);
    // mant * 2^53 is an integer for every finite double.
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num = scaled;
    BigInt den = 1;
    if (exp >= 0) {
        num <<= exp;
    } else {
        den <<= -exp;
    }
    return {num, den};
}

double Rational::to_double() const {
    // Scale so the integer quotient carries more than 53 significant bits.
    const auto nbits = num_ == 0 ? 0 : static_cast<long>(boost::multiprecision::msb(num_ < 0 ? BigInt(-num_) : num_));
    const auto dbits = static_cast<long>(boost::multiprecision::msb(den_));
    const long shift = 64 - (nbits - dbits);
    BigInt n = num_;
    BigInt d = den_;
    if (shift > 0) {
        n <<= shift;
    } else {
        d <<= -shift;
    }
    const BigInt q = n / d;
    return std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

std::string Rational::decimal(int digits) const {
    BigInt n = num_ < 0 ? BigInt(-num_) : num_;
    std::string out = num_ < 0 ? "-" : "";
    out += BigInt(n / den_).str();
    BigInt rem = n % den_;
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            out += static_cast<char>('0' + static_cast<int>(rem / den_));
            rem %= den_;
        }
    }
    return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) throw ArgumentError("Rational: division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace quinary

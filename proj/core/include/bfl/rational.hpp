#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace bfl {

using i128 = __int128;

std::string to_string(i128 v);

// Exact rational with 128-bit numerator and denominator.  Always reduced,
// denominator positive.  Every operation checks for overflow and throws
// OverflowError instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(i128 num, i128 den = 1);
    Rational(int v) : Rational(static_cast<i128>(v)) {}
    Rational(long v) : Rational(static_cast<i128>(v)) {}
    Rational(long long v) : Rational(static_cast<i128>(v)) {}

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    double to_double() const;
    std::string str() const;  // "a/b" or "a"
    bool is_zero() const { return num_ == 0; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    // Parses "a", "a/b" or a finite decimal such as "0.125".
    static Rational parse(const std::string& text);

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    i128 num_ = 0;
    i128 den_ = 1;
};

i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i128 gcd128(i128 a, i128 b);

// Exact binomial coefficient and factorial; throw OverflowError when the
// result does not fit (n! fits for n <= 33).
i128 binom(int n, int k);
i128 factorial(int n);

}  // namespace bfl

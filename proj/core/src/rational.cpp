#include "bfl/rational.hpp"

#include <algorithm>
#include <cctype>

#include "bfl/error.hpp"

namespace bfl {

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Work with negative magnitudes so that INT128_MIN is representable.
    std::string out;
    i128 t = neg ? v : -v;
    while (t != 0) {
        int digit = -static_cast<int>(t % 10);
        out.push_back(static_cast<char>('0' + digit));
        t /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational::Rational(i128 num, i128 den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    if (den < 0) {
        num = checked_mul(num, -1);
        den = checked_mul(den, -1);
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

double Rational::to_double() const {
    // Split off the integer part so large numerators keep their precision.
    i128 q = num_ / den_;
    i128 r = num_ % den_;
    return static_cast<double>(q) +
           static_cast<double>(static_cast<long double>(r) / static_cast<long double>(den_));
}

std::string Rational::str() const {
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw ValidationError("empty rational literal");
    auto parse_int = [&](const std::string& t) -> i128 {
        if (t.empty()) throw ValidationError("malformed rational literal '" + text + "'");
        std::size_t pos = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') {
            neg = t[0] == '-';
            pos = 1;
        }
        if (pos == t.size()) throw ValidationError("malformed rational literal '" + text + "'");
        i128 v = 0;
        for (; pos < t.size(); ++pos) {
            if (!std::isdigit(static_cast<unsigned char>(t[pos])))
                throw ValidationError("malformed rational literal '" + text + "'");
            v = checked_add(checked_mul(v, 10), t[pos] - '0');
        }
        return neg ? -v : v;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_int(s));
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) throw ValidationError("malformed rational literal '" + text + "'");
    i128 scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale = checked_mul(scale, 10);
    i128 w = parse_int(whole);
    i128 f = parse_int(frac);
    if (w < 0) w = -w;
    i128 num = checked_add(checked_mul(w, scale), f);
    return Rational(neg ? -num : num, scale);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked_mul(num_, -1);
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    i128 g = gcd128(den_, o.den_);
    i128 lhs = checked_mul(num_, o.den_ / g);
    i128 rhs = checked_mul(o.num_, den_ / g);
    i128 den = checked_mul(den_ / g, o.den_);
    *this = Rational(checked_add(lhs, rhs), den);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    i128 g1 = gcd128(num_, o.den_);
    i128 g2 = gcd128(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    i128 num = checked_mul(num_ / g1, o.num_ / g2);
    i128 den = checked_mul(den_ / g2, o.den_ / g1);
    *this = Rational(num, den);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw ValidationError("rational division by zero");
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    return *this *= inv;
}

namespace {

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Compares a/b with c/d (b, d > 0) by continued-fraction expansion, which
// never forms a product and so cannot overflow.
std::strong_ordering compare_fractions(i128 a, i128 b, i128 c, i128 d) {
    bool flipped = false;
    for (;;) {
        i128 q1 = floor_div(a, b);
        i128 q2 = floor_div(c, d);
        if (q1 != q2) {
            auto r = q1 <=> q2;
            return flipped ? (0 <=> r) : r;
        }
        i128 r1 = a - q1 * b;
        i128 r2 = c - q2 * d;
        if (r1 == 0 || r2 == 0) {
            auto r = r1 <=> r2;
            return flipped ? (0 <=> r) : r;
        }
        // r1/b < r2/d  iff  b/r1 > d/r2
        i128 nb = b, nd = d;
        a = nb;
        b = r1;
        c = nd;
        d = r2;
        flipped = !flipped;
    }
}

}  // namespace

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    return compare_fractions(x.num_, x.den_, y.num_, y.den_);
}

i128 binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    i128 r = 1;
    for (int j = 1; j <= k; ++j) {
        // r * (n-k+j) / j stays integral at every step.
        i128 g = gcd128(r, j);
        r = checked_mul(r / g, static_cast<i128>(n - k + j) / (j / g));
    }
    return r;
}

i128 factorial(int n) {
    if (n < 0) throw ValidationError("factorial of negative number");
    i128 r = 1;
    for (int j = 2; j <= n; ++j) r = checked_mul(r, j);
    return r;
}

}  // namespace bfl

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace starhc {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational kept in canonical form: positive denominator,
// gcd(|num|, den) == 1, sign carried by the numerator.  The backing
// cpp_rational refuses negative denominators outright, so sign normalization
// happens before construction.
class ExactRational {
public:
    ExactRational() : v_(0) {}
    ExactRational(long long n) : v_(n) {}
    ExactRational(const BigInt& n) : v_(n) {}

    ExactRational(const BigInt& n, const BigInt& d) {
        if (d == 0) {
            throw std::invalid_argument("ExactRational: zero denominator");
        }
        if (d < 0) {
            v_ = Backend(-n, -d);
        } else {
            v_ = Backend(n, d);
        }
    }

    ExactRational(long long n, long long d) : ExactRational(BigInt(n), BigInt(d)) {}

    // Parses "num/den" or a bare integer (optional leading '-').
    static ExactRational parse(const std::string& s) {
        auto check_int = [&s](const std::string& t) {
            size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
            if (i == t.size())
                throw std::invalid_argument("ExactRational: cannot parse \"" + s + "\"");
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9')
                    throw std::invalid_argument("ExactRational: cannot parse \"" + s + "\"");
        };
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            check_int(s);
            return ExactRational(BigInt(s));
        }
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        check_int(ns);
        check_int(ds);
        return ExactRational(BigInt(ns), BigInt(ds));
    }

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return den() == 1; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    ExactRational operator-() const { return ExactRational(Backend(-v_)); }
    ExactRational& operator+=(const ExactRational& o) { v_ += o.v_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { v_ -= o.v_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { v_ *= o.v_; return *this; }
    ExactRational& operator/=(const ExactRational& o) {
        if (o.v_ == 0) throw std::invalid_argument("ExactRational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const ExactRational& a, const ExactRational& b) { return a.v_ != b.v_; }
    friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const ExactRational& a, const ExactRational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const ExactRational& a, const ExactRational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const ExactRational& a, const ExactRational& b) { return a.v_ >= b.v_; }

    ExactRational abs() const { return v_ < 0 ? -*this : *this; }

    // "num/den", or just "num" when the denominator is 1.
    std::string to_string() const { return v_.str(); }

    double to_double() const { return v_.convert_to<double>(); }

    // Exact rational equal to an IEEE double (doubles are dyadic rationals).
    static ExactRational from_double(double x);

private:
    using Backend = boost::multiprecision::cpp_rational;
    explicit ExactRational(Backend v) : v_(std::move(v)) {}
    Backend v_;
};

inline ExactRational ExactRational::from_double(double x) {
    if (x == 0.0) return ExactRational(0);
    bool neg = x < 0;
    if (neg) x = -x;
    if (!(x < 9.0e18)) {
        throw std::invalid_argument("from_double: magnitude out of supported range");
    }
    // Decompose the mantissa; 64 halvings always reach an integer for finite doubles.
    BigInt den = 1;
    while (x != static_cast<double>(static_cast<unsigned long long>(x))) {
        x *= 2.0;
        den *= 2;
        if (den > (BigInt(1) << 1200)) {
            throw std::invalid_argument("from_double: not a finite double");
        }
    }
    BigInt num = static_cast<unsigned long long>(x);
    if (neg) num = -num;
    return ExactRational(num, den);
}

}  // namespace starhc

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "starhc/rational.hpp"

namespace starhc {

// Free parameter introduced while solving a given level.  Identity (and map
// ordering) is the (level, index) pair only; `alias` is a display override so
// the conventional names of the one- and two-parameter families ("a", "b")
// survive round trips through maps.
struct ParamName {
    int level = 0;
    int index = 0;
    std::string alias;

    std::string display() const {
        if (!alias.empty()) return alias;
        return "a" + std::to_string(level) + "_" + std::to_string(index);
    }

    friend bool operator==(const ParamName& x, const ParamName& y) {
        return x.level == y.level && x.index == y.index;
    }
    friend bool operator<(const ParamName& x, const ParamName& y) {
        if (x.level != y.level) return x.level < y.level;
        return x.index < y.index;
    }
};

struct AffineClosureError : std::domain_error {
    using std::domain_error::domain_error;
};

// constant + sum of coeff * param.  Products are only defined when one factor
// is parameter-free; anything else would leave the affine ring and is refused.
class AffineExpr {
public:
    AffineExpr() = default;
    AffineExpr(ExactRational c) : constant_(std::move(c)) {}
    AffineExpr(long long c) : constant_(c) {}
    explicit AffineExpr(const ParamName& p) { coeffs_[p] = ExactRational(1); }

    static AffineExpr param(const ParamName& p, ExactRational coeff = ExactRational(1)) {
        AffineExpr e;
        if (!coeff.is_zero()) e.coeffs_[p] = std::move(coeff);
        return e;
    }

    const ExactRational& constant() const { return constant_; }
    const std::map<ParamName, ExactRational>& coeffs() const { return coeffs_; }
    bool is_constant() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }

    AffineExpr& operator+=(const AffineExpr& o) {
        constant_ += o.constant_;
        for (const auto& [p, c] : o.coeffs_) add_coeff(p, c);
        return *this;
    }
    AffineExpr& operator-=(const AffineExpr& o) {
        constant_ -= o.constant_;
        for (const auto& [p, c] : o.coeffs_) add_coeff(p, -c);
        return *this;
    }
    AffineExpr operator-() const {
        AffineExpr r;
        r.constant_ = -constant_;
        for (const auto& [p, c] : coeffs_) r.coeffs_[p] = -c;
        return r;
    }
    AffineExpr& operator*=(const ExactRational& s) {
        if (s.is_zero()) {
            constant_ = ExactRational(0);
            coeffs_.clear();
            return *this;
        }
        constant_ *= s;
        for (auto& [p, c] : coeffs_) c *= s;
        return *this;
    }

    friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
    friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
    friend AffineExpr operator*(AffineExpr a, const ExactRational& s) { return a *= s; }
    friend AffineExpr operator*(const ExactRational& s, AffineExpr a) { return a *= s; }

    friend AffineExpr operator*(const AffineExpr& a, const AffineExpr& b) {
        if (a.is_constant()) return b * a.constant_;
        if (b.is_constant()) return a * b.constant_;
        throw AffineClosureError("product of two parameter-dependent expressions: (" +
                                 a.to_string() + ") * (" + b.to_string() + ")");
    }

    friend bool operator==(const AffineExpr& a, const AffineExpr& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const AffineExpr& a, const AffineExpr& b) { return !(a == b); }
    // Arbitrary strict order so expressions can key sets/maps (dedup).
    friend bool operator<(const AffineExpr& a, const AffineExpr& b) {
        if (a.constant_ != b.constant_) return a.constant_ < b.constant_;
        auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
        for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return ia == a.coeffs_.end() && ib != b.coeffs_.end();
    }

    // Replaces each assigned parameter by its (affine) value.
    AffineExpr substitute(const std::map<ParamName, AffineExpr>& assignment) const {
        AffineExpr r(constant_);
        for (const auto& [p, c] : coeffs_) {
            auto it = assignment.find(p);
            if (it == assignment.end()) {
                r.add_coeff(p, c);
            } else {
                r += it->second * c;
            }
        }
        return r;
    }

    // Fully numeric evaluation; every parameter must be assigned.
    ExactRational evaluate(const std::map<ParamName, ExactRational>& assignment) const {
        ExactRational r = constant_;
        for (const auto& [p, c] : coeffs_) {
            auto it = assignment.find(p);
            if (it == assignment.end()) {
                throw std::invalid_argument("evaluate: unassigned parameter " + p.display());
            }
            r += c * it->second;
        }
        return r;
    }

    std::vector<ParamName> params() const {
        std::vector<ParamName> out;
        out.reserve(coeffs_.size());
        for (const auto& [p, c] : coeffs_) out.push_back(p);
        return out;
    }

    // Factored rendering over a common positive denominator, e.g. "(6a-1)/288",
    // "(1-2a)/192", "a/48", "1/576", "0".  The constant term leads unless it is
    // negative while some parameter term is positive, in which case positive
    // terms lead (matching the usual typography of these tables).
    std::string to_string() const;

private:
    void add_coeff(const ParamName& p, const ExactRational& c) {
        auto it = coeffs_.find(p);
        if (it == coeffs_.end()) {
            if (!c.is_zero()) coeffs_.emplace(p, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    ExactRational constant_;
    std::map<ParamName, ExactRational> coeffs_;
};

namespace detail {

inline BigInt gcd_big(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_big(a, b) * b;
}

}  // namespace detail

inline std::string AffineExpr::to_string() const {
    if (is_zero()) return "0";

    // Common denominator across all terms.
    BigInt den = constant_.den();
    for (const auto& [p, c] : coeffs_) den = detail::lcm_big(den, c.den());

    struct Term {
        BigInt n;          // integer numerator over `den`
        std::string name;  // empty for the constant term
    };
    std::vector<Term> terms;
    if (!constant_.is_zero()) {
        terms.push_back({constant_.num() * (den / constant_.den()), ""});
    }
    for (const auto& [p, c] : coeffs_) {
        terms.push_back({c.num() * (den / c.den()), p.display()});
    }

    // Reduce by the gcd of all integer numerators and the denominator.
    BigInt g = den;
    for (const auto& t : terms) g = detail::gcd_big(g, t.n);
    if (g > 1) {
        den /= g;
        for (auto& t : terms) t.n /= g;
    }

    // Positive-first reordering when the leading term would be negative.
    if (terms.front().n < 0) {
        bool any_pos = false;
        for (const auto& t : terms) any_pos = any_pos || t.n > 0;
        if (any_pos) {
            std::vector<Term> pos, neg;
            for (auto& t : terms) (t.n > 0 ? pos : neg).push_back(t);
            pos.insert(pos.end(), neg.begin(), neg.end());
            terms = std::move(pos);
        }
    }

    std::string num;
    for (size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        BigInt mag = t.n < 0 ? BigInt(-t.n) : t.n;
        std::string body;
        if (t.name.empty()) {
            body = mag.str();
        } else if (mag == 1) {
            body = t.name;
        } else {
            body = mag.str() + t.name;
        }
        if (i == 0) {
            num += (t.n < 0 ? "-" : "") + body;
        } else {
            num += (t.n < 0 ? "-" : "+") + body;
        }
    }
    if (terms.size() > 1) num = "(" + num + ")";
    if (den == 1) return num;
    return num + "/" + den.str();
}

}  // namespace starhc

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "starhc/rational.hpp"

namespace starhc {

// P(0_k): probability of k consecutive zeros on the line, from the recurrence
// P(0_k) = P(0_{k-1}) - p * P(0_{k-2}), P(0_0) = 1, P(0_1) = 1 - p.
template <class S>
S zeros_prob(int k, const S& p) {
    if (k < 0) throw std::invalid_argument("zeros_prob: negative length");
    S prev2(1);  // P(0_0)
    if (k == 0) return prev2;
    S prev1 = S(1) - p;  // P(0_1)
    for (int j = 2; j <= k; ++j) {
        S cur = prev1 - p * prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

// Ratios a_k = P(0_k)/P(0_{k-1}): a_1 = 1 - p, a_k = 1 - p/a_{k-1}.  Generation
// stops (truncated = true) once a term is <= 0, because the next ratio is no
// longer meaningful — the all-zero cylinder has changed sign.
template <class S>
struct ASeq {
    std::vector<S> values;  // a_1 .. a_m, m <= kmax; last entry may be <= 0
    bool truncated = false;
};

template <class S>
ASeq<S> a_seq(const S& p, int kmax) {
    if (kmax < 1) throw std::invalid_argument("a_seq: kmax must be >= 1");
    ASeq<S> out;
    out.values.reserve(static_cast<size_t>(kmax));
    out.values.push_back(S(1) - p);
    for (int k = 2; k <= kmax; ++k) {
        const S& prev = out.values.back();
        if (!(prev > S(0))) {
            out.truncated = true;
            break;
        }
        out.values.push_back(S(1) - p / prev);
    }
    return out;
}

// Limit of a_k for p <= 1/4.
inline double limit_a(double p) {
    if (p < 0.0 || p > 0.25) throw std::domain_error("limit_a: p outside [0, 1/4]");
    double t = 1.0 - 4.0 * p;
    if (t < 0.0) t = 0.0;  // guard float dust at p == 1/4
    return (1.0 + std::sqrt(t)) / 2.0;
}

// Probability of observing the 0/1 word w on a window of the line process.
// Words with adjacent ones are inadmissible and get probability zero.
template <class S>
S ray_prob(std::string_view w, const S& p) {
    for (char c : w) {
        if (c != '0' && c != '1') throw std::invalid_argument("ray_prob: word must be over {0,1}");
    }
    if (w.empty()) return S(1);
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == '1' && w[i + 1] == '1') return S(0);
    }
    size_t j = w.find('1');
    if (j == std::string_view::npos) {
        return zeros_prob<S>(static_cast<int>(w.size()), p);
    }
    if (j == 0) {
        // A leading 1 forces the next symbol to 0 and the rest splits off.
        if (w.size() <= 2) return p;
        return p * ray_prob(w.substr(2), p);
    }
    // Leading zeros before the first 1 factor out as P(0_{j-1}).
    S prefix = zeros_prob<S>(static_cast<int>(j) - 1, p);
    return prefix * ray_prob(w.substr(j), p);
}

// One observed window of a star: the center bit plus a 0/1 word along each ray
// (position 1 adjacent to the center; empty words mean the ray is unobserved).
struct StarConfig {
    int center = 0;
    std::vector<std::string> rays;

    // Syntax "c|r1,r2,...,rd", e.g. "0|01,001,0"; empty ray slots are allowed.
    static StarConfig parse(const std::string& text);
    std::string format() const;
};

inline StarConfig StarConfig::parse(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos || bar != 1 || (text[0] != '0' && text[0] != '1')) {
        throw std::invalid_argument("StarConfig: expected \"c|r1,...,rd\" with c in {0,1}");
    }
    StarConfig cfg;
    cfg.center = text[0] - '0';
    std::string rest = text.substr(2);
    std::string cur;
    for (char c : rest) {
        if (c == ',') {
            cfg.rays.push_back(cur);
            cur.clear();
        } else if (c == '0' || c == '1') {
            cur.push_back(c);
        } else {
            throw std::invalid_argument("StarConfig: ray symbols must be 0 or 1");
        }
    }
    cfg.rays.push_back(cur);
    if (cfg.rays.size() < 2) {
        throw std::invalid_argument("StarConfig: a star has at least 2 rays");
    }
    return cfg;
}

inline std::string StarConfig::format() const {
    std::string out = std::to_string(center) + "|";
    for (size_t i = 0; i < rays.size(); ++i) {
        if (i) out += ",";
        out += rays[i];
    }
    return out;
}

// The three-case cylinder formula for the star.  Negative values are returned
// as-is: above criticality they are exactly what the feasibility oracle needs.
template <class S>
S star_prob(const StarConfig& x, const S& p) {
    if (x.rays.size() < 2) throw std::invalid_argument("star_prob: arity must be >= 2");

    bool some_starts_one = false;
    for (const auto& r : x.rays) {
        if (!r.empty() && r[0] == '1') some_starts_one = true;
    }

    if (some_starts_one) {
        if (x.center == 1) return S(0);  // center adjacent to a 1
        S prod(1);
        for (const auto& r : x.rays) prod *= ray_prob<S>(r, p);
        return prod;
    }

    // All rays empty or starting with 0.
    S hat(1);
    for (const auto& r : x.rays) {
        hat *= ray_prob<S>(r.empty() ? std::string_view{} : std::string_view(r).substr(1), p);
    }
    if (x.center == 1) return p * hat;

    S prod(1);
    for (const auto& r : x.rays) prod *= ray_prob<S>(r, p);
    return prod - p * hat;
}

}  // namespace starhc

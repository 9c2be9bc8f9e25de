#include "starhc/critical.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "starhc/star.hpp"

namespace starhc {
namespace {

constexpr double kBracketLo = 1e-12;

struct BisectOut {
    double value, residual, width, lo, hi;
    bool exact = false;
};

// Bisection for a strictly decreasing f with f(lo) > 0 > f(hi); an exact
// floating-point zero at an endpoint or midpoint short-circuits with width 0.
BisectOut bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                            double tol) {
    if (f(hi) == 0.0) return {hi, 0.0, 0.0, hi, hi, true};
    if (f(lo) == 0.0) return {lo, 0.0, 0.0, lo, lo, true};
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // double resolution exhausted
        double fm = f(mid);
        if (fm == 0.0) return {mid, 0.0, 0.0, mid, mid, true};
        (fm > 0.0 ? lo : hi) = mid;
    }
    double value = 0.5 * (lo + hi);
    return {value, f(value), hi - lo, lo, hi, false};
}

// Monotone feasibility bisection: pred(lo) true, pred(hi) false; returns the
// threshold bracket.
BisectOut bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi,
                           double tol) {
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (pred(mid) ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), 0.0, hi - lo, lo, hi, false};
}

double ph_star_f(int d, double p) { return std::pow(limit_a(p), d) - p; }

BisectOut ph_star_bracket(int d, double tol) {
    if (d < 2) throw std::invalid_argument("ph_star: d must be >= 2");
    if (!(tol > 0)) throw std::invalid_argument("ph_star: tol must be positive");
    auto f = [d](double p) { return ph_star_f(d, p); };
    return bisect_decreasing(f, kBracketLo, 0.25, tol);
}

}  // namespace

CriticalResult ph_star(int d, double tol) {
    BisectOut b = ph_star_bracket(d, tol);
    return {d, b.value, b.exact ? 0.0 : ph_star_f(d, b.value), b.width, Method::bisect};
}

CriticalResult ph_finite(const std::vector<int>& rays, double tol) {
    if (rays.size() < 2) throw std::invalid_argument("ph_finite: need at least 2 rays");
    int maxn = 0;
    for (int n : rays) {
        if (n < 1) throw std::invalid_argument("ph_finite: ray lengths must be >= 1");
        maxn = std::max(maxn, n);
    }
    if (!(tol > 0)) throw std::invalid_argument("ph_finite: tol must be positive");

    auto product = [&](double p, bool* ok) {
        ASeq<double> s = a_seq<double>(p, maxn);
        if (s.truncated || static_cast<int>(s.values.size()) < maxn || s.values.back() <= 0.0) {
            *ok = false;
            return 0.0;
        }
        *ok = true;
        double prod = 1.0;
        for (int n : rays) prod *= s.values[static_cast<size_t>(n) - 1];
        return prod;
    };
    auto pred = [&](double p) {
        bool ok;
        double prod = product(p, &ok);
        return ok && p <= prod;
    };

    BisectOut b = bisect_predicate(pred, kBracketLo, 0.5, tol);
    bool ok;
    double res = product(b.value, &ok) - b.value;
    return {static_cast<int>(rays.size()), b.value, ok ? res : 0.0, b.width, Method::bisect};
}

CriticalResult p_star(int d, double tol) {
    if (d < 2) throw std::invalid_argument("p_star: d must be >= 2");
    if (d <= 3) {
        return {d, 0.25, 0.0, 0.0, Method::closed_form};
    }
    auto f = [d](double p) { return std::pow(1.0 - p, d - 1) * limit_a(p) - p; };
    BisectOut b = bisect_decreasing(f, kBracketLo, 0.25, tol);
    return {d, b.value, b.exact ? 0.0 : f(b.value), b.width, Method::bisect};
}

int min_colors_lower_bound(int d) {
    double tol = 1e-12;
    for (int attempt = 0; attempt < 6; ++attempt) {
        BisectOut b = ph_star_bracket(d, tol);
        if (b.exact) {
            // Root known exactly in doubles (d = 2 -> 1/4): ceiling of an exact
            // reciprocal.
            double inv = 1.0 / b.value;
            return static_cast<int>(std::ceil(inv));
        }
        // Root in (lo, hi) with f(lo) > 0 > f(hi), so 1/root in (1/hi, 1/lo).
        double ceil_lo = std::ceil(1.0 / b.hi);
        double ceil_hi = std::ceil(1.0 / b.lo);
        if (ceil_lo == ceil_hi) return static_cast<int>(ceil_lo);
        tol *= 1e-2;  // ceiling ambiguous across the bracket: tighten
    }
    throw std::runtime_error("min_colors_lower_bound: could not certify the ceiling");
}

std::string round3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::vector<TableRow> emit_table(int which, int dmax, double tol) {
    if (which != 1 && which != 2) throw std::invalid_argument("emit_table: which must be 1 or 2");
    if (dmax < 2) throw std::invalid_argument("emit_table: dmax must be >= 2");
    std::vector<TableRow> rows;
    rows.reserve(static_cast<size_t>(dmax) - 1);
    for (int d = 2; d <= dmax; ++d) {
        CriticalResult r = which == 1 ? ph_star(d, tol) : p_star(d, tol);
        rows.push_back({d, r.value, round3(r.value)});
    }
    return rows;
}

}  // namespace starhc

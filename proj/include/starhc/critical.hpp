#pragma once

#include <string>
#include <vector>

namespace starhc {

enum class Method { bisect, closed_form };

struct CriticalResult {
    int d = 0;
    double value = 0.0;
    double residual = 0.0;       // defining equation evaluated at `value`
    double bracket_width = 0.0;  // 0 when the root was hit exactly
    Method method = Method::bisect;
};

// Root of ((1 + sqrt(1-4p))/2)^d = p on (0, 1/4].
CriticalResult ph_star(int d, double tol = 1e-12);

// sup{ p : a_k(p) > 0 for k <= max(n), and p <= prod_i a_{n_i}(p) }.
CriticalResult ph_finite(const std::vector<int>& rays, double tol = 1e-12);

// d in {2,3}: exactly 1/4.  d >= 4: root of (1-p)^{d-1} (1+sqrt(1-4p))/2 = p.
CriticalResult p_star(int d, double tol = 1e-12);

// Smallest integer q with q >= 1/ph_star(d), certified against the final
// bisection bracket (tolerance is tightened if the ceiling is ambiguous).
int min_colors_lower_bound(int d);

struct TableRow {
    int d;
    double value;
    std::string rounded;  // three decimals, half-to-even
};

// which = 1: ph_star rows; which = 2: p_star rows; d = 2..dmax.
std::vector<TableRow> emit_table(int which, int dmax, double tol = 1e-12);

// Three-decimal half-even rendering, e.g. 0.25 -> "0.250".
std::string round3(double v);

}  // namespace starhc

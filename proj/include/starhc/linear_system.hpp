#pragma once

#include <string>
#include <utility>
#include <vector>

#include "starhc/affine.hpp"

namespace starhc {

// Rational-coefficient rows with affine right-hand sides.  Row i encodes
//   sum_j coeffs[j] * unknown_j = rhs.
struct LinearSystem {
    std::vector<std::string> labels;  // one per unknown, display only
    std::vector<std::pair<std::vector<ExactRational>, AffineExpr>> rows;

    size_t unknown_count() const { return labels.size(); }
    void add_row(std::vector<ExactRational> coeffs, AffineExpr rhs) {
        rows.emplace_back(std::move(coeffs), std::move(rhs));
    }
};

struct InfeasibleSystemError : std::runtime_error {
    AffineExpr residual;
    explicit InfeasibleSystemError(AffineExpr r)
        : std::runtime_error("inconsistent linear system: 0 = " + r.to_string()),
          residual(std::move(r)) {}
};

struct LevelSolutionRaw {
    std::vector<AffineExpr> solution;   // per unknown, same order as labels
    std::vector<ParamName> new_params;  // one per free column, at new_param_level
};

// Exact Gauss–Jordan elimination.  Pivots: leftmost unresolved column, first
// row with a nonzero entry (deterministic, so the free-parameter basis is
// reproducible).  Free columns become fresh parameters at `new_param_level`.
// Rows reducing to 0 = nonzero throw InfeasibleSystemError with the residual.
LevelSolutionRaw solve_affine_system(const LinearSystem& sys, int new_param_level);

}  // namespace starhc

#include "starhc/linear_system.hpp"

namespace starhc {

LevelSolutionRaw solve_affine_system(const LinearSystem& sys, int new_param_level) {
    const size_t n = sys.unknown_count();
    // Working copies; elimination mutates both the matrix and the RHS column.
    std::vector<std::vector<ExactRational>> a;
    std::vector<AffineExpr> rhs;
    a.reserve(sys.rows.size());
    rhs.reserve(sys.rows.size());
    for (const auto& [coeffs, r] : sys.rows) {
        if (coeffs.size() != n) {
            throw std::invalid_argument("solve_affine_system: row width mismatch");
        }
        a.push_back(coeffs);
        rhs.push_back(r);
    }
    const size_t m = a.size();

    std::vector<long long> pivot_row_of_col(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        // First row at or below `row` with a nonzero entry in this column.
        size_t pr = row;
        while (pr < m && a[pr][col].is_zero()) ++pr;
        if (pr == m) continue;  // free column
        std::swap(a[row], a[pr]);
        std::swap(rhs[row], rhs[pr]);

        const ExactRational inv = ExactRational(1) / a[row][col];
        for (size_t j = col; j < n; ++j) a[row][j] *= inv;
        rhs[row] *= inv;

        for (size_t r = 0; r < m; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            const ExactRational f = a[r][col];
            for (size_t j = col; j < n; ++j) a[r][j] -= f * a[row][j];
            rhs[r] -= rhs[row] * f;
        }
        pivot_row_of_col[col] = static_cast<long long>(row);
        ++row;
    }

    // Any remaining all-zero coefficient row must have a zero RHS.
    for (size_t r = row; r < m; ++r) {
        if (!rhs[r].is_zero()) {
            throw InfeasibleSystemError(rhs[r]);
        }
    }

    LevelSolutionRaw out;
    out.solution.assign(n, AffineExpr{});

    // Free columns first: each becomes a fresh parameter.
    std::vector<AffineExpr> free_expr(n);
    int next_index = 0;
    for (size_t col = 0; col < n; ++col) {
        if (pivot_row_of_col[col] < 0) {
            ParamName p{new_param_level, next_index++, ""};
            out.new_params.push_back(p);
            free_expr[col] = AffineExpr::param(p);
            out.solution[col] = free_expr[col];
        }
    }
    // Pivot columns: after Gauss–Jordan the pivot row reads
    //   unknown_col + sum_{free f} a[r][f] * unknown_f = rhs[r].
    for (size_t col = 0; col < n; ++col) {
        long long r = pivot_row_of_col[col];
        if (r < 0) continue;
        AffineExpr val = rhs[r];
        for (size_t f = 0; f < n; ++f) {
            if (f == col || pivot_row_of_col[f] >= 0 || a[r][f].is_zero()) continue;
            val -= free_expr[f] * a[r][f];
        }
        out.solution[col] = std::move(val);
    }
    return out;
}

}  // namespace starhc

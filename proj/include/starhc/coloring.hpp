#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starhc/affine.hpp"
#include "starhc/linear_system.hpp"

namespace starhc {

// A level (word length) whose constraints cannot be expressed in the affine
// ring, or that exceeds an enumeration cap.
struct UnsupportedLevelError : std::runtime_error {
    int level;
    UnsupportedLevelError(int k, const std::string& what)
        : std::runtime_error(what), level(k) {}
};

// Canonical representative of a proper coloring word under color permutation
// and reflection: relabel colors by first appearance ("pattern form"), same
// for the reversal, take the lexicographic minimum.  Throws on improper words.
std::string canonicalize(const std::string& w);

// Number of equivalence classes of proper q-color words of length k, by
// exhaustive enumeration (guarded by word_cap; jobs > 1 splits the DFS).
long long count_classes(int q, int k, int jobs = 1, long long word_cap = 1'500'000);

// Exact closed form for the q = 4 class counts 1,1,2,4,10,25,70,196,574,1681...
// evaluated in Z[sqrt(3)]; always equals count_classes(4, k).
long long l4k_formula(int k);

struct LevelSolution {
    int level = 0;
    std::vector<std::string> classes;  // canonical reps, lexicographic order
    std::vector<AffineExpr> probs;     // parallel to `classes`
    std::vector<ParamName> new_params;
    size_t equation_count = 0;      // deduplicated rows
    size_t raw_equation_count = 0;  // word-level instances before dedup

    const AffineExpr& prob_of(const std::string& rep) const;
};

using SolvedLevels = std::map<int, LevelSolution>;

struct GeneratedSystem {
    LinearSystem sys;
    std::vector<std::string> classes;
    size_t raw_count = 0;
};

// Equation families over the level-k classes, deduplicated after rewriting
// words to classes:
//  (a) 1-dependence at each internal position: summing out the middle value
//      factorizes across the split, with the right side a product of solved
//      lower-level class probabilities;
//  (b) consistency: appending one admissible symbol and summing recovers the
//      length-(k-1) probability.
GeneratedSystem generate_equations(int q, int k, const SolvedLevels& solved);

// Exact solve of the level-k system; free columns become level-k parameters.
// For q = 4: level 4's parameter is re-expressed so that P(1212) = a/48 (the
// customary normalization of the one-parameter family), and level 6's new
// parameter is displayed "b".
LevelSolution solve_level(int q, int k, const SolvedLevels& solved);

// Levels 1..kmax (level 1 is the exchangeability anchor P(single) = 1/q).
SolvedLevels solve_up_to(int q, int kmax);

struct FeasibilityRegion {
    std::vector<AffineExpr> inequalities;  // each required >= 0, deduplicated
    std::vector<ParamName> params;         // in order of introduction

    // Exact interval for the first parameter: the full answer when there is at
    // most one parameter, the projection (eliminating later parameters) when
    // there are two.  Absent when 3+ parameters.
    bool has_interval = false;
    bool has_lo = false, has_hi = false;
    ExactRational lo, hi;

    int verdict = 1;  // 1 nonempty, 0 empty, -1 undetermined (3+ parameters)
    std::map<ParamName, ExactRational> sample;  // a feasible point when known
};

// Non-negativity of every class probability at every solved level.
FeasibilityRegion feasibility(const SolvedLevels& solved);

struct Star3Verdict {
    ExactRational alpha_bound;      // the branching inequality forces a <= this
    ExactRational path_lo, path_hi; // line non-negativity interval for a
    bool contradiction = false;
};

// The degree-3 branching argument: combining the solved line probabilities
// P(123), P(12132), P(12), P(1234) forces a <= 1/8, incompatible with the
// line interval [1/6, 5/12].
Star3Verdict star3_obstruction();

struct ProbeRow {
    int k = 0;
    ExactRational min_value;
    std::string argmin;  // lexicographically first class attaining the minimum
    bool all_nonneg = false;
};

// Substitutes a parameter assignment and reports the per-level minimum class
// probability.  Every parameter reachable by level kmax must be assigned.
std::vector<ProbeRow> probe_alpha(int q, int kmax,
                                  const std::map<ParamName, ExactRational>& assignment);

}  // namespace starhc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "starhc/rational.hpp"
#include "starhc/star.hpp"

namespace starhc {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite star: d >= 2 rays of non-negative lengths (0 = unobserved ray).
struct StarShape {
    std::vector<int> lengths;

    int arity() const { return static_cast<int>(lengths.size()); }
    int vertex_count() const;
    void validate(int cap = 14) const;

    // Vertex order: center first, then each ray outward.  Builds the config
    // for one assignment bitmask in that order.
    StarConfig config_of(uint32_t mask) const;
};

// star_prob for every configuration, indexed by bitmask.
template <class S>
std::vector<S> enumerate_probs(const StarShape& shape, const S& p);

template <class S>
struct OneDepReport {
    bool ok = true;
    S max_violation;              // largest |joint - product| over all pairs
    uint32_t worst_a = 0, worst_b = 0;  // vertex masks of the worst pair
    uint64_t pairs = 0;           // distance->=2 subset pairs examined
    uint64_t comparisons = 0;     // assignment-level equality checks
};

// Exhaustive check that every pair of disjoint vertex subsets at graph
// distance >= 2 factorizes exactly.  Heavier than enumerate_probs (the work is
// roughly 5^n), so the cap is tighter.
template <class S>
OneDepReport<S> check_one_dependence(const StarShape& shape, const S& p, int cap = 12);

// Bisection on exact non-negativity of every cylinder of the shape and its
// sub-shapes (every truncation of the rays, both center values).  Midpoints
// are dyadic rationals, so the predicate is decided exactly; only the final
// bracket width is approximate.
double ph_oracle(const StarShape& shape, double tol = 1e-9);

// The predicate behind ph_oracle, exposed for tests.
bool oracle_feasible(const StarShape& shape, const ExactRational& p);

}  // namespace starhc

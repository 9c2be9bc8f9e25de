#include "doctest.h"
#include "starhc/oracle.hpp"

#include <cmath>

#include "starhc/critical.hpp"

using starhc::check_one_dependence;
using starhc::enumerate_probs;
using starhc::ExactRational;
using starhc::oracle_feasible;
using starhc::ph_finite;
using starhc::ph_oracle;
using starhc::ResourceError;
using starhc::StarShape;

namespace {
ExactRational q(long long n, long long d = 1) { return ExactRational(n, d); }

StarShape shape(std::vector<int> lengths) {
    StarShape s;
    s.lengths = std::move(lengths);
    return s;
}
}  // namespace

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(shape({3}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(shape({2, -1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(shape({8, 8}).validate(), ResourceError);
    CHECK(shape({2, 2}).vertex_count() == 5);
    CHECK(shape({0, 0}).vertex_count() == 1);
}

TEST_CASE("config_of lays out center then rays") {
    StarShape s = shape({2, 1});
    auto cfg = s.config_of(0b1011);
    CHECK(cfg.center == 1);
    CHECK(cfg.rays[0] == "10");
    CHECK(cfg.rays[1] == "1");
}

TEST_CASE("full tables normalize exactly") {
    for (auto p : {q(1, 10), q(1, 5), q(23, 100)}) {
        for (auto s : {shape({1, 1}), shape({2, 2}), shape({3, 2, 1}), shape({2, 2, 2})}) {
            auto probs = enumerate_probs<ExactRational>(s, p);
            ExactRational sum(0);
            for (const auto& v : probs) sum += v;
            CHECK(sum == q(1));
        }
    }
}

TEST_CASE("single-vertex marginals equal p exactly") {
    for (auto p : {q(1, 10), q(1, 5), q(23, 100)}) {
        StarShape s = shape({2, 2});
        auto probs = enumerate_probs<ExactRational>(s, p);
        int n = s.vertex_count();
        for (int v = 0; v < n; ++v) {
            ExactRational sum(0);
            for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
                if (mask >> v & 1u) sum += probs[mask];
            }
            CHECK(sum == p);
        }
    }
}

TEST_CASE("adjacent ones are excluded exactly") {
    StarShape s = shape({2, 1});
    ExactRational p(1, 5);
    auto probs = enumerate_probs<ExactRational>(s, p);
    // Adjacent pairs in mask order: center(0)-ray1a(1), ray1a(1)-ray1b(2),
    // center(0)-ray2(3).
    for (uint32_t mask = 0; mask < probs.size(); ++mask) {
        bool adjacent_ones = ((mask & 0b0011) == 0b0011) || ((mask & 0b0110) == 0b0110) ||
                             ((mask & 0b1001) == 0b1001);
        if (adjacent_ones) CHECK(probs[mask] == q(0));
    }
}

TEST_CASE("one-dependence holds exactly below criticality") {
    for (auto p : {q(1, 10), q(1, 5), q(23, 100)}) {
        for (auto s : {shape({2, 2}), shape({1, 1, 1}), shape({3, 2, 1})}) {
            auto rep = check_one_dependence<ExactRational>(s, p);
            CHECK(rep.ok);
            CHECK(rep.max_violation == q(0));
            CHECK(rep.pairs > 0);
        }
    }
    auto rep = check_one_dependence<ExactRational>(shape({2, 2, 2}), q(1, 5));
    CHECK(rep.ok);
}

TEST_CASE("one-dependence in doubles is at rounding level") {
    auto rep = check_one_dependence<double>(shape({2, 2, 2, 2}), 0.2);
    CHECK(rep.max_violation < 1e-14);
}

TEST_CASE("one-dependence cap") {
    CHECK_THROWS_AS(check_one_dependence<double>(shape({6, 6}), 0.1), ResourceError);
}

TEST_CASE("oracle feasibility flips at the finite critical point") {
    StarShape s = shape({2, 2});
    double crit = ph_finite({2, 2}).value;  // 0.30797852836990413
    CHECK(oracle_feasible(s, ExactRational::from_double(crit - 1e-6)));
    CHECK_FALSE(oracle_feasible(s, ExactRational::from_double(crit + 1e-6)));
}

TEST_CASE("oracle agrees with the recurrence solver on every small shape") {
    // All arities 2..4, ray lengths 1..3, at most 9 vertices, up to symmetry.
    std::vector<std::vector<int>> shapes;
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b) shapes.push_back({a, b});
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b)
            for (int c = b; c <= 3; ++c)
                if (1 + a + b + c <= 9) shapes.push_back({a, b, c});
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b)
            for (int c = b; c <= 3; ++c)
                for (int d = c; d <= 3; ++d)
                    if (1 + a + b + c + d <= 9) shapes.push_back({a, b, c, d});
    CHECK(shapes.size() == 24);

    for (const auto& rays : shapes) {
        double fin = ph_finite(rays).value;
        double orc = ph_oracle(shape(rays));
        CHECK(std::abs(fin - orc) < 1e-8);
    }
}

TEST_CASE("long asymmetric star: the oracle sees the product constraint") {
    double fin = ph_finite({11, 1}).value;
    double orc = ph_oracle(shape({11, 1}));
    CHECK(std::abs(fin - orc) < 1e-8);
    CHECK(std::abs(orc - 0.26129507297724548) < 2e-9);
}

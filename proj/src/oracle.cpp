#include "starhc/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace starhc {

int StarShape::vertex_count() const {
    int n = 1;
    for (int len : lengths) n += len;
    return n;
}

void StarShape::validate(int cap) const {
    if (lengths.size() < 2)
        throw std::invalid_argument("star shape needs at least 2 rays");
    for (int len : lengths)
        if (len < 0) throw std::invalid_argument("ray length must be >= 0");
    if (vertex_count() > cap)
        throw ResourceError("star has " + std::to_string(vertex_count()) +
                            " vertices, cap is " + std::to_string(cap));
}

StarConfig StarShape::config_of(uint32_t mask) const {
    StarConfig cfg;
    cfg.center = static_cast<int>(mask & 1u);
    int bit = 1;
    for (int len : lengths) {
        std::string w(static_cast<size_t>(len), '0');
        for (int j = 0; j < len; ++j, ++bit)
            if (mask >> bit & 1u) w[static_cast<size_t>(j)] = '1';
        cfg.rays.push_back(std::move(w));
    }
    return cfg;
}

template <class S>
std::vector<S> enumerate_probs(const StarShape& shape, const S& p) {
    shape.validate(14);
    int n = shape.vertex_count();
    std::vector<S> out;
    out.reserve(size_t{1} << n);
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask)
        out.push_back(star_prob<S>(shape.config_of(mask), p));
    return out;
}

namespace {

// Positions of set bits of `sub` relative to the bit order of `super`.
// Used to expand a compressed assignment index back into a larger subset.
int bit_rank(uint32_t super, int v) {
    return __builtin_popcount(super & ((uint32_t{1} << v) - 1));
}

template <class S>
S abs_of(const S& x) {
    return x < S(0) ? -x : x;
}

}  // namespace

template <class S>
OneDepReport<S> check_one_dependence(const StarShape& shape, const S& p, int cap) {
    shape.validate(cap);
    int n = shape.vertex_count();
    uint32_t full = (uint32_t{1} << n) - 1;

    // Adjacency masks of the star.
    std::vector<uint32_t> adj(static_cast<size_t>(n), 0);
    {
        int bit = 1;
        for (int len : shape.lengths) {
            for (int j = 0; j < len; ++j, ++bit) {
                int prev = (j == 0) ? 0 : bit - 1;
                adj[static_cast<size_t>(bit)] |= uint32_t{1} << prev;
                adj[static_cast<size_t>(prev)] |= uint32_t{1} << bit;
            }
        }
    }

    // marg[S] = joint law of the vertices in S, indexed by compressed
    // assignment.  Filled from the full table by summing out the lowest
    // missing vertex; S + missing bit > S, so a descending loop suffices.
    std::vector<std::vector<S>> marg(size_t{1} << n);
    marg[full].reserve(size_t{1} << n);
    for (uint32_t a = 0; a <= full; ++a)
        marg[full].push_back(star_prob<S>(shape.config_of(a), p));
    for (uint32_t sub = full; sub-- > 0;) {
        int v = __builtin_ctz(~sub);
        uint32_t sup = sub | (uint32_t{1} << v);
        int pos = bit_rank(sup, v);
        uint32_t lowmask = (uint32_t{1} << pos) - 1;
        int bits = __builtin_popcount(sub);
        auto& dst = marg[sub];
        dst.resize(size_t{1} << bits);
        const auto& src = marg[sup];
        for (uint32_t idx = 0; idx < (uint32_t{1} << bits); ++idx) {
            uint32_t lifted = (idx & lowmask) | ((idx & ~lowmask) << 1);
            dst[idx] = src[lifted] + src[lifted | (uint32_t{1} << pos)];
        }
    }

    OneDepReport<S> rep;
    rep.max_violation = S(0);
    for (uint32_t a = 1; a <= full; ++a) {
        uint32_t hull = a;
        for (uint32_t rest = a; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            hull |= adj[static_cast<size_t>(v)];
        }
        uint32_t comp = full & ~hull;
        // Submasks of comp, unordered pairs via b > a.
        for (uint32_t b = comp; b; b = (b - 1) & comp) {
            if (b <= a) continue;
            ++rep.pairs;
            uint32_t u = a | b;
            int ub = __builtin_popcount(u);
            const auto& ju = marg[u];
            const auto& ma = marg[a];
            const auto& mb = marg[b];
            for (uint32_t idx = 0; idx < (uint32_t{1} << ub); ++idx) {
                // Split the compressed index over u into indices over a and b.
                uint32_t ia = 0, ib = 0;
                int pa = 0, pb = 0, pu = 0;
                for (uint32_t rest = u; rest; ++pu) {
                    int v = __builtin_ctz(rest);
                    rest &= rest - 1;
                    uint32_t bitval = idx >> pu & 1u;
                    if (a >> v & 1u)
                        ia |= bitval << pa++;
                    else
                        ib |= bitval << pb++;
                }
                S diff = ju[idx] - ma[ia] * mb[ib];
                ++rep.comparisons;
                S mag = abs_of(diff);
                if (mag > rep.max_violation) {
                    rep.max_violation = mag;
                    rep.worst_a = a;
                    rep.worst_b = b;
                }
            }
        }
    }
    rep.ok = !(rep.max_violation > S(0));
    return rep;
}

bool oracle_feasible(const StarShape& shape, const ExactRational& p) {
    // Every cylinder of every truncation: ray i carries any word of length
    // 0..n_i, center is free.  Truncation cylinders are not implied by the
    // full table a priori, so they are enumerated outright.
    StarConfig cfg;
    cfg.rays.resize(shape.lengths.size());

    // Depth-first over rays; at the leaves test both center values.
    auto rec = [&](auto&& self, size_t ray) -> bool {
        if (ray == shape.lengths.size()) {
            cfg.center = 0;
            if (star_prob<ExactRational>(cfg, p) < ExactRational(0)) return false;
            cfg.center = 1;
            return !(star_prob<ExactRational>(cfg, p) < ExactRational(0));
        }
        int limit = shape.lengths[ray];
        for (int len = 0; len <= limit; ++len) {
            for (uint32_t m = 0; m < (uint32_t{1} << len); ++m) {
                std::string w(static_cast<size_t>(len), '0');
                for (int j = 0; j < len; ++j)
                    if (m >> j & 1u) w[static_cast<size_t>(j)] = '1';
                cfg.rays[ray] = std::move(w);
                if (!self(self, ray + 1)) return false;
            }
        }
        return true;
    };
    return rec(rec, 0);
}

double ph_oracle(const StarShape& shape, double tol) {
    shape.validate(14);
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    ExactRational lo(0), hi(1, 2);
    ExactRational width = hi - lo;
    ExactRational goal = ExactRational::from_double(tol);
    while (width > goal) {
        ExactRational mid = (lo + hi) / ExactRational(2);
        if (oracle_feasible(shape, mid))
            lo = mid;
        else
            hi = mid;
        width = hi - lo;
    }
    return ((lo + hi) / ExactRational(2)).to_double();
}

template std::vector<double> enumerate_probs<double>(const StarShape&, const double&);
template std::vector<ExactRational> enumerate_probs<ExactRational>(const StarShape&,
                                                                   const ExactRational&);
template OneDepReport<double> check_one_dependence<double>(const StarShape&, const double&, int);
template OneDepReport<ExactRational> check_one_dependence<ExactRational>(const StarShape&,
                                                                         const ExactRational&, int);

}  // namespace starhc

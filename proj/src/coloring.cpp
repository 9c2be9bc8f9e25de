#include "starhc/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace starhc {
namespace {

void check_proper(const std::string& w) {
    if (w.empty()) throw std::invalid_argument("coloring: empty word");
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] < '1' || w[i] > '9') {
            throw std::invalid_argument("coloring: symbols must be digits 1..9");
        }
        if (i > 0 && w[i] == w[i - 1]) {
            throw std::invalid_argument("coloring: improper word (equal adjacent colors)");
        }
    }
}

// Relabels colors by order of first appearance: 21312 -> 12132.
std::string pattern_form(const std::string& w) {
    char map[10] = {};
    char next = '1';
    std::string out(w.size(), '0');
    for (size_t i = 0; i < w.size(); ++i) {
        int c = w[i] - '0';
        if (map[c] == 0) map[c] = next++;
        out[i] = map[c];
    }
    return out;
}

// DFS over proper words of length k with w[0..pos-1] fixed, invoking fn(w).
template <class Fn>
void for_each_proper(int q, int k, std::string& w, int pos, Fn&& fn) {
    if (pos == k) {
        fn(w);
        return;
    }
    for (char c = '1'; c < '1' + q; ++c) {
        if (pos > 0 && w[pos - 1] == c) continue;
        w[pos] = c;
        for_each_proper(q, k, w, pos + 1, fn);
    }
}

long long proper_word_count(int q, int k) {
    long long n = q;
    for (int i = 1; i < k; ++i) {
        n *= (q - 1);
        if (n > (1LL << 62) / q) return 1LL << 62;  // saturate
    }
    return n;
}

}  // namespace

std::string canonicalize(const std::string& w) {
    check_proper(w);
    std::string fwd = pattern_form(w);
    std::string rev(w.rbegin(), w.rend());
    rev = pattern_form(rev);
    return std::min(fwd, rev);
}

long long count_classes(int q, int k, int jobs, long long word_cap) {
    if (q < 2 || q > 9) throw std::invalid_argument("count_classes: q must be in 2..9");
    if (k < 1) throw std::invalid_argument("count_classes: k must be >= 1");
    if (proper_word_count(q, k) > word_cap) {
        throw UnsupportedLevelError(
            k, "count_classes: enumeration cap exceeded (" + std::to_string(q) + "^" +
                   std::to_string(k) + "-scale word space; raise word_cap to force)");
    }
    if (k == 1) return 1;

    // Canonical representatives are exactly the fixed points of canonicalize,
    // so counting them over any partition of the word space is safe to split.
    auto count_with_prefix = [&](char c0, char c1) {
        long long cnt = 0;
        std::string w(static_cast<size_t>(k), '0');
        w[0] = c0;
        w[1] = c1;
        for_each_proper(q, k, w, 2, [&](const std::string& word) {
            if (canonicalize(word) == word) ++cnt;
        });
        return cnt;
    };

    std::vector<std::pair<char, char>> prefixes;
    for (char a = '1'; a < '1' + q; ++a) {
        for (char b = '1'; b < '1' + q; ++b) {
            if (a != b) prefixes.emplace_back(a, b);
        }
    }

    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(prefixes.size())));
    if (jobs == 1) {
        long long total = 0;
        for (auto [a, b] : prefixes) total += count_with_prefix(a, b);
        return total;
    }

    std::atomic<size_t> next{0};
    std::vector<long long> partial(static_cast<size_t>(jobs), 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            for (size_t i = next.fetch_add(1); i < prefixes.size(); i = next.fetch_add(1)) {
                partial[static_cast<size_t>(t)] +=
                    count_with_prefix(prefixes[i].first, prefixes[i].second);
            }
        });
    }
    for (auto& th : pool) th.join();
    long long total = 0;
    for (long long c : partial) total += c;
    return total;
}

long long l4k_formula(int k) {
    if (k < 1) throw std::invalid_argument("l4k_formula: k must be >= 1");
    if (k <= 2) return 1;
    // Values follow A001998: L(k) = (1 + 3^{m-1} + 3^{(m-2)/2}(2+sqrt(3) -
    // (-1)^{m-1}(2-sqrt(3))))/4 evaluated at m = k-1, worked in Z[sqrt(3)]
    // as pairs (x, y) = x + y*sqrt(3).
    const int m = k - 1;
    BigInt pow3m1 = 1;  // 3^{m-1}
    for (int i = 0; i < m - 1; ++i) pow3m1 *= 3;

    // 3^{(m-2)/2}: integer power for even m, extra factor sqrt(3) for odd m.
    BigInt half_x = 1, half_y = 0;
    int e = m - 2;
    if (e % 2 == 0) {
        for (int i = 0; i < e / 2; ++i) half_x *= 3;
    } else {
        half_y = 1;
        for (int i = 0; i < (e - 1) / 2; ++i) half_y *= 3;
        half_x = 0;
    }

    // 2 + sqrt(3) - (-1)^{m-1} (2 - sqrt(3))
    bool m_minus_1_even = ((m - 1) % 2) == 0;
    BigInt bx = m_minus_1_even ? BigInt(0) : BigInt(4);
    BigInt by = m_minus_1_even ? BigInt(2) : BigInt(0);

    // (half_x + half_y sqrt3)(bx + by sqrt3) = (hx bx + 3 hy by) + (hx by + hy bx) sqrt3
    BigInt px = half_x * bx + 3 * half_y * by;
    BigInt py = half_x * by + half_y * bx;

    BigInt total_x = 1 + pow3m1 + px;
    if (py != 0) throw std::logic_error("l4k_formula: sqrt(3) part did not cancel");
    if (total_x % 4 != 0) throw std::logic_error("l4k_formula: result not divisible by 4");
    return (total_x / 4).convert_to<long long>();
}

const AffineExpr& LevelSolution::prob_of(const std::string& rep) const {
    auto it = std::lower_bound(classes.begin(), classes.end(), rep);
    if (it == classes.end() || *it != rep) {
        throw std::invalid_argument("LevelSolution: unknown class " + rep);
    }
    return probs[static_cast<size_t>(it - classes.begin())];
}

namespace {

std::vector<std::string> enumerate_classes(int q, int k) {
    std::set<std::string> reps;
    std::string w(static_cast<size_t>(k), '0');
    for_each_proper(q, k, w, 0, [&](const std::string& word) {
        std::string c = canonicalize(word);
        if (c == word) reps.insert(c);
    });
    return {reps.begin(), reps.end()};
}

struct RowCmp {
    bool operator()(const std::pair<std::vector<ExactRational>, AffineExpr>& a,
                    const std::pair<std::vector<ExactRational>, AffineExpr>& b) const {
        if (a.first != b.first) {
            return std::lexicographical_compare(a.first.begin(), a.first.end(),
                                                b.first.begin(), b.first.end());
        }
        return a.second < b.second;
    }
};

}  // namespace

GeneratedSystem generate_equations(int q, int k, const SolvedLevels& solved) {
    if (k < 2) throw std::invalid_argument("generate_equations: k must be >= 2");
    for (int j = 1; j < k; ++j) {
        if (!solved.count(j)) {
            throw std::invalid_argument("generate_equations: level " + std::to_string(j) +
                                        " not solved yet");
        }
    }
    if (proper_word_count(q, k) > 1'500'000) {
        throw UnsupportedLevelError(k, "generate_equations: word enumeration cap exceeded");
    }

    GeneratedSystem out;
    out.classes = enumerate_classes(q, k);
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < out.classes.size(); ++i) index[out.classes[i]] = i;
    const size_t n = out.classes.size();

    std::set<std::pair<std::vector<ExactRational>, AffineExpr>, RowCmp> rows;
    size_t raw = 0;

    auto class_prob = [&](const std::string& word) -> const AffineExpr& {
        std::string rep = canonicalize(word);
        return solved.at(static_cast<int>(word.size())).prob_of(rep);
    };

    // (a) 1-dependence at internal positions of length-k words.  AffineExpr
    // products throw past the affine closure; name the offending split.
    std::string w(static_cast<size_t>(k), '0');
    for_each_proper(q, k, w, 0, [&](const std::string& word) {
        for (int i = 1; i + 1 < k; ++i) {
            std::vector<ExactRational> coeffs(n, ExactRational(0));
            std::string variant = word;
            for (char c = '1'; c < '1' + q; ++c) {
                if (c == word[static_cast<size_t>(i) - 1] ||
                    c == word[static_cast<size_t>(i) + 1]) {
                    continue;
                }
                variant[static_cast<size_t>(i)] = c;
                coeffs[index.at(canonicalize(variant))] += ExactRational(1);
            }
            std::string left = word.substr(0, static_cast<size_t>(i));
            std::string right = word.substr(static_cast<size_t>(i) + 1);
            AffineExpr rhs;
            try {
                rhs = class_prob(left) * class_prob(right);
            } catch (const AffineClosureError&) {
                throw UnsupportedLevelError(
                    k, "level " + std::to_string(k) + ": the (" + std::to_string(left.size()) +
                           "," + std::to_string(right.size()) +
                           ") split at position " + std::to_string(i + 1) +
                           " multiplies two parameter-dependent probabilities");
            }
            ++raw;
            rows.insert({std::move(coeffs), std::move(rhs)});
        }
    });

    // (b) consistency: extend each length-(k-1) word by one admissible symbol.
    std::string u(static_cast<size_t>(k) - 1, '0');
    for_each_proper(q, k - 1, u, 0, [&](const std::string& base) {
        std::vector<ExactRational> coeffs(n, ExactRational(0));
        std::string ext = base + "0";
        for (char c = '1'; c < '1' + q; ++c) {
            if (c == base.back()) continue;
            ext.back() = c;
            coeffs[index.at(canonicalize(ext))] += ExactRational(1);
        }
        ++raw;
        rows.insert({std::move(coeffs), class_prob(base)});
    });

    out.raw_count = raw;
    out.sys.labels = out.classes;
    for (const auto& r : rows) out.sys.add_row(r.first, r.second);
    return out;
}

LevelSolution solve_level(int q, int k, const SolvedLevels& solved) {
    GeneratedSystem gen = generate_equations(q, k, solved);
    LevelSolutionRaw raw = solve_affine_system(gen.sys, k);

    LevelSolution out;
    out.level = k;
    out.classes = gen.classes;
    out.probs = std::move(raw.solution);
    out.new_params = std::move(raw.new_params);
    out.equation_count = gen.sys.rows.size();
    out.raw_equation_count = gen.raw_count;

    if (q == 4 && k == 4 && out.new_params.size() == 1) {
        // Re-express the free parameter so that P(1212) = a/48, the customary
        // normalization of the one-parameter family at this level.
        const ParamName raw_param = out.new_params[0];
        const AffineExpr& p1212 = out.prob_of("1212");
        auto it = p1212.coeffs().find(raw_param);
        if (it == p1212.coeffs().end()) {
            throw std::logic_error("level 4: P(1212) does not involve the free parameter");
        }
        // a := 48*P(1212) = 48*c + 48*t*coeff  =>  t = (a - 48c) / (48*coeff)
        ParamName alpha{4, 0, "a"};
        ExactRational scale = ExactRational(1) / (ExactRational(48) * it->second);
        AffineExpr t_of_alpha =
            (AffineExpr::param(alpha) - AffineExpr(ExactRational(48) * p1212.constant())) * scale;
        std::map<ParamName, AffineExpr> sub{{raw_param, t_of_alpha}};
        for (auto& e : out.probs) e = e.substitute(sub);
        out.new_params = {alpha};
        if (out.prob_of("1212") != AffineExpr::param(alpha, ExactRational(1, 48))) {
            throw std::logic_error("level 4: alpha normalization failed");
        }
    } else if (q == 4 && k == 6 && out.new_params.size() == 1) {
        // Display alias for the second parameter of the family.
        ParamName beta{6, 0, "b"};
        std::map<ParamName, AffineExpr> sub{{out.new_params[0], AffineExpr::param(beta)}};
        for (auto& e : out.probs) e = e.substitute(sub);
        out.new_params = {beta};
    }
    return out;
}

SolvedLevels solve_up_to(int q, int kmax) {
    if (q < 2 || q > 9) throw std::invalid_argument("solve_up_to: q must be in 2..9");
    if (kmax < 1) throw std::invalid_argument("solve_up_to: kmax must be >= 1");
    SolvedLevels solved;
    LevelSolution base;
    base.level = 1;
    base.classes = {"1"};
    base.probs = {AffineExpr(ExactRational(1, q))};
    solved[1] = std::move(base);
    for (int k = 2; k <= kmax; ++k) {
        solved[k] = solve_level(q, k, solved);
    }
    return solved;
}

namespace {

// Interval intersection for one-parameter constraints c + t*x >= 0.
struct Interval {
    bool has_lo = false, has_hi = false, empty = false;
    ExactRational lo, hi;

    void add(const ExactRational& c, const ExactRational& t) {
        if (t.is_zero()) {
            if (c < ExactRational(0)) empty = true;
            return;
        }
        ExactRational bound = -c / t;
        if (t > ExactRational(0)) {
            if (!has_lo || bound > lo) lo = bound;
            has_lo = true;
        } else {
            if (!has_hi || bound < hi) hi = bound;
            has_hi = true;
        }
        if (has_lo && has_hi && lo > hi) empty = true;
    }

    ExactRational pick() const {  // any point inside (midpoint when bounded)
        if (has_lo && has_hi) return (lo + hi) / ExactRational(2);
        if (has_lo) return lo + ExactRational(1);
        if (has_hi) return hi - ExactRational(1);
        return ExactRational(0);
    }
};

ExactRational coeff_of(const AffineExpr& e, const ParamName& p) {
    auto it = e.coeffs().find(p);
    return it == e.coeffs().end() ? ExactRational(0) : it->second;
}

}  // namespace

FeasibilityRegion feasibility(const SolvedLevels& solved) {
    FeasibilityRegion region;
    std::set<AffineExpr> seen;
    for (const auto& [k, sol] : solved) {
        for (const auto& e : sol.probs) {
            if (seen.insert(e).second) region.inequalities.push_back(e);
        }
        for (const auto& p : sol.new_params) region.params.push_back(p);
    }
    std::sort(region.params.begin(), region.params.end());

    const size_t np = region.params.size();
    if (np >= 3) {
        region.verdict = -1;
        return region;
    }

    if (np <= 1) {
        Interval iv;
        bool const_violated = false;
        for (const auto& e : region.inequalities) {
            if (np == 0) {
                if (e.constant() < ExactRational(0)) const_violated = true;
            } else {
                iv.add(e.constant(), coeff_of(e, region.params[0]));
            }
        }
        region.has_interval = true;
        region.has_lo = iv.has_lo;
        region.has_hi = iv.has_hi;
        region.lo = iv.lo;
        region.hi = iv.hi;
        region.verdict = (iv.empty || const_violated) ? 0 : 1;
        if (region.verdict == 1 && np == 1) {
            region.sample[region.params[0]] = iv.pick();
        }
        return region;
    }

    // Two parameters: eliminate the later one (Fourier–Motzkin), resolve the
    // first exactly, then report a sample from the surviving slab.
    const ParamName& first = region.params[0];
    const ParamName& second = region.params[1];
    struct Bound {
        ExactRational c, t;  // bound expression c + t*first
    };
    std::vector<Bound> lows, highs;  // second >= c+t*first   /   second <= c+t*first
    Interval first_iv;
    for (const auto& e : region.inequalities) {
        ExactRational tb = coeff_of(e, second);
        ExactRational ta = coeff_of(e, first);
        if (tb.is_zero()) {
            first_iv.add(e.constant(), ta);
            continue;
        }
        // c + ta*x + tb*y >= 0  ->  y >= -(c + ta*x)/tb (tb > 0) or <= (tb < 0)
        ExactRational ic = -e.constant() / tb;
        ExactRational it = -ta / tb;
        if (tb > ExactRational(0)) {
            lows.push_back({ic, it});
        } else {
            highs.push_back({ic, it});
        }
    }
    for (const auto& l : lows) {
        for (const auto& h : highs) {
            // h.c + h.t*x >= l.c + l.t*x
            first_iv.add(h.c - l.c, h.t - l.t);
        }
    }
    region.has_interval = true;
    region.has_lo = first_iv.has_lo;
    region.has_hi = first_iv.has_hi;
    region.lo = first_iv.lo;
    region.hi = first_iv.hi;
    region.verdict = first_iv.empty ? 0 : 1;
    if (region.verdict == 1) {
        ExactRational x = first_iv.pick();
        Interval slab;
        for (const auto& l : lows) slab.add(-(l.c + l.t * x), ExactRational(1));
        for (const auto& h : highs) slab.add(h.c + h.t * x, ExactRational(-1));
        if (slab.empty) throw std::logic_error("feasibility: projection produced an empty slab");
        region.sample[first] = x;
        region.sample[second] = slab.pick();
    }
    return region;
}

Star3Verdict star3_obstruction() {
    SolvedLevels solved = solve_up_to(4, 5);
    const AffineExpr& p12 = solved.at(2).prob_of("12");
    const AffineExpr& p123 = solved.at(3).prob_of("123");
    const AffineExpr& p1234 = solved.at(4).prob_of("1234");
    const AffineExpr& p12132 = solved.at(5).prob_of("12132");

    // P(123) P(12132) - P(1234) P(12)^2 >= 0, affine in the level-4 parameter.
    AffineExpr gap = p123 * p12132 - p1234 * (p12 * p12);
    ParamName alpha{4, 0, "a"};
    ExactRational t = coeff_of(gap, alpha);
    if (!(t < ExactRational(0))) {
        throw std::logic_error("star3_obstruction: expected an upper bound on the parameter");
    }

    Star3Verdict v;
    v.alpha_bound = -gap.constant() / t;

    FeasibilityRegion line = feasibility(solved);
    if (!line.has_lo || !line.has_hi) {
        throw std::logic_error("star3_obstruction: line interval should be bounded");
    }
    v.path_lo = line.lo;
    v.path_hi = line.hi;
    v.contradiction = v.alpha_bound < v.path_lo;
    return v;
}

std::vector<ProbeRow> probe_alpha(int q, int kmax,
                                  const std::map<ParamName, ExactRational>& assignment) {
    SolvedLevels solved = solve_up_to(q, kmax);
    std::vector<ProbeRow> rows;
    rows.reserve(static_cast<size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        const LevelSolution& sol = solved.at(k);
        ProbeRow row;
        row.k = k;
        bool first = true;
        for (size_t i = 0; i < sol.classes.size(); ++i) {
            std::map<ParamName, AffineExpr> sub;
            for (const auto& [p, val] : assignment) sub.emplace(p, AffineExpr(val));
            AffineExpr e = sol.probs[i].substitute(sub);
            if (!e.is_constant()) {
                std::string missing;
                for (const auto& p : e.params()) {
                    if (!missing.empty()) missing += ", ";
                    missing += p.display();
                }
                throw UnsupportedLevelError(
                    k, "probe: level " + std::to_string(k) +
                           " still depends on unassigned parameter(s): " + missing);
            }
            if (first || e.constant() < row.min_value) {
                row.min_value = e.constant();
                row.argmin = sol.classes[i];
                first = false;
            }
        }
        row.all_nonneg = !(row.min_value < ExactRational(0));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace starhc

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "starhc/coloring.hpp"
#include "starhc/critical.hpp"
#include "starhc/oracle.hpp"
#include "starhc/rational.hpp"
#include "starhc/star.hpp"

namespace {

using starhc::ExactRational;
using ordered_json = nlohmann::ordered_json;

std::string fmt14(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.14g", v);
    return buf;
}

// "num/den" stays exact; a decimal becomes exact from its digits (0.23 ->
// 23/100), never from the binary double.
ExactRational decimal_to_exact(const std::string& s) {
    if (s.find_first_not_of("0123456789.") != std::string::npos)
        throw std::invalid_argument("not a plain decimal: " + s);
    auto dot = s.find('.');
    if (dot == std::string::npos) return ExactRational::parse(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty()) throw std::invalid_argument("not a plain decimal: " + s);
    ExactRational num = ExactRational::parse(digits);
    ExactRational den(1);
    for (size_t i = dot + 1; i < s.size(); ++i) den = den * ExactRational(10);
    return num / den;
}

struct PValue {
    bool exact = false;
    ExactRational r;
    double d = 0.0;
};

PValue parse_p(const std::string& s, bool force_exact) {
    PValue out;
    if (s.find('/') != std::string::npos) {
        out.exact = true;
        out.r = ExactRational::parse(s);
    } else if (force_exact) {
        out.exact = true;
        out.r = decimal_to_exact(s);
    } else {
        size_t used = 0;
        out.d = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad number: " + s);
    }
    double v = out.exact ? out.r.to_double() : out.d;
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");
    return out;
}

ExactRational parse_exact_param(const std::string& s) {
    if (s.find('/') != std::string::npos) return ExactRational::parse(s);
    return decimal_to_exact(s);
}

starhc::StarShape shape_of(const std::vector<int>& rays) {
    starhc::StarShape shape;
    shape.lengths = rays;
    return shape;
}

void print_table(const std::vector<starhc::TableRow>& rows, const std::string& format) {
    if (format == "text") {
        for (const auto& r : rows)
            std::cout << "d=" << r.d << "  " << r.rounded << "\n";
    } else if (format == "csv") {
        std::cout << "d,value\n";
        for (const auto& r : rows) std::cout << r.d << "," << r.rounded << "\n";
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row;
            row["d"] = r.d;
            row["value"] = r.value;
            row["rounded"] = r.rounded;
            arr.push_back(std::move(row));
        }
        std::cout << arr.dump() << "\n";
    }
}

std::string interval_text(const starhc::FeasibilityRegion& region) {
    return "[" + region.lo.to_string() + ", " + region.hi.to_string() + "]";
}

int run(int argc, char** argv) {
    CLI::App app{"one-dependent hard-core process toolkit for star graphs"};
    app.require_subcommand(1);
    int exit_code = 0;

    // critical --d N [--tol T]
    {
        auto* sub = app.add_subcommand("critical", "critical point of the d-ray star");
        auto d = std::make_shared<int>(0);
        auto tol = std::make_shared<double>(1e-12);
        sub->add_option("--d", *d, "number of rays")->required();
        sub->add_option("--tol", *tol, "bisection tolerance");
        sub->callback([d, tol] {
            std::cout << fmt14(starhc::ph_star(*d, *tol).value) << "\n";
        });
    }

    // critical-finite --rays n1,n2,... [--tol T]
    {
        auto* sub = app.add_subcommand("critical-finite", "critical point of a finite star");
        auto rays = std::make_shared<std::vector<int>>();
        auto tol = std::make_shared<double>(1e-12);
        sub->add_option("--rays", *rays, "ray lengths")->required()->delimiter(',');
        sub->add_option("--tol", *tol, "bisection tolerance");
        sub->callback([rays, tol] {
            std::cout << fmt14(starhc::ph_finite(*rays, *tol).value) << "\n";
        });
    }

    // upper-bound --d N
    {
        auto* sub = app.add_subcommand("upper-bound", "upper bound p*(d) for the critical point");
        auto d = std::make_shared<int>(0);
        auto tol = std::make_shared<double>(1e-12);
        sub->add_option("--d", *d, "number of rays")->required();
        sub->add_option("--tol", *tol, "bisection tolerance");
        sub->callback([d, tol] {
            std::cout << fmt14(starhc::p_star(*d, *tol).value) << "\n";
        });
    }

    // min-colors --d N
    {
        auto* sub = app.add_subcommand("min-colors", "lower bound on colors needed for the d-ray star");
        auto d = std::make_shared<int>(0);
        sub->add_option("--d", *d, "number of rays")->required();
        sub->callback([d] {
            std::cout << starhc::min_colors_lower_bound(*d) << "\n";
        });
    }

    // table --which 1|2 --dmax N --format F
    {
        auto* sub = app.add_subcommand("table", "critical-point tables");
        auto which = std::make_shared<int>(0);
        auto dmax = std::make_shared<int>(12);
        auto format = std::make_shared<std::string>("text");
        sub->add_option("--which", *which, "1 = critical points, 2 = upper bounds")
            ->required()
            ->check(CLI::IsMember({1, 2}));
        sub->add_option("--dmax", *dmax, "largest d")->required();
        sub->add_option("--format", *format, "text|csv|json")
            ->check(CLI::IsMember({"text", "csv", "json"}));
        sub->callback([which, dmax, format] {
            print_table(starhc::emit_table(*which, *dmax), *format);
        });
    }

    // cylinder --config "c|r1,...,rd" --p P [--exact]
    {
        auto* sub = app.add_subcommand("cylinder", "probability of one star configuration");
        auto config = std::make_shared<std::string>();
        auto p = std::make_shared<std::string>();
        auto exact = std::make_shared<bool>(false);
        sub->add_option("--config", *config, "center|ray1,...,rayd in {0,1}")->required();
        sub->add_option("--p", *p, "density, decimal or num/den")->required();
        sub->add_flag("--exact", *exact, "exact rational arithmetic");
        sub->callback([config, p, exact] {
            starhc::StarConfig cfg = starhc::StarConfig::parse(*config);
            PValue pv = parse_p(*p, *exact);
            if (pv.exact)
                std::cout << starhc::star_prob<ExactRational>(cfg, pv.r).to_string() << "\n";
            else
                std::cout << fmt14(starhc::star_prob<double>(cfg, pv.d)) << "\n";
        });
    }

    // verify one-dependence --rays ... --p P
    {
        auto* verify = app.add_subcommand("verify", "exhaustive process checks");
        verify->require_subcommand(1);
        auto* sub = verify->add_subcommand("one-dependence",
                                           "factorization over all distance->=2 subset pairs");
        auto rays = std::make_shared<std::vector<int>>();
        auto p = std::make_shared<std::string>();
        sub->add_option("--rays", *rays, "ray lengths")->required()->delimiter(',');
        sub->add_option("--p", *p, "density, decimal or num/den")->required();
        sub->callback([rays, p, &exit_code] {
            PValue pv = parse_p(*p, false);
            bool ok;
            std::string worst;
            uint64_t pairs;
            if (pv.exact) {
                auto rep = starhc::check_one_dependence<ExactRational>(shape_of(*rays), pv.r);
                ok = rep.ok;
                pairs = rep.pairs;
                worst = rep.max_violation.to_string();
            } else {
                auto rep = starhc::check_one_dependence<double>(shape_of(*rays), pv.d);
                ok = rep.ok;
                pairs = rep.pairs;
                worst = fmt14(rep.max_violation);
            }
            std::cout << "pairs checked: " << pairs << "\n";
            std::cout << "max violation: " << worst << "\n";
            std::cout << "result: " << (ok ? "OK" : "VIOLATION") << "\n";
            if (!ok) exit_code = 3;
        });
    }

    // oracle ph --rays ... [--tol T]
    {
        auto* oracle = app.add_subcommand("oracle", "brute-force reference computations");
        oracle->require_subcommand(1);
        auto* sub = oracle->add_subcommand("ph", "critical point by exhaustive non-negativity");
        auto rays = std::make_shared<std::vector<int>>();
        auto tol = std::make_shared<double>(1e-9);
        sub->add_option("--rays", *rays, "ray lengths")->required()->delimiter(',');
        sub->add_option("--tol", *tol, "bisection tolerance");
        sub->callback([rays, tol] {
            std::cout << fmt14(starhc::ph_oracle(shape_of(*rays), *tol)) << "\n";
        });
    }

    // color count --q Q --k K [--jobs N]
    auto* color = app.add_subcommand("color", "1-dependent coloring computations");
    color->require_subcommand(1);
    {
        auto* sub = color->add_subcommand("count", "number of classes of proper words");
        auto q = std::make_shared<int>(4);
        auto k = std::make_shared<int>(0);
        auto jobs = std::make_shared<int>(1);
        sub->add_option("--q", *q, "number of colors")->required();
        sub->add_option("--k", *k, "word length")->required();
        sub->add_option("--jobs", *jobs, "worker threads");
        sub->callback([q, k, jobs] {
            std::cout << starhc::count_classes(*q, *k, *jobs) << "\n";
        });
    }

    // color solve --q Q --k K --format F
    {
        auto* sub = color->add_subcommand("solve", "exact class probabilities at one level");
        auto q = std::make_shared<int>(4);
        auto k = std::make_shared<int>(0);
        auto format = std::make_shared<std::string>("text");
        sub->add_option("--q", *q, "number of colors")->required();
        sub->add_option("--k", *k, "word length")->required();
        sub->add_option("--format", *format, "text|csv|json")
            ->check(CLI::IsMember({"text", "csv", "json"}));
        sub->callback([q, k, format] {
            starhc::SolvedLevels solved = starhc::solve_up_to(*q, *k);
            const starhc::LevelSolution& sol = solved.at(*k);
            if (*format == "text") {
                for (size_t i = 0; i < sol.classes.size(); ++i)
                    std::cout << "P(" << sol.classes[i]
                              << ") = " << sol.probs[i].to_string() << "\n";
            } else if (*format == "csv") {
                std::cout << "rep,prob\n";
                for (size_t i = 0; i < sol.classes.size(); ++i)
                    std::cout << sol.classes[i] << "," << sol.probs[i].to_string() << "\n";
            } else {
                ordered_json out;
                out["k"] = sol.level;
                ordered_json classes = ordered_json::array();
                for (size_t i = 0; i < sol.classes.size(); ++i) {
                    ordered_json row;
                    row["rep"] = sol.classes[i];
                    row["prob"] = sol.probs[i].to_string();
                    classes.push_back(std::move(row));
                }
                out["classes"] = std::move(classes);
                ordered_json names = ordered_json::array();
                for (const auto& pn : sol.new_params) names.push_back(pn.display());
                out["new_params"] = std::move(names);
                starhc::FeasibilityRegion region = starhc::feasibility(solved);
                if (region.has_interval && region.has_lo && region.has_hi)
                    out["feasible_interval"] =
                        ordered_json::array({region.lo.to_string(), region.hi.to_string()});
                else
                    out["feasible_interval"] = nullptr;
                std::cout << out.dump() << "\n";
            }
        });
    }

    // color feasible --q Q --kmax K
    {
        auto* sub = color->add_subcommand("feasible", "joint non-negativity through a level");
        auto q = std::make_shared<int>(4);
        auto kmax = std::make_shared<int>(0);
        sub->add_option("--q", *q, "number of colors")->required();
        sub->add_option("--kmax", *kmax, "largest word length")->required();
        sub->callback([q, kmax, &exit_code] {
            starhc::FeasibilityRegion region =
                starhc::feasibility(starhc::solve_up_to(*q, *kmax));
            if (region.has_interval && region.has_lo && region.has_hi)
                std::cout << "interval: " << interval_text(region) << "\n";
            std::cout << "verdict: " << (region.verdict == 1 ? "feasible" : "empty") << "\n";
            if (region.verdict == 1 && !region.sample.empty()) {
                std::cout << "sample:";
                for (const auto& [pn, val] : region.sample)
                    std::cout << " " << pn.display() << "=" << val.to_string();
                std::cout << "\n";
            }
            if (region.verdict != 1) exit_code = 3;
        });
    }

    // color star3-check [--format F]
    {
        auto* sub = color->add_subcommand("star3-check",
                                          "branching obstruction for the 3-ray star");
        auto format = std::make_shared<std::string>("text");
        sub->add_option("--format", *format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->callback([format] {
            starhc::Star3Verdict v = starhc::star3_obstruction();
            if (*format == "json") {
                ordered_json out;
                out["alpha_bound"] = v.alpha_bound.to_string();
                out["path_interval"] =
                    ordered_json::array({v.path_lo.to_string(), v.path_hi.to_string()});
                out["contradiction"] = v.contradiction;
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "alpha bound: " << v.alpha_bound.to_string() << "\n";
                std::cout << "path interval: [" << v.path_lo.to_string() << ", "
                          << v.path_hi.to_string() << "]\n";
                std::cout << "contradiction: " << (v.contradiction ? "yes" : "no") << "\n";
            }
        });
    }

    // color probe --alpha A [--beta B] --kmax K
    {
        auto* sub = color->add_subcommand("probe", "per-level minima at a parameter point");
        auto alpha = std::make_shared<std::string>();
        auto beta = std::make_shared<std::string>();
        auto kmax = std::make_shared<int>(0);
        sub->add_option("--alpha", *alpha, "value for a, decimal or num/den")->required();
        sub->add_option("--beta", *beta, "value for b, decimal or num/den");
        sub->add_option("--kmax", *kmax, "largest word length")->required();
        sub->callback([alpha, beta, kmax, &exit_code] {
            std::map<starhc::ParamName, ExactRational> assignment;
            assignment[starhc::ParamName{4, 0, "a"}] = parse_exact_param(*alpha);
            if (!beta->empty())
                assignment[starhc::ParamName{6, 0, "b"}] = parse_exact_param(*beta);
            bool ok = true;
            for (const auto& row : starhc::probe_alpha(4, *kmax, assignment)) {
                std::cout << "k=" << row.k << " min=" << row.min_value.to_string()
                          << " at=" << row.argmin << "\n";
                ok = ok && row.all_nonneg;
            }
            if (!ok) exit_code = 3;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const starhc::UnsupportedLevelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const starhc::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const starhc::InfeasibleSystemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const starhc::AffineClosureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

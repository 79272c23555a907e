#include "centrolab/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "centrolab/curve.hpp"
#include "centrolab/deformation.hpp"
#include "centrolab/error.hpp"
#include "centrolab/exponent_symmetry.hpp"
#include "centrolab/hill.hpp"
#include "centrolab/periodic_search.hpp"
#include "centrolab/special_third.hpp"
#include "centrolab/symplectic4d.hpp"

namespace centrolab::verify {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

class Recorder {
public:
    explicit Recorder(SuiteReport& r) : r_(r) {}

    void check(const std::string& name, bool ok, const std::string& detail = {}) {
        r_.checks.push_back({name, ok, detail});
    }
    // |value| <= bound
    void below(const std::string& name, double value, double bound) {
        check(name, std::isfinite(value) && value <= bound, fmt(value) + " <= " + fmt(bound));
    }
    // runs body; an exception becomes a failed check
    void guard(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            check(name, false, std::string("threw: ") + e.what());
        }
    }
    void note(std::string s) { r_.notes.push_back(std::move(s)); }

private:
    SuiteReport& r_;
};

void circle_invariants(Recorder& rec) {
    for (int n = 1; n <= 3; ++n) {
        const std::string tag = "n=" + std::to_string(n);
        rec.guard(tag, [&] {
            const auto c = multiple_circle(n);
            rec.below(tag + " normalization", c.normalization_defect(), 1e-7);
            rec.below(tag + " A = 2pi", std::abs(functional_A(c) - 2.0 * kPi), 1e-8);
            for (double a : {1.0 / 3.0, 2.0}) {
                const double expect = 2.0 * kPi * std::pow(n, 2.0 * a);
                rec.below(tag + " B_" + fmt(a) + " relative", std::abs(functional_B(c, a) / expect - 1.0), 1e-7);
            }
        });
    }
}

void rigidity(Recorder& rec) {
    for (double a : {0.6, 0.75, 0.9}) {
        rec.guard("scan a=" + fmt(a), [&] {
            const auto v = rigidity_scan(a);
            rec.check("scan a=" + fmt(a), v.rigid && v.message.find("constants only") != std::string::npos,
                      v.message + " over " + std::to_string(v.cells) + " cells");
        });
    }
    // pinned target periods inside the attained range at the default constant
    const std::array<std::pair<double, double>, 3> targets{{{-1.0, 0.46}, {0.2, 1.4}, {2.0, 2.0}}};
    for (const auto& [a, T] : targets) {
        const std::string tag = "orbit a=" + fmt(a) + " T=" + fmt(T);
        rec.guard(tag, [&] {
            const auto o = find_orbit_with_period(a, T);
            rec.check(tag + " non-constant", !o.is_constant() && o.M - o.m > 1e-6 * o.M,
                      "M - m = " + fmt(o.M - o.m));
            rec.below(tag + " period", std::abs(o.period - T), 1e-9);
            rec.below(tag + " residual", o.residual, 1e-6);
        });
    }
}

void spectrum(Recorder& rec) {
    const std::array<std::tuple<int, int, Rational>, 4> known{{{1, 1, Rational(1, 3)},
                                                                {3, 1, Rational(7, 5)},
                                                                {4, 1, Rational(7, 6)},
                                                                {5, 1, Rational(23, 21)}}};
    std::string listing;
    for (const auto& [k, n, value] : known) {
        const auto got = spectrum_exponent(k, n).a;
        rec.check("(k,n)=(" + std::to_string(k) + "," + std::to_string(n) + ")", got == value, to_string(got));
        listing += (listing.empty() ? "" : ", ") + to_string(got);
    }
    rec.note("spectrum: " + listing);
    int inside = 0;
    for (int n = 1; n <= 20; ++n)
        for (int k = 1; k <= 100; ++k) {
            if (k == 2 * n) continue;
            const auto a = spectrum_exponent(k, n).a;
            if (a >= Rational(1, 2) && a <= Rational(1)) ++inside;
        }
    rec.check("no value in [1/2, 1] for k <= 100, n <= 20", inside == 0, std::to_string(inside) + " inside");
    rec.below("frequency at a = 7/5", std::abs(linearized_frequency(1.4) - 3.0), 1e-12);
}

void classification(Recorder& rec) {
    struct Case {
        Rational a;
        CircleClass kind;
        int kernel;
    };
    const std::array<Case, 5> cases{{{Rational(-1), CircleClass::local_min, 0},
                                     {Rational(1, 5), CircleClass::local_max, 0},
                                     {Rational(2), CircleClass::local_min, 0},
                                     {Rational(6, 5), CircleClass::indefinite, 0},
                                     {Rational(7, 5), CircleClass::degenerate, 3}}};
    for (const auto& c : cases) {
        const auto got = classify_circle(c.a);
        bool ok = got.kind == c.kind;
        if (c.kernel) ok = ok && got.kernel == std::vector<int>{c.kernel};
        std::string detail = to_string(got.kind);
        if (!got.kernel.empty()) detail += " k=" + std::to_string(got.kernel.front());
        rec.check("a=" + to_string(c.a), ok, detail);
    }
    rec.guard("second derivative at a=2", [&] {
        // d^2 B / d eps^2 along sin(k t) is 2 pi a k^2 h_k
        const double a = 2.0, k = 3.0;
        const double predicted = 2.0 * kPi * a * k * k * to_double(hessian_coefficient(Rational(2), Rational(3)));
        const auto f = harmonic_jet(k);
        const double eps = 2.5e-3;
        const double b0 = deformed_circle_functional(f, 0.0, a);
        const double d2 =
            (deformed_circle_functional(f, eps, a) - 2.0 * b0 + deformed_circle_functional(f, -eps, a)) / (eps * eps);
        rec.check("sign of a h_3", std::signbit(d2) == std::signbit(predicted),
                  "fd " + fmt(d2) + " predicted " + fmt(predicted));
        rec.below("magnitude relative", std::abs(d2 / predicted - 1.0), 0.02);
    });
}

void third_rigidity(Recorder& rec) {
    const std::array<std::pair<double, int>, 3> cases{{{0.2, 1}, {0.4, 1}, {0.3, 2}}};
    for (const auto& [eps, n] : cases) {
        const std::string tag = "eps=" + fmt(eps) + " n=" + std::to_string(n);
        rec.guard(tag, [&] {
            const auto prof = third_profile(eps, n, 0.3);
            const auto r = rigidity_check_third(prof.G, prof.period);
            rec.below(tag + " deviation", r.deviation, 1e-5);
            rec.check(tag + " circle", r.conic && r.n == n && r.winding == n,
                      "n=" + std::to_string(r.n) + " winding=" + std::to_string(r.winding));
        });
    }
    std::mt19937_64 rng(20261015);
    std::normal_distribution<double> gauss;
    const std::size_t N = 512;
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> f(N, 0.0);
        for (int j = 0; j <= 10; ++j) {
            const double ca = gauss(rng) / (1.0 + j * j), cb = gauss(rng) / (1.0 + j * j);
            for (std::size_t i = 0; i < N; ++i) {
                const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(N);
                f[i] += ca * std::cos(j * t) + cb * std::sin(j * t);
            }
        }
        worst = std::min(worst, second_variation_third(f));
    }
    rec.check("second variation >= -1e-10 on 50 random f", worst >= -1e-10, "min " + fmt(worst));
    double harm = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const double ca = gauss(rng), cb = gauss(rng);
        std::vector<double> f(N);
        for (std::size_t i = 0; i < N; ++i) {
            const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(N);
            f[i] = ca * std::cos(t) + cb * std::sin(t);
        }
        harm = std::max(harm, std::abs(second_variation_third(f)));
    }
    rec.below("vanishes on first harmonics", harm, 1e-10);
}

void isoperimetric(Recorder& rec) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.3, 3.0), ang(0.0, kPi), off(-1.0, 1.0);
    for (int i = 0; i < 3; ++i) {
        const double a = u(rng), b = u(rng), th = ang(rng);
        const Vec2 c(off(rng), off(rng));
        const std::string tag = "ellipse " + fmt(a) + "x" + fmt(b);
        rec.guard(tag, [&] {
            rec.below(tag, std::abs(isoperimetric_ratio(ellipse_points(a, b, th, c, 1024), 2.0 * kPi) - 1.0), 1e-8);
        });
    }
    rec.guard("rounded quartic", [&] {
        const double r = isoperimetric_ratio(quartic_points(2048), 2.0 * kPi);
        rec.check("rounded quartic", r < 1.0 - 1e-4, "ratio " + fmt(r));
    });
}

void monodromy_suite(Recorder& rec) {
    std::mt19937_64 rng(11);
    const std::array<double, 5> exps{-2.0, -1.0, 0.2, 2.0, 3.0};
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    double worst = 0.0;
    int done = 0;
    rec.guard("det over random profiles", [&] {
        for (int i = 0; i < 20; ++i) {
            const double a = exps[static_cast<std::size_t>(pick(rng))];
            const double b = 1.0 / (a - 1.0);
            const double c = default_constant(b);
            const auto o = sample_orbit(a, c, energy_at(b, c, frac(rng)));
            worst = std::max(worst, std::abs(monodromy(o).determinant - 1.0));
            ++done;
        }
        rec.check("det M = 1 on 20 random profiles", done == 20 && worst <= 1e-9, "max defect " + fmt(worst));
    });
    struct Run {
        double a;
        Rational target;
        int winding;
    };
    const std::array<Run, 3> runs{{{2.0, Rational(3, 7), 3}, {-1.0, Rational(5, 9), 5}, {0.2, Rational(4, 5), 4}}};
    for (const auto& r : runs) {
        const std::string tag = "gallery a=" + fmt(r.a) + " target " + to_string(r.target);
        rec.guard(tag, [&] {
            const auto o = rotation_tune(r.a, r.target);
            const auto c = reconstruct(o, static_cast<int>(r.target.denominator()));
            rec.below(tag + " closure", c.closure_defect, 1e-6);
            rec.check(tag + " winding", c.winding == r.winding, "winding " + std::to_string(c.winding));
            rec.note(tag + ": covering " + std::to_string(c.covering) + ", winding " + std::to_string(c.winding));
        });
    }
}

struct Mobius {
    Rational a, b, c, d;
};

Mobius compose(const Mobius& outer, const Mobius& inner) {
    return {outer.a * inner.a + outer.b * inner.c, outer.a * inner.b + outer.b * inner.d,
            outer.c * inner.a + outer.d * inner.c, outer.c * inner.b + outer.d * inner.d};
}

bool proportional(const Mobius& x, const Mobius& y) {
    return x.a * y.b == x.b * y.a && x.a * y.c == x.c * y.a && x.a * y.d == x.d * y.a && x.b * y.c == x.c * y.b &&
           x.b * y.d == x.d * y.b && x.c * y.d == x.d * y.c;
}

void symmetry(Recorder& rec) {
    auto as_set = [](const std::vector<ExtendedRational>& v) {
        std::set<std::string> s;
        for (const auto& x : v) s.insert(to_string(x));
        return s;
    };
    const auto o1 = as_set(orbit_of_a(ExtendedRational::of(Rational(1))));
    rec.check("orbit of a=1", o1 == std::set<std::string>{"1", "1/2", "0"});
    const auto o3 = as_set(orbit_of_a(ExtendedRational::of(Rational(1, 3))));
    rec.check("orbit of a=1/3", o3 == std::set<std::string>{"1/3", "2/3", "inf"});

    rec.guard("transport", [&] {
        const ThreeTermEquation eq{1.0, 2.0, 1.0, 0.5};
        const auto sol = solve_three_term(eq, 0.5, 0.4, 400);
        double worst = three_term_residual(eq, sol);
        int branches = 0;
        for (int br = 0; br < kBranchCount; ++br) {
            const auto tr = transform_solution(eq, br, sol);
            worst = std::max(worst, three_term_residual(tr.eq, tr.sol));
            ++branches;
        }
        rec.below("transported residual over " + std::to_string(branches) + " branches", worst, 1e-7);
    });

    // q-bar of each branch as a Moebius map; the group table follows from
    // composing matrices
    const std::array<Mobius, 6> maps{{{Rational(1), Rational(0), Rational(0), Rational(1)},
                                      {Rational(-1), Rational(1), Rational(0), Rational(1)},
                                      {Rational(1), Rational(0), Rational(1), Rational(-1)},
                                      {Rational(0), Rational(1), Rational(-1), Rational(1)},
                                      {Rational(1), Rational(-1), Rational(1), Rational(0)},
                                      {Rational(0), Rational(1), Rational(1), Rational(0)}}};
    rec.guard("branch table", [&] {
        const auto table = branch_table(Rational(3, 7));
        int mismatches = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const auto m = compose(maps[static_cast<std::size_t>(j)], maps[static_cast<std::size_t>(i)]);
                int expect = -1;
                for (int k = 0; k < 6; ++k)
                    if (proportional(m, maps[static_cast<std::size_t>(k)])) expect = k;
                if (table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != expect) ++mismatches;
            }
        rec.check("branch composition table", mismatches == 0, std::to_string(mismatches) + " mismatches");
    });
}

void zoo(Recorder& rec) {
    rec.guard("sign zoo", [&] {
        const auto entries = sign_zoo();
        std::set<std::string> patterns;
        for (const auto& e : entries) {
            patterns.insert(e.certificate.pattern());
            const auto& s = e.certificate;
            rec.check(e.label + " certified",
                      s.sign_star != SignKind::mixed && s.sign_conv != SignKind::mixed && s.refined_agrees &&
                          s.margin_star > 1e-3 && s.margin_conv > 1e-3,
                      "margins " + fmt(s.margin_star) + ", " + fmt(s.margin_conv));
            rec.below(e.label + " closed", closure_gap(e.curve), 1e-9);
        }
        rec.check("four patterns", patterns == std::set<std::string>{"(+,+)", "(+,-)", "(-,+)", "(-,-)"});
    });
    rec.guard("lifts", [&] {
        const auto base = legendrian_lift(latitude_circle(1.0 / 3.0, 3, 1024), 1, true);
        rec.below("Legendrian residual (circle lift)", legendrian_residual(base), 1e-8);
        const auto kinked = legendrian_lift(add_kinks(1.0, 2, 1).curve, 1);
        rec.below("Legendrian residual (kinked lift)", legendrian_residual(kinked), 1e-8);
        const auto unit = arclength_reparameterize(base);
        for (double eps : {1e-3, 1e-4}) {
            std::vector<Vec4> pts(unit.points.size());
            for (std::size_t i = 0; i < pts.size(); ++i)
                pts[i] = (unit.points[i] + eps * complex_j(unit.d1[i])).normalized();
            const auto g = make_curve4d(std::move(pts), unit.period);
            double worst = 0.0;
            for (std::size_t i = 0; i < g.points.size(); ++i)
                worst = std::max(worst, std::abs(omega4(g.points[i], g.d1[i]) / eps + 2.0) / 2.0);
            rec.below("push-off ratio eps=" + fmt(eps), worst, 0.05);
        }
    });
}

struct SuiteDef {
    const char* name;
    int criterion;
    double budget;  // seconds
    void (*run)(Recorder&);
};

const std::array<SuiteDef, 9>& suites() {
    static const std::array<SuiteDef, 9> s{{{"circle-invariants", 1, 1.0, circle_invariants},
                                            {"rigidity", 2, 30.0, rigidity},
                                            {"spectrum", 3, 0.0, spectrum},
                                            {"classification", 4, 60.0, classification},
                                            {"third-rigidity", 5, 30.0, third_rigidity},
                                            {"isoperimetric", 6, 0.0, isoperimetric},
                                            {"monodromy", 7, 300.0, monodromy_suite},
                                            {"symmetry", 8, 0.0, symmetry},
                                            {"zoo", 9, 0.0, zoo}}};
    return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : suites()) v.emplace_back(s.name);
        return v;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name) {
    const auto& all = suites();
    const auto it = std::find_if(all.begin(), all.end(), [&](const SuiteDef& s) { return name == s.name; });
    if (it == all.end()) throw LabError(ErrorKind::invalid_input, "unknown suite '" + name + "'");
    SuiteReport r;
    r.name = it->name;
    r.criterion = it->criterion;
    Recorder rec(r);
    const auto t0 = std::chrono::steady_clock::now();
    it->run(rec);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (it->budget > 0.0) rec.below("runtime seconds", r.seconds, it->budget);
    r.passed = !r.checks.empty() &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
    return r;
}

nlohmann::json to_json(const SuiteReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"suite", r.name},      {"criterion", r.criterion}, {"passed", r.passed},
            {"seconds", r.seconds}, {"checks", checks},         {"notes", r.notes}};
}

}  // namespace centrolab::verify

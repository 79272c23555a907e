#include <cmath>
#include <set>

#include "doctest.h"

#include "centrolab/error.hpp"
#include "centrolab/exponent_symmetry.hpp"

using namespace centrolab;

namespace {

ExtendedRational R(std::int64_t p, std::int64_t q = 1) { return ExtendedRational::of(Rational(p, q)); }

std::set<std::string> names(const std::vector<ExtendedRational>& v) {
    std::set<std::string> s;
    for (const auto& x : v) s.insert(to_string(x));
    return s;
}

}  // namespace

TEST_CASE("exponent maps") {
    CHECK(q_from_a(R(2)) == R(3));
    CHECK(q_from_a(R(1, 3)) == R(1, 2));
    CHECK(q_from_a(R(1)).infinite);
    CHECK(a_from_q(R(3)) == R(2));
    CHECK(a_from_q(R(2)).infinite);
    for (int p = -7; p <= 7; ++p)
        for (int q : {1, 2, 3, 5}) {
            const auto a = R(p, q);
            if (a == R(1)) continue;
            CHECK(a_from_q(q_from_a(a)) == a);
        }
}

TEST_CASE("orbits") {
    CHECK(names(orbit_of_a(R(1, 3))) == std::set<std::string>{"1/3", "2/3", "inf"});
    CHECK(names(orbit_of_a(R(1))) == std::set<std::string>{"0", "1/2", "1"});
    CHECK(names(orbit_of_q(R(1, 2))) == std::set<std::string>{"-1", "1/2", "2"});
    CHECK(orbit_of_q(R(3)).size() == 6);
    CHECK(orbit_of_a(R(2)).size() == 6);
    // every element of an orbit has the same orbit
    for (const auto& x : orbit_of_a(R(2))) CHECK(names(orbit_of_a(x)) == names(orbit_of_a(R(2))));
    const auto d = orbit_of_q(3.0);
    CHECK(d.size() == 6);
    CHECK(std::is_sorted(d.begin(), d.end()));
}

TEST_CASE("branch parameters reproduce the exponent set") {
    const Rational q(3, 7);
    for (int br = 0; br < kBranchCount; ++br) {
        const auto p = branch_params(br, q);
        const Rational eu = p.mu * (q - Rational(2)) + Rational(2) - Rational(2) * p.lambda;
        const Rational ev = Rational(2) - Rational(2) * p.lambda - p.mu;
        const Rational ew = Rational(2) - Rational(2) * p.lambda - Rational(2) * p.mu;
        const std::set<Rational> got{eu, ev, ew};
        CHECK(got == std::set<Rational>{p.qbar, Rational(1), Rational(0)});
        const auto perm = branch_permutation(br);
        CHECK(std::set<int>(perm.begin(), perm.end()) == std::set<int>{0, 1, 2});
    }
    try {
        branch_params(2, Rational(1));
        FAIL("branch 2 at q = 1 accepted");
    } catch (const LabError& e) {
        CHECK(e.kind() == ErrorKind::branch_unavailable);
    }
    CHECK_THROWS_AS(branch_params(5, Rational(0)), LabError);
}

TEST_CASE("branch table is a group") {
    const auto t = branch_table(Rational(3, 7));
    for (int i = 0; i < 6; ++i) {
        CHECK(t[0][static_cast<std::size_t>(i)] == i);
        CHECK(t[static_cast<std::size_t>(i)][0] == i);
        std::set<int> row(t[static_cast<std::size_t>(i)].begin(), t[static_cast<std::size_t>(i)].end());
        CHECK(row.size() == 6);
    }
    // associativity
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            for (std::size_t k = 0; k < 6; ++k)
                CHECK(t[static_cast<std::size_t>(t[i][j])][k] == t[i][static_cast<std::size_t>(t[j][k])]);
    // not abelian
    bool commutes = true;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) commutes = commutes && t[i][j] == t[j][i];
    CHECK_FALSE(commutes);
}

TEST_CASE("exact and floating branches agree") {
    const ExactThreeTerm eq{Rational(2), Rational(-3), Rational(5), Rational(3, 7)};
    const ThreeTermEquation fe{2.0, -3.0, 5.0, 3.0 / 7.0};
    for (int br = 0; br < kBranchCount; ++br) {
        const auto x = apply_branch(br, eq);
        const auto y = apply_branch(br, fe);
        CHECK(y.u == doctest::Approx(to_double(x.u)));
        CHECK(y.v == doctest::Approx(to_double(x.v)));
        CHECK(y.w == doctest::Approx(to_double(x.w)));
        CHECK(y.q == doctest::Approx(to_double(x.q)));
    }
    const auto id = apply_branch(0, eq);
    CHECK(id.u == eq.u);
    CHECK(id.q == eq.q);
}

TEST_CASE("solutions transport along every branch") {
    const ThreeTermEquation eq{1.0, 2.0, 1.0, 0.5};
    const auto sol = solve_three_term(eq, 0.5, 0.4, 400);
    CHECK(three_term_residual(eq, sol) < 1e-8);
    for (int br = 0; br < kBranchCount; ++br) {
        const auto tr = transform_solution(eq, br, sol);
        CAPTURE(br);
        CHECK(three_term_residual(tr.eq, tr.sol) < 1e-7);
        CHECK(tr.sol.t.size() == sol.t.size());
    }
    // a wrong equation is detected
    ThreeTermEquation other = eq;
    other.w = 2.0;
    CHECK(three_term_residual(other, sol) > 0.1);
}

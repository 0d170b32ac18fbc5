#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alloymsa/error.hpp"
#include "alloymsa/genfun.hpp"
#include "alloymsa/initial_scale.hpp"
#include "alloymsa/spectral.hpp"
#include "alloymsa/wegner.hpp"
#include "zoo.hpp"

using namespace alloymsa;

namespace {

// u(0) = 1 with a small negative collar, tuned so the Temple radius is 1
SingleSitePotential collar() {
    return SingleSitePotential(1, {{LatticePoint{-1}, -1e-7}, {LatticePoint{0}, 1.0}, {LatticePoint{1}, -1e-7}}, 1.0,
                               std::log(1e7));
}

}  // namespace

TEST_SUITE("initial_scale") {
    TEST_CASE("Neumann gap: eigensolve matches the closed form") {
        for (int d = 1; d <= 2; ++d)
            for (double l = 1; l <= (d == 1 ? 40 : 8); l += 1) {
                const auto g = neumann_gap(l, d);
                CHECK(g.exact == doctest::Approx(g.closed_form).epsilon(1e-12));
                CHECK(g.formula == doctest::Approx(2 - 2 * std::cos(std::numbers::pi / l)));
            }
    }

    TEST_CASE("Neumann gap: where the quadratic lower bound actually holds") {
        // the box has 2l+1 sites, so the exact gap is smaller than 4 l^-2;
        // the formula with pi/l is above 4 l^-2 for l >= 2 and equal at l = 1
        for (double l = 2; l <= 200; l += 1) {
            const auto g = neumann_gap(l, 1);
            CHECK(g.formula > g.bound);
            CHECK(g.closed_form < g.bound);
        }
        const auto one = neumann_gap(1, 1);
        CHECK(one.formula == doctest::Approx(one.bound));
    }

    TEST_CASE("beta0 formula") {
        const auto u = collar();
        CHECK(beta0(u) == doctest::Approx(65.0 / 32 + 8 * (1 + 2e-7) / (1 - 2e-7)));
        CHECK_THROWS_AS(beta0(zoo::pair()), Error);
    }

    TEST_CASE("Temple bound never exceeds the ground state") {
        zoo::Gen g(1);
        const auto u = collar();
        for (int rep = 0; rep < 60; ++rep) {
            const double l = g.integer(2, 8);
            const double beta = beta0(u) * g.real(1, 3);
            const double level = 8 / (beta * l * l);
            const auto m = DisorderModel::uniform(0, level * g.real(0.2, 3));
            const Box reach(LatticePoint(1), l + 2);
            const auto c = sample_configuration(m, reach, 50 + rep);
            const auto r = temple_lower_bound(u, c, l, beta, 1);
            const auto ev = eigenvalues(restrict_hamiltonian(u, c, Box(LatticePoint(1), l), BoundaryKind::neumann));
            CHECK(r.lambda_hat <= ev[0] + 1e-12);
            CHECK(r.shift_max <= 1 / (8 * beta * l * l) * (1 + 1e-12));
        }
    }

    TEST_CASE("Temple preconditions raise") {
        // beta = 1 puts <h> above xi
        const auto u = zoo::delta1();
        const auto c = Configuration::constant(Box(LatticePoint(1), 8), 10.0);
        try {
            temple_lower_bound(u, c, 4, 1);
            FAIL("expected a precondition error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::precondition);
        }
    }

    TEST_CASE("Temple radius is the smallest admissible integer") {
        for (double a : {1.0, 3.0, std::log(1e7)}) {
            const auto u = SingleSitePotential(1, {{LatticePoint{0}, 1.0}}, 1.0, a);
            const int R = temple_radius(u);
            const double l1 = u.l1_norm_bound();
            auto f = [&](int r) { return tail_constant(u) * std::exp(-a * r / 2) * (16 / l1 + u.mean() / (4 * l1 * l1)); };
            CHECK(f(R) <= 0.125);
            if (R > 1) CHECK(f(R - 1) > 0.125);
        }
        CHECK(temple_radius(collar()) == 1);
    }

    TEST_CASE("l10* is where the volume condition starts to hold") {
        const auto u = collar();
        const int R = temple_radius(u);
        const double l10 = l10_star(u, R);
        const double A = 8 * tail_constant(u) * std::exp(-u.alpha() * R / 2) / u.l1_norm_bound();
        auto holds = [&](double l) {
            return std::pow(2 * (l - R) + 1, 1) / (2 * l + 1) * A + 32.0 * R / (2 * l + 1) <= A + 0.125;
        };
        CHECK(holds(l10));
        CHECK(!holds(l10 - 1));
        for (double l = l10; l < l10 + 500; l += 1) CHECK(holds(l));
    }

    TEST_CASE("small coupling implication has no counterexamples") {
        const auto u = collar();
        const double beta = beta0(u);
        const double l = 130;
        // omega_+ small enough that the negative collar fits the assumption
        const auto m = DisorderModel::uniform(0, 8 / (beta * l * l * u.mean()));
        const auto r = small_coupling_implication(u, m, l, beta, 40, 3);
        CHECK(r.violations.empty());
        CHECK(r.counterexamples == 0);
        CHECK(r.l8_star == std::max(r.l9_star, r.l10_star));
    }

    TEST_CASE("admissible lengths") {
        const double b0 = 10.03125;
        for (double zeta : {0.5, 1.0, 1.5}) {
            for (double l : admissible_lengths(zeta, b0, 1, 120)) {
                const double lt = std::pow(l, 1 - zeta / 2) / std::sqrt(b0);
                const long a = static_cast<long>(std::floor(2 * l + 1)), b = static_cast<long>(std::floor(2 * lt + 1));
                CHECK(a % b == 0);
                CHECK((a / b) % 2 == 1);
                CHECK(a / b >= 3);
            }
        }
        CHECK(is_admissible(16, 1.0, b0));
        CHECK(!is_admissible(17, 1.0, b0));
    }

    TEST_CASE("Lifshitz probe reports the counting chain") {
        const auto u = zoo::delta1();
        const auto m = DisorderModel::uniform(0, 1);
        LifshitzParameters p;
        const auto r = lifshitz_probe(u, m, p, 16, 200, 4);
        const double b0 = beta0(u);
        const double lt = std::pow(16.0, 0.5) / std::sqrt(b0);
        const double side = std::floor(2 * lt + 1);
        CHECK(r.n == 33 / side);
        CHECK(r.chain_bound == doctest::Approx(r.n * std::exp(-side * 121.0 / 144)));
        CHECK(r.p_emp <= r.chain_bound + 3 * r.sigma);
        CHECK_THROWS_AS(lifshitz_probe(u, m, p, 17, 10, 4), Error);
    }

    TEST_CASE("large disorder: the critical BV norm balances the inequality") {
        const auto u = zoo::pair();
        const auto lead = find_leading_index(u);
        const MSAParameters p{1, 1.5, 0.8, 0.5, 0.01, 20, 0};
        const auto r = large_disorder_probe(u, lead, DisorderModel::uniform(0, 50), p);
        CHECK(r.C1 == doctest::Approx(r.C1_hat * 0.04));
        CHECK(r.C1_hat == doctest::Approx(2 * uniform_wegner_constant(u, lead)));
        CHECK(r.max_bv_negative > r.max_bv_positive);
        // rhs is linear in the BV norm, so rhs * max_bv = bv * target
        CHECK(r.rhs_negative * r.max_bv_negative == doctest::Approx(0.04 * r.target).epsilon(1e-9));
        CHECK(r.satisfies_negative == (0.04 <= r.max_bv_negative));
    }

    TEST_CASE("epsilon_l is positive beyond l14*") {
        const auto u = zoo::delta1(1.0);
        const auto m = DisorderModel::uniform(0, 1);
        const double l14 = l14_star(u, m, 1.0);
        for (double l = l14 * 1.001; l < l14 * 50; l *= 1.3) CHECK(epsilon_l(u, m, 1.0, l) > 0);
    }

    TEST_CASE("l0 report lists what it cannot evaluate") {
        const auto u = zoo::delta1();
        const auto lead = find_leading_index(u);
        const MSAParameters p{10, 1.5, 0.8, 0.5, 1, 1e12, 0};
        const auto r = eval_l0(u, lead, DisorderModel::uniform(0, 1), p, 1.9, 0.5);
        CHECK(r.value >= r.first_term);
        CHECK(r.value >= r.l_star);
        CHECK(r.not_computed.size() == 2);
        CHECK(std::isinf(eval_l0(u, lead, DisorderModel::uniform(0, 1), p, 1.0, 0.5).first_term));
    }
}

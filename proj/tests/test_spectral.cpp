#include <doctest.h>

#include <cmath>

#include "alloymsa/error.hpp"
#include "alloymsa/spectral.hpp"
#include "zoo.hpp"

#ifdef ALLOYMSA_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace alloymsa;

namespace {

BoxOperator random_operator(zoo::Gen& g, int d, double l, std::uint64_t seed) {
    const auto u = g.potential(d, 1, 1.0);
    const Box box(LatticePoint(d), l);
    const auto c = sample_configuration(DisorderModel::uniform(0, 3), Box(LatticePoint(d), l + 2), seed);
    return restrict_hamiltonian(u, c, box, BoundaryKind::dirichlet_truncation);
}

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("eigensolve residual and counts") {
        zoo::Gen g(1);
        const auto op = random_operator(g, 2, 3, 7);
        const auto s = eigensolve(op, true);
        CHECK(s.residual <= 1e-10);
        CHECK(s.eigenvalues.size() == op.size());
        const double mid = 0.5 * (s.eigenvalues[10] + s.eigenvalues[11]);
        const Interval all{s.eigenvalues.front(), s.eigenvalues.back()};
        CHECK(count_in(s.eigenvalues, all) == op.size());
        CHECK(count_in(s.eigenvalues, {all.lo, mid}) + count_in(s.eigenvalues, {mid, all.hi}) == op.size());
        CHECK(count_in(s.eigenvalues, {s.eigenvalues[3], s.eigenvalues[3]}) >= 1);
        CHECK(count_eigenvalues_in(op, {mid, mid}) == 0);
    }

    TEST_CASE("asymmetric input is rejected") {
        zoo::Gen g(2);
        auto op = random_operator(g, 1, 3, 1);
        op.matrix(0, 1) += 1e-6;
        CHECK_THROWS_AS(eigensolve(op, false), Error);
    }

    TEST_CASE("distance to spectrum") {
        const std::vector<double> s{-1, 0.5, 2};
        CHECK(distance_to_spectrum(s, 0.4) == doctest::Approx(0.1));
        CHECK(distance_to_spectrum(s, 5) == doctest::Approx(3));
        CHECK(distance_to_spectrum(s, -3) == doctest::Approx(2));
    }

    TEST_CASE("Green's function: LU and spectral forms agree") {
        zoo::Gen g(3);
        for (int rep = 0; rep < 10; ++rep) {
            const auto op = random_operator(g, g.integer(1, 2), 3, 100 + rep);
            const auto spec = eigensolve(op, true);
            const double E = spec.eigenvalues[2] + 0.37 * (spec.eigenvalues[3] - spec.eigenvalues[2]);
            const GreensSolver gs(op, E);
            const SpectralResolvent sr(op, spec);
            const auto x = op.box.point(0);
            const auto col = gs.column(x);
            for (std::size_t i = 0; i < op.size(); ++i)
                CHECK(col[i] == doctest::Approx(sr(E, i, 0)).epsilon(1e-8).scale(1));
        }
    }

#ifdef ALLOYMSA_HAVE_EIGEN
    TEST_CASE("Green's function against an Eigen inverse") {
        zoo::Gen g(4);
        const auto op = random_operator(g, 2, 2, 9);
        const std::size_t n = op.size();
        Eigen::MatrixXd a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = op.matrix(i, j);
        const double E = 0.123;
        a -= E * Eigen::MatrixXd::Identity(n, n);
        const Eigen::MatrixXd inv = a.inverse();
        const GreensSolver gs(op, E);
        for (std::size_t j = 0; j < n; j += 5) {
            const auto col = gs.column(op.box.point(j));
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(col[i] - inv(i, j)) <= 1e-9 * (1 + std::abs(inv(i, j))));
        }
    }
#endif

    TEST_CASE("resonant energies are refused") {
        zoo::Gen g(5);
        const auto op = random_operator(g, 1, 4, 3);
        const auto ev = eigenvalues(op);
        try {
            GreensSolver gs(op, ev[4]);
            FAIL("expected resonant_energy");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::resonant_energy);
        }
    }

    TEST_CASE("geometric resolvent identity") {
        zoo::Gen g(6);
        for (int rep = 0; rep < 20; ++rep) {
            const int d = g.integer(1, 2);
            const auto op = random_operator(g, d, 4, 200 + rep);
            const Box sub(g.point(d, 1), 2);
            LatticePoint v = op.box.center();
            v[0] = 4;
            const double E = g.real(-1, 6);
            try {
                CHECK(resolvent_identity_residual(op, sub, E, sub.center(), v) <= 1e-8);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::resonant_energy);
            }
        }
    }

    TEST_CASE("boundary reconstruction of eigenvectors") {
        zoo::Gen g(7);
        for (int rep = 0; rep < 20; ++rep) {
            const auto big = random_operator(g, 1, 8, 300 + rep);
            const auto spec = eigensolve(big, true);
            const std::size_t j = g.integer(0, static_cast<int>(big.size()) - 1);
            const auto psi = spec.eigenvectors->column(j);
            const Box sub(LatticePoint{g.integer(-2, 2)}, 3);
            const auto small = principal_restriction(big, sub);
            try {
                const double rec = boundary_reconstruct(small, spec.eigenvalues[j], big.box, psi);
                CHECK(std::abs(rec - psi[*big.box.index_of(sub.center())]) <= 1e-8);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::resonant_energy);
            }
        }
    }

    TEST_CASE("decay fit recovers a synthetic rate") {
        for (int d = 1; d <= 2; ++d) {
            const Box box(LatticePoint(d), 8);
            std::vector<double> psi(box.size());
            for (std::size_t i = 0; i < box.size(); ++i) psi[i] = std::exp(-0.5 * box.point(i).norm_inf());
            const auto f = decay_fit(box, psi);
            CHECK(f.rate == doctest::Approx(-0.5));
            CHECK(f.r2 == doctest::Approx(1.0));
            CHECK(f.center == LatticePoint(d));
        }
        const Box tiny(LatticePoint(1), 1);
        std::vector<double> psi(tiny.size(), 1.0);
        CHECK_THROWS_AS(decay_fit(tiny, psi, LatticePoint{0}), Error);
    }

    TEST_CASE("Green's function decays off the spectrum") {
        const Box box(LatticePoint(1), 10);
        const auto op = free_operator(box, BoundaryKind::dirichlet_truncation);
        // E below the band: decay rate acosh(1 - E/2) for the free chain
        const double E = -1.0;
        const double rate = greens_decay_rate(op, E, box.center());
        CHECK(rate < 0);
        CHECK(-rate == doctest::Approx(std::acosh(1.5)).epsilon(0.05));
    }
}

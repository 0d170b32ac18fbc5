#include <doctest.h>

#include <set>
#include <stdexcept>

#include "alloymsa/genfun.hpp"
#include "alloymsa/parallel.hpp"
#include "alloymsa/rng.hpp"
#include "alloymsa/wegner.hpp"
#include "zoo.hpp"

using namespace alloymsa;

TEST_SUITE("parallel") {
    TEST_CASE("serial and parallel trials agree bitwise") {
        auto fn = [](std::size_t t) {
            Rng rng(trial_seed(42, t));
            double s = 0;
            for (int i = 0; i < 100; ++i) s += rng.uniform();
            return s;
        };
        for (int threads : {1, 3, 8}) {
            set_thread_count(threads);
            CHECK(thread_count() == threads);
            CHECK(run_trials<double>(257, fn, Execution::serial) == run_trials<double>(257, fn, Execution::parallel));
        }
        set_thread_count(0);
    }

    TEST_CASE("the lowest failing trial is rethrown") {
        set_thread_count(4);
        try {
            run_trials<int>(
                100,
                [](std::size_t t) -> int {
                    if (t == 17 || t == 60) throw std::runtime_error(std::to_string(t));
                    return 0;
                },
                Execution::parallel);
            FAIL("expected a rethrow");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "17");
        }
        set_thread_count(0);
    }

    TEST_CASE("trial seeds are distinct") {
        std::set<std::uint64_t> seen;
        for (std::uint64_t t = 0; t < 10000; ++t) seen.insert(trial_seed(1, t));
        CHECK(seen.size() == 10000);
    }

    TEST_CASE("Monte Carlo estimates do not depend on the execution") {
        const auto u = zoo::pair();
        const auto lead = find_leading_index(u);
        const auto m = DisorderModel::uniform(0, 1);
        const auto ext = sample_configuration(m, Box(LatticePoint(1), 10), 3);
        const std::vector<Interval> I{{0.2, 0.9}};
        set_thread_count(4);
        const auto a = sample_eigenvalue_counts(u, lead, m, 3, I, ext, 64, 9, Execution::serial);
        const auto b = sample_eigenvalue_counts(u, lead, m, 3, I, ext, 64, 9, Execution::parallel);
        CHECK(a.counts == b.counts);
        set_thread_count(0);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qmachine/machine.hpp"

using namespace qmachine;

namespace {

const double kPi = std::acos(-1.0);

UnitVector3 vec(double x, double y, double z) { return UnitVector3::normalized(x, y, z); }

UnitVector3 random_unit(std::mt19937_64& gen) {
    std::normal_distribution<double> n;
    double x, y, z, n2;
    do {
        x = n(gen);
        y = n(gen);
        z = n(gen);
        n2 = x * x + y * y + z * z;
    } while (n2 < 1e-12);
    return UnitVector3::normalized(x, y, z);
}

MachineState state_at_angle(const UnitVector3& u, double theta) {
    (void)u; // u is the z axis in these tests
    return MachineState{UnitVector3::normalized(std::sin(theta), 0.0, std::cos(theta))};
}

} // namespace

TEST_CASE("unit vector factory normalizes and rejects near-zero") {
    const auto v = vec(3.0, 0.0, 4.0);
    CHECK(v.x() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(v.z() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(v.x() * v.x() + v.y() * v.y() + v.z() * v.z() - 1.0) < 1e-12);
    CHECK_THROWS_AS(UnitVector3::normalized(0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(UnitVector3::normalized(1e-13, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("angle_between on axis-aligned cases") {
    const auto x = vec(1, 0, 0), y = vec(0, 1, 0);
    CHECK(angle_between(x, x) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(angle_between(x, -x) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(angle_between(x, y) == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("angle_between is symmetric and clamps rounding") {
    std::mt19937_64 gen(7);
    for (int i = 0; i < 200; ++i) {
        const auto u = random_unit(gen);
        const auto v = random_unit(gen);
        CHECK(angle_between(u, v) == doctest::Approx(angle_between(v, u)).epsilon(1e-14));
        CHECK(angle_between(u, v) >= 0.0);
        CHECK(angle_between(u, v) <= kPi);
    }
}

TEST_CASE("outcome probabilities reproduce the quarter case at epsilon 1") {
    const auto u = vec(0, 0, 1);
    const EpsilonMeasurement m(u, 1.0);
    const auto p = state_at_angle(u, 2.0 * kPi / 3.0); // cos = -1/2
    const auto dist = outcome_probabilities(m, p);
    CHECK(dist.p1() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(dist.p2() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("eigenstate gives probability one") {
    const auto u = vec(0, 0, 1);
    const EpsilonMeasurement m(u, 1.0);
    CHECK(outcome_probabilities(m, MachineState{u}).p1() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("epsilon 1 matches cos^2(theta/2) over random pairs") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 1000; ++i) {
        const auto u = random_unit(gen);
        const auto v = random_unit(gen);
        const EpsilonMeasurement m(u, 1.0);
        const auto dist = outcome_probabilities(m, MachineState{v});
        const double half = angle_between(u, v) / 2.0;
        CHECK(std::abs(dist.p1() - std::cos(half) * std::cos(half)) < 1e-12);
        CHECK(std::abs(dist.p2() - std::sin(half) * std::sin(half)) < 1e-12);
        CHECK(std::abs(dist.p1() + dist.p2() - 1.0) < 1e-12);
    }
}

TEST_CASE("epsilon 0.5, c 0.25 against independent break-point Monte Carlo") {
    // Oracle: draw uniform break points on [-eps, eps] with an RNG unrelated
    // to the library stream; the particle goes to u iff the break falls below
    // the projection.
    const double eps = 0.5, c = 0.25;
    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> unif(-eps, eps);
    const int n = 1000000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        if (unif(gen) <= c) ++hits;
    }
    const double f = static_cast<double>(hits) / n;
    const double expected = 0.75;
    const double sigma = std::sqrt(expected * (1.0 - expected) / n);
    REQUIRE(std::abs(f - expected) < 4.0 * sigma); // oracle agrees with hand value

    const auto u = vec(0, 0, 1);
    const EpsilonMeasurement m(u, eps);
    const double theta = std::acos(c);
    const auto dist = outcome_probabilities(m, state_at_angle(u, theta));
    CHECK(dist.p1() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("epsilon 0 is the deterministic sign rule") {
    const auto u = vec(0, 0, 1);
    const EpsilonMeasurement m(u, 0.0);
    CHECK(outcome_probabilities(m, state_at_angle(u, std::acos(0.3))).p1() == 1.0);
    CHECK(outcome_probabilities(m, state_at_angle(u, std::acos(-0.3))).p1() == 0.0);
    // c = 0 tie resolves to O1
    CHECK(outcome_probabilities(m, state_at_angle(u, kPi / 2)).p1() == 1.0);
}

TEST_CASE("sample_break_point maps the unit draw onto [-eps, eps]") {
    const auto u = vec(0, 0, 1);
    CHECK(sample_break_point(EpsilonMeasurement(u, 1.0), 0.5).s == doctest::Approx(0.0));
    CHECK(sample_break_point(EpsilonMeasurement(u, 1.0), 0.0).s == doctest::Approx(-1.0));
    CHECK(sample_break_point(EpsilonMeasurement(u, 0.25), 1.0 - 1e-16).s ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(sample_break_point(EpsilonMeasurement(u, 0.0), 0.7).s == 0.0);
}

TEST_CASE("resolve_outcome follows the break position against the projection") {
    const auto u = vec(0, 0, 1);
    const EpsilonMeasurement m(u, 1.0);
    const auto orthogonal = state_at_angle(u, kPi / 2); // c = 0
    CHECK(resolve_outcome(m, orthogonal, BreakPoint{-0.9}) == Outcome::O1);
    CHECK(resolve_outcome(m, orthogonal, BreakPoint{0.9}) == Outcome::O2);
    const auto tilted = state_at_angle(u, std::acos(0.5));
    const double projection = u.dot(tilted.direction);
    CHECK(resolve_outcome(m, tilted, BreakPoint{projection}) == Outcome::O1); // tie convention
    CHECK_THROWS_AS(resolve_outcome(EpsilonMeasurement(u, 0.5), orthogonal, BreakPoint{0.9}),
                    std::invalid_argument);
}

TEST_CASE("collapse lands on the measurement axis") {
    const auto u = vec(0, 1, 0);
    const EpsilonMeasurement m(u, 1.0);
    CHECK(collapse(m, Outcome::O1).direction == u);
    CHECK(collapse(m, Outcome::O2).direction == -u);
}

TEST_CASE("measure hand-trace: c 0 with draw 0.25 gives O1") {
    const auto u = vec(0, 0, 1);
    const EpsilonMeasurement m(u, 1.0);
    const auto [o, post] = measure(m, state_at_angle(u, kPi / 2), 0.25); // s = -0.5 < 0
    CHECK(o == Outcome::O1);
    CHECK(post.direction == u);
}

TEST_CASE("measure on the eigenstate always returns O1") {
    const auto u = vec(0, 0, 1);
    const EpsilonMeasurement m(u, 1.0);
    for (double draw : {0.0, 0.3, 0.7, 0.999999}) {
        CHECK(measure(m, MachineState{u}, draw).first == Outcome::O1);
    }
}

TEST_CASE("repeated measurement is idempotent for every epsilon") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double eps : {0.0, 0.3, 0.7, 1.0}) {
        for (int i = 0; i < 100; ++i) {
            const auto u = random_unit(gen);
            const auto v = random_unit(gen);
            const EpsilonMeasurement m(u, eps);
            const auto [first, post] = measure(m, MachineState{v}, unif(gen));
            const auto [second, post2] = measure(m, post, unif(gen));
            CHECK(first == second);
            CHECK(post.direction == post2.direction);
        }
    }
}

TEST_CASE("break-point law: O1 frequency over the draw equals the analytic probability") {
    // Exact integration of the indicator over a uniform grid of draws.
    const auto u = vec(0, 0, 1);
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double eps = (trial % 5 == 0) ? 1.0 : unif(gen);
        const auto v = random_unit(gen);
        const EpsilonMeasurement m(u, eps);
        const MachineState p{v};
        const double p1 = outcome_probabilities(m, p).p1();
        const int grid = 20001;
        int o1 = 0;
        for (int i = 0; i < grid; ++i) {
            const double d = (i + 0.5) / grid;
            if (resolve_outcome(m, p, sample_break_point(m, d)) == Outcome::O1) ++o1;
        }
        CHECK(std::abs(static_cast<double>(o1) / grid - p1) < 1.0 / grid + 1e-12);
    }
}

TEST_CASE("p1 monotone in cos theta for fixed epsilon") {
    const auto u = vec(0, 0, 1);
    for (double eps : {0.0, 0.2, 0.6, 1.0}) {
        const EpsilonMeasurement m(u, eps);
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double c = -1.0 + 2.0 * i / 100.0;
            const double p1 = outcome_probabilities(m, state_at_angle(u, std::acos(c))).p1();
            CHECK(p1 >= prev - 1e-12);
            prev = p1;
        }
    }
}

TEST_CASE("antipodal symmetry of the outcome distribution") {
    std::mt19937_64 gen(41);
    for (double eps : {0.0, 0.5, 1.0}) {
        for (int i = 0; i < 100; ++i) {
            const auto u = random_unit(gen);
            const auto v = random_unit(gen);
            const double p1 = outcome_probabilities(EpsilonMeasurement(u, eps), MachineState{v}).p1();
            const double q2 = outcome_probabilities(EpsilonMeasurement(-u, eps), MachineState{v}).p2();
            // The two sides of the symmetry may disagree only on the
            // measure-zero tie at c = 0.
            if (std::abs(u.dot(v)) > 1e-9 || eps > 0.0) {
                CHECK(p1 == doctest::Approx(q2).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("epsilon outside [0,1] is rejected") {
    const auto u = vec(0, 0, 1);
    CHECK_THROWS_AS(EpsilonMeasurement(u, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(EpsilonMeasurement(u, 1.1), std::invalid_argument);
}

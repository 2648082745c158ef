#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <concord/expectation.hpp>
#include <concord/rng.hpp>

using namespace concord;

namespace {

std::vector<double> random_unit_vector(Rng& rng, std::size_t m) {
    std::vector<double> v(m);
    for (auto& x : v) x = rng.next_double();
    return v;
}

}  // namespace

TEST_SUITE("expectation") {

TEST_CASE("mode names round trip and reject junk") {
    for (auto mode : {ExpectationMode::closed_form, ExpectationMode::enumeration,
                      ExpectationMode::monte_carlo})
        CHECK(expectation_mode_from_string(to_string(mode)) == mode);
    CHECK(expectation_mode_from_string("mc") == ExpectationMode::monte_carlo);
    CHECK(expectation_mode_from_string("enum") == ExpectationMode::enumeration);
    CHECK(expectation_mode_from_string("closed") == ExpectationMode::closed_form);
    CHECK_THROWS_AS(expectation_mode_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("config validation") {
    ExpectationConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.mode = ExpectationMode::monte_carlo;
    cfg.h = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.h = 10;
    cfg.mode = ExpectationMode::enumeration;
    cfg.enumeration_limit = 11;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("single pair expectation is one minus the absolute difference") {
    const std::vector<double> p{0.8};
    const std::vector<double> q{0.3};
    CHECK(expected_ndc_closed_form(p, q) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(expected_ndc_enumeration(p, q) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("two pair expectation averages both arrangements") {
    const std::vector<double> p{1.0, 0.0};
    const std::vector<double> q{0.5, 0.5};
    // every pairing of an entry of p with an entry of q differs by 0.5
    CHECK(expected_ndc_closed_form(p, q) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(expected_ndc_enumeration(p, q) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("identical constant vectors have expectation one") {
    const std::vector<double> p{0.7, 0.7, 0.7};
    CHECK(expected_ndc_closed_form(p, p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("closed form equals exhaustive enumeration") {
    Rng rng(42);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t m = 1 + rng.next_below(7);
        const auto p = random_unit_vector(rng, m);
        const auto q = random_unit_vector(rng, m);
        CHECK(std::abs(expected_ndc_closed_form(p, q) - expected_ndc_enumeration(p, q)) <=
              1e-12);
    }
}

TEST_CASE("enumeration enforces its size cap") {
    Rng rng(1);
    const auto p = random_unit_vector(rng, 9);
    const auto q = random_unit_vector(rng, 9);
    CHECK_THROWS_AS(expected_ndc_enumeration(p, q, 8), std::invalid_argument);
    CHECK_NOTHROW(expected_ndc_enumeration(random_unit_vector(rng, 5),
                                           random_unit_vector(rng, 5), 8));
}

TEST_CASE("duplicate values still average over all arrangements") {
    // q has tied entries; the mean must weight arrangements, not distinct
    // multisets, to match the closed form
    const std::vector<double> p{0.1, 0.9, 0.4};
    const std::vector<double> q{0.5, 0.5, 0.2};
    CHECK(std::abs(expected_ndc_enumeration(p, q) - expected_ndc_closed_form(p, q)) <= 1e-15);
}

TEST_CASE("monte carlo is deterministic per seed and sensitive to it") {
    Rng rng(7);
    const auto p = random_unit_vector(rng, 40);
    const auto q = random_unit_vector(rng, 40);
    const auto first = expected_ndc_monte_carlo(p, q, 500, 123);
    const auto again = expected_ndc_monte_carlo(p, q, 500, 123);
    CHECK(first.estimate == again.estimate);
    CHECK(first.std_error == again.std_error);
    const auto other = expected_ndc_monte_carlo(p, q, 500, 124);
    CHECK(first.estimate != other.estimate);
}

TEST_CASE("monte carlo result does not depend on the worker count") {
    Rng rng(11);
    const auto p = random_unit_vector(rng, 60);
    const auto q = random_unit_vector(rng, 60);
    setenv("CONCORD_THREADS", "1", 1);
    const auto serial = expected_ndc_monte_carlo(p, q, 200, 5);
    setenv("CONCORD_THREADS", "4", 1);
    const auto parallel = expected_ndc_monte_carlo(p, q, 200, 5);
    unsetenv("CONCORD_THREADS");
    CHECK(serial.estimate == parallel.estimate);
    CHECK(serial.std_error == parallel.std_error);
}

TEST_CASE("monte carlo tracks the closed form within a few standard errors") {
    Rng rng(21);
    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t m = 30 + rng.next_below(100);
        const auto p = random_unit_vector(rng, m);
        const auto q = random_unit_vector(rng, m);
        const double exact = expected_ndc_closed_form(p, q);
        const auto mc = expected_ndc_monte_carlo(p, q, 2000, derive_seed(21, rep));
        REQUIRE(mc.std_error > 0.0);
        CHECK(std::abs(mc.estimate - exact) <= 6.0 * mc.std_error);
    }
}

TEST_CASE("single sample estimate has zero reported error") {
    Rng rng(3);
    const auto p = random_unit_vector(rng, 10);
    const auto q = random_unit_vector(rng, 10);
    const auto mc = expected_ndc_monte_carlo(p, q, 1, 9);
    CHECK(mc.std_error == 0.0);
}

TEST_CASE("mismatched lengths are rejected") {
    const std::vector<double> p{0.1, 0.2};
    const std::vector<double> q{0.1};
    CHECK_THROWS_AS(expected_ndc_closed_form(p, q), std::invalid_argument);
    CHECK_THROWS_AS(expected_ndc_enumeration(p, q), std::invalid_argument);
    CHECK_THROWS_AS(expected_ndc_monte_carlo(p, q, 10, 0), std::invalid_argument);
}

}

#include <doctest.h>

#include "quantbench/metrics.hpp"
#include "quantbench/rng.hpp"

using namespace quantbench;

namespace {

Distribution random_simplex(Rng& rng, std::size_t c) {
    std::vector<double> v(c);
    for (double& x : v) {
        x = -std::log(1.0 - rng.next_double());
    }
    return make_distribution(v);
}

} // namespace

TEST_CASE("bray_curtis basic values") {
    Distribution a({0.5, 0.3, 0.2});
    CHECK(bray_curtis(a, a) == 0.0);
    CHECK(bray_curtis(Distribution({1, 0}), Distribution({0, 1})) == 1.0);
    CHECK(bray_curtis(a, Distribution({0.4, 0.4, 0.2})) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(bray_curtis(a, Distribution({0.5, 0.5})), DimensionMismatchError);
}

TEST_CASE("bray_curtis symmetry and triangle inequality") {
    Rng rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t c = 2 + trial % 5;
        Distribution a = random_simplex(rng, c);
        Distribution b = random_simplex(rng, c);
        Distribution m = random_simplex(rng, c);
        CHECK(bray_curtis(a, b) == bray_curtis(b, a));
        CHECK(bray_curtis(a, b) <= bray_curtis(a, m) + bray_curtis(m, b) + 1e-12);
        CHECK(bray_curtis(a, b) >= 0.0);
        CHECK(bray_curtis(a, b) <= 1.0);
    }
}

TEST_CASE("aggregate mean and standard error") {
    AggregateError single = aggregate({{"c0", "cc", {}, 0.05}});
    CHECK(single.mean == 0.05);
    CHECK(single.se == 0.0);
    CHECK(single.n_cells == 1);

    AggregateError flat =
        aggregate({{"c0", "cc", {}, 0.1}, {"c1", "cc", {}, 0.1}, {"c2", "cc", {}, 0.1}});
    CHECK(flat.mean == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(flat.se == doctest::Approx(0.0).epsilon(1e-12));

    AggregateError spread = aggregate({{"c0", "cc", {}, 0.02},
                                       {"c1", "cc", {}, 0.04},
                                       {"c2", "cc", {}, 0.06},
                                       {"c3", "cc", {}, 0.08}});
    CHECK(spread.mean == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(spread.se == doctest::Approx(0.012909944487358056).epsilon(1e-9));
}

TEST_CASE("aggregate input checks") {
    CHECK_THROWS_AS(aggregate({}), EmptyInputError);
    CHECK_THROWS_AS(aggregate({{"c0", "cc", {}, 0.1}, {"c1", "em", {}, 0.1}}),
                    InvalidArgumentError);
}

TEST_CASE("aggregate is permutation invariant") {
    std::vector<CellError> errors{{"c0", "cc", 25, 0.02},
                                  {"c1", "cc", 25, 0.09},
                                  {"c2", "cc", 25, 0.04}};
    AggregateError a = aggregate(errors);
    std::swap(errors[0], errors[2]);
    AggregateError b = aggregate(errors);
    CHECK(a.mean == b.mean);
    CHECK(a.se == b.se);
}

#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "lipext/metric.hpp"

using namespace lipext;

namespace {

std::vector<double> path_metric() {
    return {0, 1, 2, 1, 0, 1, 2, 1, 0};
}

}  // namespace

TEST_CASE("metric space validation") {
    CHECK_NOTHROW(FiniteMetricSpace({"a", "b", "c"}, path_metric()));
    // duplicate labels
    CHECK_THROWS_AS(FiniteMetricSpace({"a", "a", "c"}, path_metric()), std::invalid_argument);
    // asymmetric
    CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {0, 1, 2, 0}), std::invalid_argument);
    // zero off-diagonal
    CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {0, 0, 0, 0}), std::invalid_argument);
    // nonzero diagonal
    CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {1, 1, 1, 0}), std::invalid_argument);
    // triangle inequality violated: d(a,c) > d(a,b) + d(b,c)
    CHECK_THROWS_AS(FiniteMetricSpace({"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0}),
                    std::invalid_argument);
    // wrong matrix size
    CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {0, 1, 1}), std::invalid_argument);
    // no points at all
    CHECK_THROWS_AS(FiniteMetricSpace({}, {}), std::invalid_argument);
}

TEST_CASE("index lookup") {
    const FiniteMetricSpace space({"a", "b", "c"}, path_metric());
    CHECK(space.index_of("b") == 1);
    CHECK_THROWS_AS(space.index_of("z"), std::invalid_argument);
    CHECK(space.size() == 3);
    CHECK(space.d(0, 2) == 2.0);
    CHECK(space.labels()[2] == "c");
}

TEST_CASE("metric closure repairs triangle violations") {
    // raw costs with a shortcut: direct a-c costs 5 but a-b-c costs 2
    const auto closed = metric_closure({0, 1, 5, 1, 0, 1, 5, 1, 0}, 3);
    CHECK(closed[0 * 3 + 2] == 2.0);
    CHECK(closed[2 * 3 + 0] == 2.0);
    CHECK_NOTHROW(FiniteMetricSpace({"a", "b", "c"}, closed));
    CHECK_THROWS_AS(metric_closure({0, 0, 0, 0}, 2), std::invalid_argument);
}

TEST_CASE("partial function validation") {
    const FiniteMetricSpace space({"a", "b", "c"}, path_metric());
    const auto d = make_descriptor(SpaceKind::RealSup, 1);
    PartialFunction f{d, {0, 2}, {make_element(d, {0.0}), make_element(d, {1.0})}};
    CHECK_NOTHROW(validate_partial_function(space, f));

    PartialFunction dup = f;
    dup.subset = {0, 0};
    CHECK_THROWS_AS(validate_partial_function(space, dup), std::invalid_argument);

    PartialFunction oob = f;
    oob.subset = {0, 7};
    CHECK_THROWS_AS(validate_partial_function(space, oob), std::invalid_argument);

    PartialFunction mismatch = f;
    mismatch.values[0] = make_element(make_descriptor(SpaceKind::RealSup, 2), {0.0, 0.0});
    CHECK_THROWS_AS(validate_partial_function(space, mismatch), std::invalid_argument);

    PartialFunction uneven = f;
    uneven.values.pop_back();
    CHECK_THROWS_AS(validate_partial_function(space, uneven), std::invalid_argument);
}

TEST_CASE("Lipschitz constant of partial and full assignments") {
    const FiniteMetricSpace space({"a", "b", "c"}, path_metric());
    const auto d = make_descriptor(SpaceKind::RealSup, 1);
    const PartialFunction f{d, {0, 2}, {make_element(d, {0.0}), make_element(d, {1.0})}};
    CHECK(lipschitz_constant(space, f) == doctest::Approx(0.5));

    const std::vector<SpaceElement> full = {make_element(d, {0.0}), make_element(d, {1.0}),
                                            make_element(d, {1.0})};
    CHECK(lipschitz_constant(space, full) == doctest::Approx(1.0));
    CHECK(sup_norm(full) == doctest::Approx(1.0));

    // fewer than two points: constant zero
    const PartialFunction single{d, {1}, {make_element(d, {5.0})}};
    CHECK(lipschitz_constant(space, single) == 0.0);
}

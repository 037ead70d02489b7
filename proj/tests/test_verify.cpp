#include <doctest.h>

#include "charpoly/errors.hpp"
#include "charpoly/verify.hpp"

using namespace charpoly;

TEST_CASE("criteria are deterministic for a fixed seed") {
    std::vector<OutputRecord> a, b;
    const CheckResult x = acceptance_criterion(9, 4, &a);
    const CheckResult y = acceptance_criterion(9, 4, &b);
    CHECK(x.pass);
    CHECK(x.observed == y.observed);
    CHECK(x.note == y.note);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].stderr_ == b[i].stderr_);
    }
}

TEST_CASE("records carry route labels") {
    std::vector<OutputRecord> out;
    acceptance_criterion(7, 1, &out);
    REQUIRE(!out.empty());
    for (const auto& r : out) CHECK(!route_name(r.route).empty());
    CHECK(route_name(Route::toeplitz) == "toeplitz");
}

TEST_CASE("the unattainable criterion is flagged") {
    const CheckResult c = acceptance_criterion(12, 1);
    CHECK_FALSE(c.pass);
    CHECK(c.known_unattainable);
    CHECK_THROWS_AS(acceptance_criterion(0, 1), DomainError);
    CHECK_THROWS_AS(acceptance_criterion(14, 1), DomainError);
}

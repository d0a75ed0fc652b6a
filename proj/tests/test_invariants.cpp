#include <doctest.h>

#include "modinv/error.hpp"
#include "modinv/invariants.hpp"

using namespace modinv;

namespace {
Element E(const Context& c, const char* text) { return parse_element(c, text); }
}  // namespace

TEST_CASE("small brackets")
{
    Context c(3, 2);
    CHECK(bracket(c, BracketSpec{0, {0}, 1}) == E(c, "y1"));
    CHECK(bracket(c, BracketSpec{0, {0}, 1}) == dickson_L(c, 1));
    CHECK(bracket(c, BracketSpec{1, {}, 1}) == E(c, "x1"));
    CHECK(bracket(c, BracketSpec{0, {0, 1}, 2}) == E(c, "y1*y2^3") - E(c, "y1^3*y2"));
    CHECK(bracket(c, BracketSpec{0, {0, 1}, 2}) == dickson_L(c, 2));
    CHECK(bracket(c, BracketSpec{1, {1}, 2}) == E(c, "x1*y2^3") - E(c, "x2*y1^3"));
    CHECK(bracket(c, std::vector<unsigned>{1, 0}) == -dickson_L(c, 2));
    // Repeated exponents give a zero determinant.
    CHECK(bracket(c, std::vector<unsigned>{1, 1}).is_zero());
    CHECK_THROWS_AS(bracket(c, BracketSpec{0, {0, 1, 2}, 3}), Error);
    CHECK_THROWS_AS(bracket(c, BracketSpec{1, {0, 1}, 2}), Error);
}

TEST_CASE("Dickson invariants")
{
    for (std::uint32_t p : {3u, 5u}) {
        Context c(p, 3);
        for (int n = 1; n <= 3; ++n) {
            CHECK(dickson_q(c, n, n) == Element::constant(c, 1));
            for (int s = 0; s < n; ++s)
                CHECK(dickson_q(c, n, s) * dickson_L(c, n) == dickson_Ls(c, n, s));
            CHECK(dickson_q(c, n, 0) == pow(dickson_L(c, n), p - 1));
        }
        CHECK(dickson_q(c, 1, 0) == pow(Element::y(c, 1), p - 1));
    }
    Context c(3, 2);
    CHECK(dickson_q(c, 2, 1) * dickson_L(c, 2) == dickson_Ls(c, 2, 1));
    CHECK_THROWS_AS(dickson_q(c, 2, 3), Error);
    CHECK_THROWS_AS(dickson_q(c, 3, 0), Error);
}

TEST_CASE("Mui V")
{
    Context c(3, 3);
    CHECK(mui_v(c, 1) == E(c, "y1"));
    for (int m = 1; m <= 3; ++m)
        CHECK(mui_v(c, m) * dickson_L(c, m - 1) == dickson_L(c, m));
    CHECK_THROWS_AS(mui_v(c, 0), Error);
}

TEST_CASE("Mui M and M^(d)")
{
    Context c(3, 2);
    CHECK(mui_m(c, 1, {0}) == E(c, "x1"));
    CHECK(mui_m(c, 2, {0}) == E(c, "x1*y2^3") - E(c, "x2*y1^3"));
    CHECK(mui_m(c, 2, {0}, 2) == mui_m(c, 2, {0}) * dickson_L(c, 2));
    CHECK(mui_m(c, 2, {0, 1}) == E(c, "x1*x2"));
    CHECK_THROWS_AS(mui_m(c, 2, {1, 0}), Error);
    CHECK_THROWS_AS(mui_m(c, 2, {2}), Error);
}

TEST_CASE("expansion of a bracket in the M basis")
{
    Context c(3, 3);
    CHECK(mui_expansion_check(c, BracketSpec{1, {1}, 2}));
    CHECK(mui_expansion_check(c, BracketSpec{1, {1, 2}, 3}));
    CHECK(mui_expansion_check(c, BracketSpec{2, {2}, 3}));
}

TEST_CASE("named invariants")
{
    Context c(3, 3);
    CHECK(build(c, inv::Q{2, 1}) == dickson_q(c, 2, 1));
    CHECK(build(c, inv::Md{2, 2, {0}}) == mui_m(c, 2, {0}, 2));
    CHECK(to_string(inv::Q{2, 1}) == "Q(2,1)");
    CHECK_THROWS_AS(build(c, inv::L{4}), Error);
}

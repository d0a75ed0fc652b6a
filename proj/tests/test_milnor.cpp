#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "modinv/error.hpp"
#include "modinv/milnor.hpp"

using namespace modinv;

namespace {
Element E(const Context& c, const char* text) { return parse_element(c, text); }
}  // namespace

TEST_CASE("operations on generators")
{
    Context c(3, 2);
    CHECK(apply(MilnorOp({0}, {}), E(c, "x1")) == E(c, "y1"));
    CHECK(apply(MilnorOp::delta(1), E(c, "y2")) == E(c, "y2^3"));
    CHECK(apply(MilnorOp({}, {2}), E(c, "y1")).is_zero());
    CHECK(apply(MilnorOp({0}, {}), E(c, "x1*x2")) == E(c, "y1*x2") - E(c, "x1*y2"));
    CHECK(apply(MilnorOp(), E(c, "x1*y2 + y1")) == E(c, "x1*y2 + y1"));
}

TEST_CASE("St_u")
{
    Context c(3, 2);
    CHECK(st_u(1, E(c, "x2")) == E(c, "y2^3"));
    CHECK(st_u(0, E(c, "y1^2*y2 + y2^5")).is_zero());
    const Element a = E(c, "x1*x2*y1");
    CHECK(st_u(0, a) == E(c, "y1^2*x2") - E(c, "x1*y1*y2"));
    CHECK(st_u(0, a) == apply(MilnorOp::st_u(0), a));
    CHECK(st_u(0, a) == checks::naive_apply(MilnorOp::st_u(0), a));
}

TEST_CASE("St^Delta_i")
{
    Context c(3, 2);
    CHECK(st_delta(1, E(c, "x1")).is_zero());
    CHECK(st_delta(2, E(c, "x2")).is_zero());
    CHECK(st_delta(1, E(c, "y1*y2")) == E(c, "y1^3*y2 + y1*y2^3"));
    CHECK(st_delta(1, Element::constant(c, 2)).is_zero());
    CHECK(st_delta(2, E(c, "y1*y2")) == apply(MilnorOp::delta(2), E(c, "y1*y2")));
    CHECK_THROWS_AS(MilnorOp::delta(0), Error);
}

TEST_CASE("P^r")
{
    Context c(3, 2);
    const Element a = E(c, "x1*y2^4 + y1^2*x2*y2");
    CHECK(steenrod_p(0, a) == a);
    CHECK(steenrod_p(1, E(c, "y1")) == E(c, "y1^3"));
    // P^r on y^m is binom(m,r) y^{m + r(p-1)}.
    CHECK(steenrod_p(2, E(c, "y1^4")) == E(c, "y1^8").scaled(6));
    CHECK(steenrod_p(3, E(c, "y1^3")) == E(c, "y1^9"));
    for (std::uint64_t r = 1; r <= 6; ++r)
        CHECK(steenrod_p(r, a) == checks::naive_apply(MilnorOp::steenrod_p(r), a));
}

TEST_CASE("dimension shift")
{
    CHECK(MilnorOp::delta(2).dimension_shift(3) == 16u);
    CHECK(MilnorOp({0}, {}).dimension_shift(3) == 1u);
    CHECK(MilnorOp({0}, {}).dimension_shift(7) == 1u);
    CHECK(MilnorOp({1}, {1}).dimension_shift(3) == 9u);
}

TEST_CASE("normalization of the operation")
{
    CHECK(MilnorOp({}, {0, 0}) == MilnorOp());
    CHECK(MilnorOp({}, {1, 0}) == MilnorOp::steenrod_p(1));
    CHECK_THROWS_AS(MilnorOp({1, 0}, {}), Error);
    CHECK_THROWS_AS(MilnorOp({1, 1}, {}), Error);
}

TEST_CASE("Cartan S-splits carry their signs")
{
    const auto splits = cartan_splits({0, 1});
    CHECK(splits.size() == 4);
}

TEST_CASE("general St^{S,R} agrees with the naive recursion")
{
    std::mt19937_64 rng(5);
    for (std::uint32_t p : {3u, 5u}) {
        Context c(p, 2);
        const std::vector<MilnorOp> ops{MilnorOp({0, 1}, {}), MilnorOp({0}, {1}), MilnorOp({1}, {0, 1}),
                                        MilnorOp({}, {2, 1}), MilnorOp({0, 2}, {1, 1}), MilnorOp({}, {0, 0, 1})};
        for (int t = 0; t < 6; ++t) {
            const Element a = checks::random_homogeneous(rng, c, 2 + rng() % 12, 3, 8);
            for (const auto& op : ops)
                CHECK(apply(op, a) == checks::naive_apply(op, a));
        }
    }
}

TEST_CASE("operations commute with linear substitution")
{
    std::mt19937_64 rng(9);
    Context c(5, 3);
    for (int t = 0; t < 4; ++t) {
        const MatrixFp g = checks::random_invertible(rng, c);
        const Element a = checks::random_homogeneous(rng, c, 5, 3, 2);
        const MilnorOp op({0}, {1});
        CHECK(apply_matrix(g, apply(op, a)) == apply(op, apply_matrix(g, a)));
    }
}

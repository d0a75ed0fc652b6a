#include <doctest.h>

#include <cstdint>
#include <vector>

#include "checks.hpp"
#include "modinv/error.hpp"
#include "modinv/fp_poly.hpp"
#include "modinv/padic.hpp"

using namespace modinv;
using namespace modinv::padic;
using V = std::vector<std::uint64_t>;

TEST_CASE("digits and Lucas")
{
    CHECK(digits(0, 3).empty());
    CHECK(digits(10, 3) == std::vector<unsigned>{1, 0, 1});
    CHECK(alpha(10, 3, 2) == 1u);
    CHECK(alpha(10, 3, -1) == 0u);
    CHECK(alpha(10, 3, 7) == 0u);
    // binom(10,3) = 120 = 0 mod 3 and 0 mod 5, 1 mod 7.
    CHECK(binomial_mod(10, 3, 3) == 0u);
    CHECK(binomial_mod(10, 3, 7) == 120 % 7);
    CHECK(binomial_mod(3, 5, 3) == 0u);
    for (std::uint64_t n = 0; n < 30; ++n) {
        std::uint64_t exact = 1;
        for (std::uint64_t k = 0; k <= n; ++k) {
            CHECK(binomial_mod(n, k, 5) == exact % 5);
            exact = k < n ? exact * (n - k) / (k + 1) : 0;
            if (exact > (1ull << 50))
                break;
        }
    }
    const std::uint64_t parts[] = {1, 1, 1};
    CHECK(multinomial_mod(parts, 5) == 6u % 5);
    CHECK(multinomial_mod(parts, 3) == 0u);
}

TEST_CASE("index set I")
{
    for (std::uint32_t p : {3u, 5u})
        for (unsigned u = 0; u < 4; ++u) {
            CHECK(index_set_I(p, u, u + 1) == V{0});
            CHECK(index_set_I(p, u, u + 2) == V{0});
        }
    CHECK(index_set_I(3, 0, 4) == V{0, 1, 3});
    CHECK(index_set_I(3, 0, 5) == V{0, 1, 3, 9, 10});
    CHECK(in_I(3, 0, 5, 10));
    CHECK_FALSE(in_I(3, 0, 5, 4));
}

TEST_CASE("index set J and its decomposition")
{
    for (std::uint32_t p : {3u, 5u})
        for (unsigned u = 0; u < 4; ++u) {
            for (unsigned v = u + 1; v <= u + 2; ++v)
                CHECK(index_set_J(p, u, v) == V{0});
            // The support window [u, v-3] is the single digit u here.
            const std::uint64_t pu = checked_pow(p, u);
            CHECK(index_set_J(p, u, u + 3) == V{0, pu});
        }
    CHECK(index_set_J(3, 0, 4) == V{0, 1, 3, 4});
    CHECK(index_set_J(3, 0, 5) == V{0, 1, 3, 4, 9, 10, 12});

    const auto d0 = j_decompose(3, 2, 7, 0);
    CHECK(d0.blocks.empty());
    CHECK(d0.parts == V{0});
    const auto d1 = j_decompose(3, 2, 7, 9 + 27);
    CHECK(d1.blocks == std::vector<unsigned>{2});
    CHECK(d1.parts == V{0, 0});
    CHECK_THROWS_AS(j_decompose(3, 0, 6, 2), Error);

    // Every member of J(0,9) reassembles.
    for (auto a : index_set_J(3, 0, 9))
        CHECK(j_decompose(3, 0, 9, a).reassemble(3) == a);
}

TEST_CASE("b and c")
{
    const std::uint32_t p = 3;
    CHECK(b_func(p, 0, 5, 0) == static_cast<std::int64_t>(geometric_span(p, 0, 5)));
    CHECK(geometric_span(p, 0, 5) == 1 + 3 + 9 + 27);
    CHECK(c_func(p, 0, 5, 0) == 0u);
    // a = 1 + 3 is one block at 0: b = 40 - 4*4 + 3 = 27, c = 0.
    CHECK(b_func(p, 0, 5, 4) == 27);
    CHECK(c_func(p, 0, 5, 4) == 0u);
    CHECK_THROWS_AS(b_func(p, 0, 5, 2), Error);
    // Transfer example b_{u,v+3}(a) = p^{v+1} + b_{u,v+2}(a).
    for (auto a : index_set_J(p, 0, 6))
        CHECK(b_func(p, 0, 7, a) == 3 * 3 * 3 * 3 * 3 + b_func(p, 0, 6, a));
    // c_{u,v+3}(p^v + a) = p^v + c_{u,v+1}(a).
    for (auto a : index_set_J(p, 0, 5))
        CHECK(c_func(p, 0, 7, 81 + a) == 81 + c_func(p, 0, 5, a));
}

TEST_CASE("set recursions and exhaustive uniqueness at small size")
{
    for (const auto& r : checks::run_padic_suites(3, 7)) {
        INFO(r.name << ": " << r.first_failure);
        CHECK(r.ok());
    }
}

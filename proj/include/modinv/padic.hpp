#pragma once

// Base-p digit combinatorics: Lucas-theorem multinomials and the digit
// constrained index sets I(u,v), J(u,v) with the J block decomposition.

#include <cstdint>
#include <span>
#include <vector>

namespace modinv::padic {

// Base-p digits of a, least significant first. digits(0) is empty.
std::vector<unsigned> digits(std::uint64_t a, std::uint32_t p);
// i-th base-p digit; 0 for i < 0 and beyond the top digit.
unsigned alpha(std::uint64_t a, std::uint32_t p, int i);

// multinomial(sum(parts); parts...) mod p via Lucas' theorem: the product of
// the digitwise multinomials, zero as soon as a digit column carries.
std::uint32_t multinomial_mod(std::span<const std::uint64_t> parts, std::uint32_t p);
std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p);

// All a with digits supported on [u, v-3] and alpha_i + alpha_{i+1} <= 1.
std::vector<std::uint64_t> index_set_I(std::uint32_t p, unsigned u, unsigned v);
// All a with digits supported on [u, v-3], alpha_i <= 1 and no three
// consecutive non-zero digits.
std::vector<std::uint64_t> index_set_J(std::uint32_t p, unsigned u, unsigned v);

bool in_I(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a);
bool in_J(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a);

// a = a_0 + sum_j (p^{i_j} + p^{i_j+1} + a_j) with i_{j+1} - i_j >= 3 and
// a_j in I(i_j + 3, i_{j+1} + 1), taking i_0 = u - 3 and i_{k+1} = v - 1.
struct JDecomposition {
    std::vector<unsigned> blocks;      // i_1 < ... < i_k
    std::vector<std::uint64_t> parts;  // a_0, ..., a_k

    std::uint64_t reassemble(std::uint32_t p) const;
    friend bool operator==(const JDecomposition&, const JDecomposition&) = default;
};

// Throws Errc::invalid_argument when a is not in J(u,v).
JDecomposition j_decompose(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a);

// b_{u,v}(a) = (p^{v-1} - p^u)/(p-1) - (p+1) a + p (p^{i_1} + ... + p^{i_k}).
// Returned signed: a negative value is reported, never clamped.
std::int64_t b_func(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a);
// c_{u,v}(a) = a_0 + ... + a_k.
std::uint64_t c_func(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a);

// (p^{v-1} - p^u) / (p - 1) = p^u + ... + p^{v-2}.
std::uint64_t geometric_span(std::uint32_t p, unsigned u, unsigned v);

}  // namespace modinv::padic

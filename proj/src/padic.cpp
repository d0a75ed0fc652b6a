#include "modinv/padic.hpp"

#include <algorithm>

#include "modinv/error.hpp"
#include "modinv/fp_poly.hpp"

namespace modinv::padic {

std::vector<unsigned> digits(std::uint64_t a, std::uint32_t p)
{
    std::vector<unsigned> out;
    for (; a; a /= p)
        out.push_back(static_cast<unsigned>(a % p));
    return out;
}

unsigned alpha(std::uint64_t a, std::uint32_t p, int i)
{
    if (i < 0)
        return 0;
    for (int k = 0; k < i && a; ++k)
        a /= p;
    return static_cast<unsigned>(a % p);
}

std::uint32_t multinomial_mod(std::span<const std::uint64_t> parts, std::uint32_t p)
{
    // Small factorial table mod p for the digit columns.
    std::vector<std::uint64_t> fact(p, 1), inv_fact(p, 1);
    for (std::uint32_t i = 1; i < p; ++i)
        fact[i] = fact[i - 1] * i % p;
    for (std::uint32_t i = 0; i < p; ++i)
        inv_fact[i] = mod_inverse(static_cast<std::uint32_t>(fact[i]), p);

    std::vector<std::uint64_t> rest(parts.begin(), parts.end());
    std::uint64_t result = 1;
    while (std::any_of(rest.begin(), rest.end(), [](auto v) { return v != 0; })) {
        std::uint64_t column = 0;
        std::uint64_t denom = 1;
        for (auto& v : rest) {
            auto d = v % p;
            v /= p;
            column += d;
            denom = denom * inv_fact[d] % p;
        }
        if (column >= p)
            return 0;
        result = result * fact[column] % p * denom % p;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p)
{
    if (k > n)
        return 0;
    const std::uint64_t parts[] = {k, n - k};
    return multinomial_mod(parts, p);
}

namespace {

std::uint64_t power(std::uint32_t p, unsigned e)
{
    return checked_pow(p, e);
}

void check_window(unsigned u, unsigned v)
{
    if (u >= v)
        throw Error(Errc::invalid_argument, "index sets need u < v");
}

// Enumerate 0/1 digit vectors over [u, v-3] that satisfy `ok`, which sees the
// positions of the set digits in increasing order as they are appended.
template <typename Pred>
std::vector<std::uint64_t> enumerate_binary(std::uint32_t p, unsigned u, unsigned v, Pred ok)
{
    std::vector<std::uint64_t> out;
    if (v < u + 3) {
        out.push_back(0);
        return out;
    }
    const unsigned width = v - 2 - u;
    if (width > 40)
        throw Error(Errc::overflow, "index set window too wide");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
        if (!ok(mask))
            continue;
        std::uint64_t a = 0;
        for (unsigned b = 0; b < width; ++b)
            if (mask >> b & 1)
                a = checked_add(a, power(p, u + b));
        out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Digits of a restricted to [u, v-3], or false if a has digits elsewhere or
// a digit above 1.
bool binary_window(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a, std::uint64_t& mask)
{
    mask = 0;
    auto ds = digits(a, p);
    for (unsigned i = 0; i < ds.size(); ++i) {
        if (ds[i] == 0)
            continue;
        if (ds[i] > 1 || i < u || i + 2 >= v)
            return false;
        mask |= std::uint64_t{1} << (i - u);
    }
    return true;
}

bool no_adjacent(std::uint64_t mask)
{
    return (mask & (mask >> 1)) == 0;
}

bool no_triple(std::uint64_t mask)
{
    return (mask & (mask >> 1) & (mask >> 2)) == 0;
}

}  // namespace

std::vector<std::uint64_t> index_set_I(std::uint32_t p, unsigned u, unsigned v)
{
    check_window(u, v);
    return enumerate_binary(p, u, v, no_adjacent);
}

std::vector<std::uint64_t> index_set_J(std::uint32_t p, unsigned u, unsigned v)
{
    check_window(u, v);
    return enumerate_binary(p, u, v, no_triple);
}

bool in_I(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a)
{
    std::uint64_t mask;
    return u < v && binary_window(p, u, v, a, mask) && no_adjacent(mask);
}

bool in_J(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a)
{
    std::uint64_t mask;
    return u < v && binary_window(p, u, v, a, mask) && no_triple(mask);
}

std::uint64_t JDecomposition::reassemble(std::uint32_t p) const
{
    std::uint64_t a = parts.empty() ? 0 : parts.front();
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        a = checked_add(a, power(p, blocks[j]));
        a = checked_add(a, power(p, blocks[j] + 1));
        a = checked_add(a, parts.at(j + 1));
    }
    return a;
}

JDecomposition j_decompose(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a)
{
    if (!in_J(p, u, v, a))
        throw Error(Errc::invalid_argument, std::to_string(a) + " is not in J(" + std::to_string(u) + "," +
                                                std::to_string(v) + ")");
    // Maximal runs of set digits have length 1 or 2; runs of length 2 are the
    // blocks, isolated digits belong to the part between the adjacent blocks.
    JDecomposition d;
    d.parts.push_back(0);
    auto ds = digits(a, p);
    for (unsigned i = 0; i < ds.size(); ++i) {
        if (!ds[i])
            continue;
        if (i + 1 < ds.size() && ds[i + 1]) {
            d.blocks.push_back(i);
            d.parts.push_back(0);
            ++i;
        }
        else
            d.parts.back() += power(p, i);
    }
    return d;
}

std::uint64_t geometric_span(std::uint32_t p, unsigned u, unsigned v)
{
    std::uint64_t s = 0;
    for (unsigned i = u; i + 1 < v; ++i)
        s = checked_add(s, power(p, i));
    return s;
}

std::int64_t b_func(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a)
{
    auto d = j_decompose(p, u, v, a);
    std::uint64_t blocks = 0;
    for (auto i : d.blocks)
        blocks = checked_add(blocks, power(p, i));
    const std::uint64_t plus = checked_add(geometric_span(p, u, v), checked_mul(p, blocks));
    const std::uint64_t minus = checked_mul(std::uint64_t{p} + 1, a);
    return static_cast<std::int64_t>(plus) - static_cast<std::int64_t>(minus);
}

std::uint64_t c_func(std::uint32_t p, unsigned u, unsigned v, std::uint64_t a)
{
    auto d = j_decompose(p, u, v, a);
    std::uint64_t c = 0;
    for (auto part : d.parts)
        c += part;
    return c;
}

}  // namespace modinv::padic

#pragma once

// Independent oracles and property suites shared by the unit tests and the
// acceptance binary.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "modinv/fp_poly.hpp"
#include "modinv/milnor.hpp"

namespace checks {

using modinv::Context;
using modinv::Element;

// Product computed term by term with the Koszul sign taken from an explicit
// inversion count of the concatenated x-index lists.
Element naive_mul(const Element& a, const Element& b);

// St^{S,R} by the Cartan formula unfolded one generator at a time (y^m is
// treated as m separate factors) with relations (i), (ii) on generators.
Element naive_apply(const modinv::MilnorOp& op, const Element& a);

// Random element whose terms all have the given degree; y-exponents <= max_exp.
Element random_homogeneous(std::mt19937_64& rng, const Context& ctx, unsigned degree, int terms, unsigned max_exp);
// Random polynomial in y only with `terms` terms and exponents <= max_exp.
Element random_y_poly(std::mt19937_64& rng, const Context& ctx, int terms, unsigned max_exp);
modinv::MatrixFp random_invertible(std::mt19937_64& rng, const Context& ctx);
// y_i -> y_i + sum_{j<i} g_ij y_j.
modinv::MatrixFp random_unitriangular(std::mt19937_64& rng, const Context& ctx);
modinv::MatrixFp random_sl_d(std::mt19937_64& rng, const Context& ctx, int d);

// One property: total checks and the first failure message, if any.
struct PropertyResult {
    std::string name;
    std::size_t checks = 0, failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0 && checks > 0; }
};

// Each suite is deterministic for a given seed.
std::vector<PropertyResult> run_property_suites(std::uint64_t seed);

// p-adic index-set checks for all 0 <= u < v <= vmax (recursions whenever
// every set involved stays within vmax).
std::vector<PropertyResult> run_padic_suites(std::uint32_t p, unsigned vmax);

// parse(print(t)) == t and print(parse(print(t))) == print(t) on random trees.
PropertyResult roundtrip_fuzz(int count, std::uint64_t seed);

}  // namespace checks

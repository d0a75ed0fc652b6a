#pragma once

// Action of the Steenrod-Milnor operations St^{S,R} on P_n.
//
// On generators:
//   St^{S,R} x_k = x_k (S = {}, R = 0), y_k^{p^u} (S = (u), R = 0), else 0
//   St^{S,R} y_k = y_k (S = {}, R = 0), y_k^{p^i} (S = {}, R = Delta_i), else 0
// and on products by the Cartan formula
//   St^{S,R}(ab) = sum (-1)^{(deg a + l(S1)) l(S2)} (S:S1,S2) St^{S1,R1}(a) St^{S2,R2}(b)
// over disjoint S1 u S2 = S and R1 + R2 = R.

#include <cstdint>
#include <vector>

#include "modinv/fp_poly.hpp"

namespace modinv {

class MilnorOp {
public:
    MilnorOp() = default;
    // S must be strictly increasing; trailing zeros of R are dropped.
    MilnorOp(std::vector<unsigned> S, std::vector<std::uint64_t> R);

    static MilnorOp st_u(unsigned u) { return MilnorOp({u}, {}); }
    static MilnorOp delta(unsigned i);
    static MilnorOp steenrod_p(std::uint64_t r) { return MilnorOp({}, {r}); }

    const std::vector<unsigned>& S() const noexcept { return S_; }
    // R[0] is r_1.
    const std::vector<std::uint64_t>& R() const noexcept { return R_; }
    bool is_identity() const noexcept { return S_.empty() && R_.empty(); }

    // sum_{s in S} (2p^s - 1) + sum_i r_i (2p^i - 2)
    std::uint64_t dimension_shift(std::uint32_t p) const;

    friend bool operator==(const MilnorOp&, const MilnorOp&) = default;

private:
    std::vector<unsigned> S_;
    std::vector<std::uint64_t> R_;
};

// One term of the S-part of the Cartan formula.
struct SSplit {
    std::vector<unsigned> S1, S2;
    int sign = 1;  // (S : S1, S2)
};

// All 2^|S| ordered splits of S with their permutation signs.
std::vector<SSplit> cartan_splits(const std::vector<unsigned>& S);

// Generic engine: Koszul-signed distribution of S over the exterior factors,
// with the y-blocks handled by the power rule
//   St^{0,R}(y^m) = multinomial(m; m - |R|, r_1, r_2, ...) y^{m + sum r_i (p^i - 1)}.
Element apply(const MilnorOp& op, const Element& a);

// St_u as an antiderivation.
Element st_u(unsigned u, const Element& a);
// St^{Delta_i} as a derivation, i >= 1.
Element st_delta(unsigned i, const Element& a);
// P^r = St^{0,(r)}.
Element steenrod_p(std::uint64_t r, const Element& a);

}  // namespace modinv

#pragma once

// Determinant invariants and the Dickson / Mui invariants built from them.
//
// [k; e_{k+1}, ..., e_m] is the determinant with k rows (x_1 .. x_m) and rows
// (y_1^{p^e} .. y_m^{p^e}), expanded along the exterior rows:
//   [k; e] = sum_I sign(sigma_I) x_I [e](y_{I'})
// over k-subsets I of {1..m} with complement I'. Only the first m variables of
// the context are used.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "modinv/fp_poly.hpp"

namespace modinv {

struct BracketSpec {
    int k = 0;
    std::vector<unsigned> e;  // m - k exponent indices
    int m = 0;
};

Element bracket(const Context& ctx, const BracketSpec& spec);
// Pure y-determinant [e_1, ..., e_m] on y_1..y_m, m = e.size().
Element bracket(const Context& ctx, const std::vector<unsigned>& e);

// L_m = [0, 1, ..., m-1]; L_0 = 1.
Element dickson_L(const Context& ctx, int m);
// L_{m,s} = [0, ..., s^, ..., m], 0 <= s <= m; L_{m,m} = L_m.
Element dickson_Ls(const Context& ctx, int m, int s);
// Q_{n,s} by Q_{n,s} = Q_{n-1,s-1}^p + Q_{n-1,s} V_n^{p-1}, Q_{m,m} = 1 and
// Q_{m,t} = 0 for t < 0.
Element dickson_q(const Context& ctx, int n, int s);
// V_m = sum_{s<m} (-1)^{m+s-1} Q_{m-1,s} y_m^{p^s}.
Element mui_v(const Context& ctx, int m);
// M_{m; s_1..s_k} = [k; 0..m-1 with s_1..s_k removed], times L_m^{d-1}.
Element mui_m(const Context& ctx, int m, const std::vector<unsigned>& s, int d = 1);

// 0..m-1 with the entries of `hats` removed.
std::vector<unsigned> hatted_range(int m, const std::vector<unsigned>& hats);

// Checks [k;e] L_n = (-1)^{k(k-1)/2} sum_{s_1<..<s_k<n} (-1)^{s_1+..+s_k} M_{n,s} [s_1..s_k, e]
// with n = spec.m, i.e. Mui's expansion with the division by L_n cleared.
bool mui_expansion_check(const Context& ctx, const BracketSpec& spec);

namespace inv {
struct L { int m; };
struct Ls { int m, s; };
struct Q { int n, s; };
struct V { int m; };
struct M { int m; std::vector<unsigned> s; };
struct Md { int m, d; std::vector<unsigned> s; };
}  // namespace inv

using InvariantName = std::variant<inv::L, inv::Ls, inv::Q, inv::V, inv::M, inv::Md>;

// Validates ranges and builds the element.
Element build(const Context& ctx, const InvariantName& name);
std::string to_string(const InvariantName& name);

}  // namespace modinv

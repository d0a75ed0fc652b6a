#pragma once

// Expression language of the command line front end.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' INT)?
//   atom   := x(i) | y(i) | INT | invariant | op | '(' expr ')'
//   invariant := L(m) | Ls(m,s) | Q(n,s) | V(m) | M(m;s..) | Md(m,d;s..) | B(k;[e..];m)
//   op     := Stu(u, e) | StDelta(i, e) | P(r, e) | StSR([S..],[R..], e)
//           | Act([[g11,..],..], e)            matrix substitution
//
// Sums and products are left-associative binary nodes, parentheses are not
// kept, so print(parse(s)) reproduces canonical source exactly.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "modinv/fp_poly.hpp"

namespace modinv::expr {

enum class Kind {
    X, Y, Int,
    L, Ls, Q, V, M, Md, B,
    Stu, StDelta, P, StSR, Act,
    Add, Sub, Mul, Pow,
};

struct Node {
    Kind kind = Kind::Int;
    std::vector<std::int64_t> ints;                // scalar arguments, in source order
    std::vector<std::vector<std::int64_t>> lists;  // list arguments (matrix rows for Act)
    std::vector<Node> kids;

    friend bool operator==(const Node&, const Node&) = default;
};

// Throws SyntaxError (1-based column) on malformed input, unknown names and
// wrong arities.
Node parse(std::string_view src);
std::string print(const Node& node);
Element eval(const Context& ctx, const Node& node);
inline Element eval(const Context& ctx, std::string_view src) { return eval(ctx, parse(src)); }

// Random well-formed tree, for round-trip fuzzing. Not necessarily evaluable.
Node random_tree(std::mt19937_64& rng, int depth);

}  // namespace modinv::expr

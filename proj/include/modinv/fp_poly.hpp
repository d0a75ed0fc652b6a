#pragma once

// Exact arithmetic in P_n = E(x_1..x_n) (x) F_p[y_1..y_n] with deg x_i = 1,
// deg y_i = 2.
//
// Elements are immutable sparse sums of terms kept in canonical form: no zero
// coefficients, no repeated monomials, terms sorted by the canonical order
// (leading term first). The canonical order compares, in priority:
//   1. total degree, larger first;
//   2. exterior index list, lexicographically larger first;
//   3. y-exponent vector by reverse lexicographic order (graded revlex):
//      scanning from y_n down to y_1, the first smaller exponent wins.
// The order is multiplicative on the y-part, which is what exact division
// relies on.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modinv/error.hpp"

namespace modinv {

inline constexpr int kMaxVars = 8;

class Context {
public:
    // Throws Errc::invalid_argument unless p is an odd prime and 1 <= n <= kMaxVars.
    Context(std::uint32_t p, int n);

    std::uint32_t p() const noexcept { return p_; }
    int n() const noexcept { return n_; }

    friend bool operator==(const Context&, const Context&) = default;

private:
    std::uint32_t p_;
    int n_;
};

bool is_prime(std::uint64_t v) noexcept;

// Exterior part as a bitmask (bit i-1 <-> x_i) and y-exponents.
struct Monomial {
    std::uint32_t ext = 0;
    std::array<std::uint64_t, kMaxVars> exps{};

    friend bool operator==(const Monomial&, const Monomial&) = default;

    template <typename H>
    friend H AbslHashValue(H h, const Monomial& m)
    {
        return H::combine(std::move(h), m.ext, m.exps);
    }

    std::uint64_t degree() const noexcept;
    int ext_size() const noexcept;
};

struct Term {
    std::uint32_t coeff = 0;  // in [1, p-1]
    Monomial mono;

    friend bool operator==(const Term&, const Term&) = default;
};

// True when `a` precedes `b` in the canonical (descending) order.
bool precedes(const Monomial& a, const Monomial& b) noexcept;

// Koszul sign of x_A * x_B as +1/-1, or 0 when A and B share an index.
int exterior_sign(std::uint32_t a, std::uint32_t b) noexcept;

class Element {
public:
    explicit Element(Context ctx) : ctx_(ctx) {}

    static Element constant(Context ctx, std::int64_t c);
    static Element x(Context ctx, int i);
    static Element y(Context ctx, int i);
    static Element monomial(Context ctx, std::int64_t c, const Monomial& m);
    // Canonicalizes an arbitrary term list: reduces coefficients, merges equal
    // monomials, drops zeros and sorts.
    static Element from_terms(Context ctx, std::vector<Term> terms);

    const Context& context() const noexcept { return ctx_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool has_exterior() const noexcept;

    // Zero counts as homogeneous; its degree is undefined (nullopt).
    bool is_homogeneous() const noexcept;
    // Degree of a non-zero homogeneous element, nullopt otherwise.
    std::optional<std::uint64_t> degree() const noexcept;

    Element operator-() const;
    Element scaled(std::int64_t c) const;

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    Element& operator+=(const Element& b) { return *this = *this + b; }
    Element& operator-=(const Element& b) { return *this = *this - b; }
    Element& operator*=(const Element& b) { return *this = *this * b; }

    friend bool operator==(const Element& a, const Element& b)
    {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }

private:
    Element(Context ctx, std::vector<Term> sorted) : ctx_(ctx), terms_(std::move(sorted)) {}

    Context ctx_;
    std::vector<Term> terms_;

    friend class ElementBuilder;
};

// Accumulates terms with coefficient arithmetic mod p and produces a canonical
// Element. Intended for hot loops that would otherwise build many temporaries.
class ElementBuilder {
public:
    explicit ElementBuilder(Context ctx);
    ~ElementBuilder();
    ElementBuilder(ElementBuilder&&) noexcept;
    ElementBuilder& operator=(ElementBuilder&&) noexcept;

    void add(const Monomial& m, std::uint64_t coeff);
    void add(const Element& e, std::uint64_t scale = 1);
    Element build() &&;

private:
    struct Impl;
    Context ctx_;
    Impl* impl_;
};

void require_same_context(const Element& a, const Element& b);

// a^m. y-only elements go through the Frobenius digit decomposition
// a^m = prod_k (a^{p^k})^{d_k}; everything else uses repeated squaring.
Element pow(const Element& a, std::uint64_t m);
Element pow_by_squaring(const Element& a, std::uint64_t m);
// a^{p^e} for a y-only element: exponents scaled by p^e, coefficients kept.
Element frobenius(const Element& a, unsigned e);

// q with q * b == a. b must be a non-zero y-only polynomial.
Element exact_div(const Element& a, const Element& b);

class MatrixFp {
public:
    // Row-major entries, reduced mod p. Throws unless entries.size() == n*n.
    MatrixFp(Context ctx, std::vector<std::int64_t> entries);
    static MatrixFp identity(Context ctx);

    const Context& context() const noexcept { return ctx_; }
    // 1-based indices, matching variable names.
    std::uint32_t at(int i, int j) const { return entries_[(i - 1) * ctx_.n() + (j - 1)]; }
    std::uint32_t det() const;
    bool invertible() const { return det() != 0; }

    friend MatrixFp operator*(const MatrixFp& a, const MatrixFp& b);
    friend bool operator==(const MatrixFp&, const MatrixFp&) = default;

private:
    Context ctx_;
    std::vector<std::uint32_t> entries_;
};

// Substitutes x_i -> sum_j g_ij x_j and y_i -> sum_j g_ij y_j. With this row
// convention apply_matrix(g, apply_matrix(h, a)) == apply_matrix(h * g, a).
Element apply_matrix(const MatrixFp& g, const Element& a);

// Canonical text, e.g. "x1*x2*y1^3 + 2*y2"; "0" for zero.
std::string to_text(const Element& a);
// {"p":3,"n":2,"terms":[{"c":1,"ext":[1,2],"exp":[3,0]}, ...]}
std::string to_json(const Element& a);
Element parse_element(Context ctx, std::string_view text);
Element element_from_json(std::string_view json);

// Checked helpers shared by the other modules.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e);
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

}  // namespace modinv

#include "modinv/fp_poly.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <bit>
#include <map>

namespace modinv {

const char* errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::context_mismatch: return "context-mismatch";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::syntax: return "syntax";
    case Errc::not_divisible: return "not-divisible";
    case Errc::overflow: return "overflow";
    case Errc::unknown_id: return "unknown-id";
    case Errc::hypothesis: return "hypothesis";
    }
    return "unknown";
}

bool is_prime(std::uint64_t v) noexcept
{
    if (v < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

Context::Context(std::uint32_t p, int n) : p_(p), n_(n)
{
    if (p == 2)
        throw Error(Errc::invalid_argument, "p = 2 is not supported: p must be an odd prime");
    if (!is_prime(p) || p > (1u << 30))
        throw Error(Errc::invalid_argument, "p must be an odd prime below 2^30, got " + std::to_string(p));
    if (n < 1 || n > kMaxVars)
        throw Error(Errc::invalid_argument,
                    "n must be in 1.." + std::to_string(kMaxVars) + ", got " + std::to_string(n));
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(Errc::overflow, "exponent overflow");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(Errc::overflow, "exponent overflow");
    return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e--)
        r = checked_mul(r, base);
    return r;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p)
{
    // Fermat: a^{p-2}
    std::uint64_t result = 1, base = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

namespace {

std::uint32_t reduce(std::int64_t c, std::uint32_t p)
{
    std::int64_t r = c % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

void check_index(const Context& ctx, int i)
{
    if (i < 1 || i > ctx.n())
        throw Error(Errc::index_out_of_range,
                    "variable index " + std::to_string(i) + " out of range 1.." + std::to_string(ctx.n()));
}

bool is_y_only(const Element& a)
{
    return !a.has_exterior();
}

}  // namespace

std::uint64_t Monomial::degree() const noexcept
{
    std::uint64_t d = 0;
    for (auto e : exps)
        d += e;
    return 2 * d + static_cast<std::uint64_t>(std::popcount(ext));
}

int Monomial::ext_size() const noexcept
{
    return std::popcount(ext);
}

bool precedes(const Monomial& a, const Monomial& b) noexcept
{
    auto da = a.degree(), db = b.degree();
    if (da != db)
        return da > db;
    if (a.ext != b.ext) {
        // Lexicographic comparison of the ascending index lists.
        std::uint32_t ma = a.ext, mb = b.ext;
        while (ma && mb) {
            int ia = std::countr_zero(ma), ib = std::countr_zero(mb);
            if (ia != ib)
                return ia > ib;
            ma &= ma - 1;
            mb &= mb - 1;
        }
        return ma != 0;  // longer list is larger
    }
    for (int j = kMaxVars - 1; j >= 0; --j)
        if (a.exps[j] != b.exps[j])
            return a.exps[j] < b.exps[j];
    return false;
}

int exterior_sign(std::uint32_t a, std::uint32_t b) noexcept
{
    if (a & b)
        return 0;
    // Each index of b must move past the indices of a that exceed it.
    int swaps = 0;
    for (std::uint32_t mb = b; mb; mb &= mb - 1) {
        int j = std::countr_zero(mb);
        swaps += std::popcount(a >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

// ---------------------------------------------------------------------------
// ElementBuilder

struct ElementBuilder::Impl {
    absl::flat_hash_map<Monomial, std::uint64_t> acc;
};

ElementBuilder::ElementBuilder(Context ctx) : ctx_(ctx), impl_(new Impl) {}
ElementBuilder::~ElementBuilder()
{
    delete impl_;
}
ElementBuilder::ElementBuilder(ElementBuilder&& o) noexcept : ctx_(o.ctx_), impl_(o.impl_)
{
    o.impl_ = nullptr;
}
ElementBuilder& ElementBuilder::operator=(ElementBuilder&& o) noexcept
{
    std::swap(ctx_, o.ctx_);
    std::swap(impl_, o.impl_);
    return *this;
}

void ElementBuilder::add(const Monomial& m, std::uint64_t coeff)
{
    coeff %= ctx_.p();
    if (coeff == 0)
        return;
    auto [it, inserted] = impl_->acc.try_emplace(m, coeff);
    if (!inserted)
        it->second = (it->second + coeff) % ctx_.p();
}

void ElementBuilder::add(const Element& e, std::uint64_t scale)
{
    if (e.context() != ctx_)
        throw Error(Errc::context_mismatch, "elements belong to different contexts");
    scale %= ctx_.p();
    if (scale == 0)
        return;
    for (const auto& t : e.terms())
        add(t.mono, t.coeff * scale);
}

Element ElementBuilder::build() &&
{
    std::vector<Term> terms;
    terms.reserve(impl_->acc.size());
    for (const auto& [m, c] : impl_->acc)
        if (c != 0)
            terms.push_back(Term{static_cast<std::uint32_t>(c), m});
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return precedes(a.mono, b.mono); });
    return Element(ctx_, std::move(terms));
}

// ---------------------------------------------------------------------------
// Element

Element Element::constant(Context ctx, std::int64_t c)
{
    return monomial(ctx, c, Monomial{});
}

Element Element::x(Context ctx, int i)
{
    check_index(ctx, i);
    Monomial m;
    m.ext = 1u << (i - 1);
    return monomial(ctx, 1, m);
}

Element Element::y(Context ctx, int i)
{
    check_index(ctx, i);
    Monomial m;
    m.exps[i - 1] = 1;
    return monomial(ctx, 1, m);
}

Element Element::monomial(Context ctx, std::int64_t c, const Monomial& m)
{
    auto r = reduce(c, ctx.p());
    if (r == 0)
        return Element(ctx);
    return Element(ctx, {Term{r, m}});
}

Element Element::from_terms(Context ctx, std::vector<Term> terms)
{
    ElementBuilder b(ctx);
    for (const auto& t : terms)
        b.add(t.mono, t.coeff);
    return std::move(b).build();
}

bool Element::has_exterior() const noexcept
{
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.ext != 0; });
}

bool Element::is_homogeneous() const noexcept
{
    if (terms_.empty())
        return true;
    auto d = terms_.front().mono.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.mono.degree() == d; });
}

std::optional<std::uint64_t> Element::degree() const noexcept
{
    if (terms_.empty() || !is_homogeneous())
        return std::nullopt;
    return terms_.front().mono.degree();
}

Element Element::operator-() const
{
    return scaled(-1);
}

Element Element::scaled(std::int64_t c) const
{
    auto r = reduce(c, ctx_.p());
    if (r == 0)
        return Element(ctx_);
    std::vector<Term> out(terms_);
    for (auto& t : out)
        t.coeff = static_cast<std::uint32_t>(std::uint64_t{t.coeff} * r % ctx_.p());
    return Element(ctx_, std::move(out));
}

void require_same_context(const Element& a, const Element& b)
{
    if (a.context() != b.context())
        throw Error(Errc::context_mismatch, "elements belong to different contexts");
}

Element operator+(const Element& a, const Element& b)
{
    require_same_context(a, b);
    const auto p = a.ctx_.p();
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
        if (precedes(ia->mono, ib->mono))
            out.push_back(*ia++);
        else if (precedes(ib->mono, ia->mono))
            out.push_back(*ib++);
        else {
            auto c = (ia->coeff + ib->coeff) % p;
            if (c)
                out.push_back(Term{c, ia->mono});
            ++ia;
            ++ib;
        }
    }
    out.insert(out.end(), ia, a.terms_.end());
    out.insert(out.end(), ib, b.terms_.end());
    return Element(a.ctx_, std::move(out));
}

Element operator-(const Element& a, const Element& b)
{
    return a + (-b);
}

namespace {

// Sum of canonical elements by a balanced tournament of merges.
Element merge_all(std::vector<Element> parts, const Context& ctx)
{
    if (parts.empty())
        return Element(ctx);
    while (parts.size() > 1) {
        std::vector<Element> next;
        next.reserve((parts.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
            next.push_back(parts[i] + parts[i + 1]);
        if (parts.size() % 2)
            next.push_back(std::move(parts.back()));
        parts = std::move(next);
    }
    return std::move(parts.front());
}

}  // namespace

Element operator*(const Element& a, const Element& b)
{
    require_same_context(a, b);
    if (a.is_zero() || b.is_zero())
        return Element(a.ctx_);
    const auto p = a.ctx_.p();
    const int n = a.ctx_.n();

    // Multiplying by a y-only monomial preserves the canonical order, so the
    // product is a merge of shifted copies of the larger factor.
    const Element& small = a.size() <= b.size() ? a : b;
    const Element& large = a.size() <= b.size() ? b : a;
    if (small.size() <= 32 && !small.has_exterior()) {
        std::vector<Element> shifted;
        shifted.reserve(small.size());
        for (const auto& ts : small.terms_) {
            std::vector<Term> out(large.terms_);
            for (auto& t : out) {
                for (int j = 0; j < n; ++j)
                    t.mono.exps[j] = checked_add(t.mono.exps[j], ts.mono.exps[j]);
                t.coeff = static_cast<std::uint32_t>(std::uint64_t{t.coeff} * ts.coeff % p);
            }
            shifted.push_back(Element(a.ctx_, std::move(out)));
        }
        return merge_all(std::move(shifted), a.ctx_);
    }

    ElementBuilder acc(a.ctx_);
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            int sign = exterior_sign(ta.mono.ext, tb.mono.ext);
            if (sign == 0)
                continue;
            Monomial m;
            m.ext = ta.mono.ext | tb.mono.ext;
            for (int j = 0; j < n; ++j)
                m.exps[j] = checked_add(ta.mono.exps[j], tb.mono.exps[j]);
            std::uint64_t c = std::uint64_t{ta.coeff} * tb.coeff % p;
            acc.add(m, sign > 0 ? c : p - c);
        }
    }
    return std::move(acc).build();
}

// ---------------------------------------------------------------------------
// Powers and division

Element frobenius(const Element& a, unsigned e)
{
    if (!is_y_only(a))
        throw Error(Errc::invalid_argument, "Frobenius shortcut requires a y-only element");
    const auto q = checked_pow(a.context().p(), e);
    std::vector<Term> out(a.terms().begin(), a.terms().end());
    for (auto& t : out)
        for (auto& x : t.mono.exps)
            x = checked_mul(x, q);
    // Scaling every exponent by the same factor preserves the canonical order.
    return Element::from_terms(a.context(), std::move(out));
}

Element pow_by_squaring(const Element& a, std::uint64_t m)
{
    Element result = Element::constant(a.context(), 1);
    Element base = a;
    while (m) {
        if (m & 1)
            result = result * base;
        m >>= 1;
        if (m)
            base = base * base;
    }
    return result;
}

Element pow(const Element& a, std::uint64_t m)
{
    if (m == 0)
        return Element::constant(a.context(), 1);
    if (a.is_zero() || m == 1)
        return a;
    if (!is_y_only(a))
        return pow_by_squaring(a, m);
    const auto p = a.context().p();
    if (a.size() == 1) {
        // Single monomial: scale exponents directly.
        const auto& t = a.terms().front();
        Monomial mono = t.mono;
        for (auto& x : mono.exps)
            x = checked_mul(x, m);
        std::uint64_t c = 1, base = t.coeff;
        for (auto e = m; e; e >>= 1) {
            if (e & 1)
                c = c * base % p;
            base = base * base % p;
        }
        return Element::monomial(a.context(), static_cast<std::int64_t>(c), mono);
    }
    Element result = Element::constant(a.context(), 1);
    unsigned k = 0;
    for (auto rest = m; rest; rest /= p, ++k) {
        auto digit = rest % p;
        if (digit == 0)
            continue;
        Element twisted = frobenius(a, k);
        result = result * pow_by_squaring(twisted, digit);
    }
    return result;
}

Element exact_div(const Element& a, const Element& b)
{
    require_same_context(a, b);
    if (b.is_zero())
        throw Error(Errc::invalid_argument, "division by zero");
    if (b.has_exterior())
        throw Error(Errc::invalid_argument, "divisor must be a y-only polynomial");
    const auto& ctx = a.context();
    const auto p = ctx.p();
    const int n = ctx.n();
    const Term lead = b.terms().front();
    const auto lead_inv = mod_inverse(lead.coeff, p);

    auto cmp = [](const Monomial& x, const Monomial& y) { return precedes(x, y); };
    std::map<Monomial, std::uint32_t, decltype(cmp)> rem(cmp);
    for (const auto& t : a.terms())
        rem.emplace(t.mono, t.coeff);

    ElementBuilder quotient(ctx);
    while (!rem.empty()) {
        auto it = rem.begin();
        const Monomial m = it->first;
        const std::uint32_t c = it->second;
        Monomial qm;
        qm.ext = m.ext;
        for (int j = 0; j < n; ++j) {
            if (m.exps[j] < lead.mono.exps[j])
                throw Error(Errc::not_divisible, "not exactly divisible");
            qm.exps[j] = m.exps[j] - lead.mono.exps[j];
        }
        const std::uint64_t qc = std::uint64_t{c} * lead_inv % p;
        quotient.add(qm, qc);
        // rem -= qc * qm * b; the exterior part of qm commutes past y-only b.
        for (const auto& tb : b.terms()) {
            Monomial pm;
            pm.ext = qm.ext;
            for (int j = 0; j < n; ++j)
                pm.exps[j] = qm.exps[j] + tb.mono.exps[j];
            auto sub = static_cast<std::uint32_t>(qc * tb.coeff % p);
            auto [slot, inserted] = rem.try_emplace(pm, 0u);
            slot->second = (slot->second + p - sub) % p;
            if (slot->second == 0)
                rem.erase(slot);
        }
    }
    return std::move(quotient).build();
}

// ---------------------------------------------------------------------------
// Matrices

MatrixFp::MatrixFp(Context ctx, std::vector<std::int64_t> entries) : ctx_(ctx)
{
    const auto n = static_cast<std::size_t>(ctx.n());
    if (entries.size() != n * n)
        throw Error(Errc::invalid_argument, "matrix needs n*n entries");
    entries_.reserve(entries.size());
    for (auto v : entries)
        entries_.push_back(reduce(v, ctx.p()));
}

MatrixFp MatrixFp::identity(Context ctx)
{
    std::vector<std::int64_t> e(static_cast<std::size_t>(ctx.n() * ctx.n()), 0);
    for (int i = 0; i < ctx.n(); ++i)
        e[i * ctx.n() + i] = 1;
    return MatrixFp(ctx, std::move(e));
}

std::uint32_t MatrixFp::det() const
{
    const int n = ctx_.n();
    const std::uint64_t p = ctx_.p();
    std::vector<std::uint64_t> m(entries_.begin(), entries_.end());
    std::uint64_t d = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r * n + col]) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return 0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(m[pivot * n + c], m[col * n + c]);
            d = (p - d) % p;
        }
        const auto pv = m[col * n + col];
        d = d * pv % p;
        const auto inv = mod_inverse(static_cast<std::uint32_t>(pv), static_cast<std::uint32_t>(p));
        for (int r = col + 1; r < n; ++r) {
            auto f = m[r * n + col] * inv % p;
            if (!f)
                continue;
            for (int c = col; c < n; ++c)
                m[r * n + c] = (m[r * n + c] + (p - f) * m[col * n + c]) % p;
        }
    }
    return static_cast<std::uint32_t>(d);
}

MatrixFp operator*(const MatrixFp& a, const MatrixFp& b)
{
    if (a.ctx_ != b.ctx_)
        throw Error(Errc::context_mismatch, "matrices belong to different contexts");
    const int n = a.ctx_.n();
    const std::uint64_t p = a.ctx_.p();
    std::vector<std::int64_t> out(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::uint64_t s = 0;
            for (int k = 0; k < n; ++k)
                s = (s + std::uint64_t{a.entries_[i * n + k]} * b.entries_[k * n + j]) % p;
            out[i * n + j] = static_cast<std::int64_t>(s);
        }
    return MatrixFp(a.ctx_, std::move(out));
}

Element apply_matrix(const MatrixFp& g, const Element& a)
{
    if (g.context() != a.context())
        throw Error(Errc::context_mismatch, "matrix and element belong to different contexts");
    const auto& ctx = a.context();
    const int n = ctx.n();
    std::vector<Element> x_images, y_images;
    for (int i = 1; i <= n; ++i) {
        Element xi(ctx), yi(ctx);
        for (int j = 1; j <= n; ++j) {
            xi += Element::x(ctx, j).scaled(g.at(i, j));
            yi += Element::y(ctx, j).scaled(g.at(i, j));
        }
        x_images.push_back(std::move(xi));
        y_images.push_back(std::move(yi));
    }
    std::map<std::pair<int, std::uint64_t>, Element> y_powers;
    auto y_power = [&](int i, std::uint64_t m) -> const Element& {
        auto key = std::make_pair(i, m);
        auto it = y_powers.find(key);
        if (it == y_powers.end())
            it = y_powers.emplace(key, pow(y_images[i], m)).first;
        return it->second;
    };

    ElementBuilder acc(ctx);
    for (const auto& t : a.terms()) {
        Element img = Element::constant(ctx, t.coeff);
        for (std::uint32_t mask = t.mono.ext; mask; mask &= mask - 1)
            img = img * x_images[std::countr_zero(mask)];
        for (int i = 0; i < n && !img.is_zero(); ++i)
            if (t.mono.exps[i])
                img = img * y_power(i, t.mono.exps[i]);
        acc.add(img);
    }
    return std::move(acc).build();
}

}  // namespace modinv

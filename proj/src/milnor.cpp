#include "modinv/milnor.hpp"

#include <algorithm>
#include <bit>

#include "modinv/padic.hpp"

namespace modinv {

MilnorOp::MilnorOp(std::vector<unsigned> S, std::vector<std::uint64_t> R) : S_(std::move(S)), R_(std::move(R))
{
    for (std::size_t i = 1; i < S_.size(); ++i)
        if (S_[i - 1] >= S_[i])
            throw Error(Errc::invalid_argument, "S must be strictly increasing");
    while (!R_.empty() && R_.back() == 0)
        R_.pop_back();
}

MilnorOp MilnorOp::delta(unsigned i)
{
    if (i == 0)
        throw Error(Errc::invalid_argument, "Delta_i needs i >= 1");
    std::vector<std::uint64_t> R(i, 0);
    R.back() = 1;
    return MilnorOp({}, std::move(R));
}

std::uint64_t MilnorOp::dimension_shift(std::uint32_t p) const
{
    std::uint64_t d = 0;
    for (auto s : S_)
        d = checked_add(d, checked_mul(2, checked_pow(p, s)) - 1);
    for (std::size_t i = 0; i < R_.size(); ++i)
        d = checked_add(d, checked_mul(R_[i], checked_mul(2, checked_pow(p, i + 1)) - 2));
    return d;
}

std::vector<SSplit> cartan_splits(const std::vector<unsigned>& S)
{
    std::vector<SSplit> out;
    const std::size_t k = S.size();
    if (k > 20)
        throw Error(Errc::overflow, "S too long");
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        SSplit split;
        // Inversions of the shuffle (S1, S2): pairs with an S2 entry before an S1 entry.
        int inversions = 0, seen_s2 = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (mask >> j & 1) {
                split.S1.push_back(S[j]);
                inversions += seen_s2;
            }
            else {
                split.S2.push_back(S[j]);
                ++seen_s2;
            }
        }
        split.sign = (inversions & 1) ? -1 : 1;
        out.push_back(std::move(split));
    }
    return out;
}

namespace {

// Images of the exterior part of one term: remaining exterior mask, extra
// y-exponents from absorbed singletons, and the accumulated Cartan sign.
struct ExteriorImage {
    std::uint32_t ext;
    std::array<std::uint64_t, kMaxVars> add{};
    int sign;
};

void distribute_S(const std::vector<int>& positions, std::size_t t, std::vector<unsigned>& remaining,
                  std::uint32_t ext, std::array<std::uint64_t, kMaxVars>& add, int sign, std::uint32_t p,
                  std::vector<ExteriorImage>& out)
{
    if (remaining.size() > positions.size() - t)
        return;
    if (t == positions.size()) {
        out.push_back({ext, add, sign});
        return;
    }
    const int var = positions[t];
    // x_var keeps its place: sign (-1)^{(1 + 0) * |remaining|}.
    distribute_S(positions, t + 1, remaining, ext, add, (remaining.size() & 1) ? -sign : sign, p, out);
    // x_var absorbs remaining[q] and becomes y_var^{p^u}: the split sign of
    // moving that entry to the front is (-1)^q, the Koszul factor is even.
    for (std::size_t q = 0; q < remaining.size(); ++q) {
        const unsigned u = remaining[q];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(q));
        const auto saved = add[var];
        add[var] = checked_add(add[var], checked_pow(p, u));
        distribute_S(positions, t + 1, remaining, ext & ~(1u << var), add, (q & 1) ? -sign : sign, p, out);
        add[var] = saved;
        remaining.insert(remaining.begin() + static_cast<std::ptrdiff_t>(q), u);
    }
}

// Digitwise tables for the power rule.
class PowerRule {
public:
    PowerRule(std::uint32_t p, const std::vector<std::uint64_t>& R) : p_(p), R_(R)
    {
        fact_.assign(p, 1);
        inv_fact_.assign(p, 1);
        for (std::uint32_t i = 1; i < p; ++i)
            fact_[i] = fact_[i - 1] * i % p;
        for (std::uint32_t i = 0; i < p; ++i)
            inv_fact_[i] = mod_inverse(static_cast<std::uint32_t>(fact_[i]), p);
        growth_.resize(R.size());
        for (std::size_t i = 0; i < R.size(); ++i)
            growth_[i] = checked_pow(p, i + 1) - 1;
    }

    std::size_t length() const { return R_.size(); }

    // Coefficient of St^{0,Rj}(y^m), i.e. multinomial(m; m - |Rj|, Rj) mod p.
    std::uint64_t coefficient(std::uint64_t m, const std::vector<std::uint64_t>& Rj) const
    {
        std::vector<std::uint64_t> parts(Rj.begin(), Rj.end());
        std::uint64_t total = 0;
        for (auto r : Rj)
            total += r;
        if (total > m)
            return 0;
        parts.push_back(m - total);
        return padic::multinomial_mod(parts, p_);
    }

    std::uint64_t new_exponent(std::uint64_t m, const std::vector<std::uint64_t>& Rj) const
    {
        for (std::size_t i = 0; i < Rj.size(); ++i)
            m = checked_add(m, checked_mul(Rj[i], growth_[i]));
        return m;
    }

    // Every Rj <= bound (componentwise) whose multinomial with m is non-zero,
    // built digit column by digit column so that no column carries.
    void enumerate(std::uint64_t m, const std::vector<std::uint64_t>& bound,
                   std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>>& out) const
    {
        std::vector<unsigned> mdigits = padic::digits(m, p_);
        std::vector<std::uint64_t> Rj(R_.size(), 0);
        enumerate_column(mdigits, 0, 1, 1, Rj, bound, out);
    }

private:
    void enumerate_column(const std::vector<unsigned>& mdigits, std::size_t col, std::uint64_t place,
                          std::uint64_t coeff, std::vector<std::uint64_t>& Rj,
                          const std::vector<std::uint64_t>& bound,
                          std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>>& out) const
    {
        if (col == mdigits.size()) {
            out.emplace_back(Rj, coeff);
            return;
        }
        std::vector<unsigned> column(R_.size(), 0);
        fill_column(mdigits, col, place, coeff, Rj, bound, column, 0, 0, out);
    }

    void fill_column(const std::vector<unsigned>& mdigits, std::size_t col, std::uint64_t place,
                     std::uint64_t coeff, std::vector<std::uint64_t>& Rj, const std::vector<std::uint64_t>& bound,
                     std::vector<unsigned>& column, std::size_t i, unsigned used,
                     std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>>& out) const
    {
        const unsigned md = mdigits[col];
        if (i == R_.size()) {
            // multinomial(md; md - used, column...) for this digit column.
            std::uint64_t c = fact_[md] * inv_fact_[md - used] % p_;
            for (auto d : column)
                c = c * inv_fact_[d] % p_;
            const std::uint64_t next_place = col + 1 < mdigits.size() ? place * p_ : place;
            enumerate_column(mdigits, col + 1, next_place, coeff * c % p_, Rj, bound, out);
            return;
        }
        for (unsigned d = 0; used + d <= md; ++d) {
            const std::uint64_t add = d * place;
            if (Rj[i] + add > bound[i])
                break;
            Rj[i] += add;
            column[i] = d;
            fill_column(mdigits, col, place, coeff, Rj, bound, column, i + 1, used + d, out);
            Rj[i] -= add;
        }
        column[i] = 0;
    }

    std::uint32_t p_;
    const std::vector<std::uint64_t>& R_;
    std::vector<std::uint64_t> fact_, inv_fact_, growth_;
};

struct YImage {
    std::array<std::uint64_t, kMaxVars> exps;
    std::uint64_t coeff;
};

void distribute_R(const PowerRule& rule, const std::array<std::uint64_t, kMaxVars>& exps,
                  const std::vector<int>& blocks, std::size_t b, std::vector<std::uint64_t>& remaining,
                  std::array<std::uint64_t, kMaxVars>& cur, std::uint64_t coeff, std::uint32_t p,
                  std::vector<YImage>& out)
{
    const bool nothing_left = std::all_of(remaining.begin(), remaining.end(), [](auto r) { return r == 0; });
    if (nothing_left) {
        out.push_back({cur, coeff});
        return;
    }
    if (b == blocks.size())
        return;
    const int var = blocks[b];
    const std::uint64_t m = exps[var];
    if (b + 1 == blocks.size()) {
        // The last block takes whatever is left.
        auto c = rule.coefficient(m, remaining);
        if (c == 0)
            return;
        const auto saved = cur[var];
        cur[var] = rule.new_exponent(m, remaining);
        out.push_back({cur, coeff * c % p});
        cur[var] = saved;
        return;
    }
    std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> options;
    rule.enumerate(m, remaining, options);
    for (const auto& [Rj, c] : options) {
        const auto saved = cur[var];
        cur[var] = rule.new_exponent(m, Rj);
        for (std::size_t i = 0; i < Rj.size(); ++i)
            remaining[i] -= Rj[i];
        distribute_R(rule, exps, blocks, b + 1, remaining, cur, coeff * c % p, p, out);
        for (std::size_t i = 0; i < Rj.size(); ++i)
            remaining[i] += Rj[i];
        cur[var] = saved;
    }
}

}  // namespace

Element apply(const MilnorOp& op, const Element& a)
{
    if (op.is_identity())
        return a;
    const auto& ctx = a.context();
    const auto p = ctx.p();
    const int n = ctx.n();
    PowerRule rule(p, op.R());
    ElementBuilder acc(ctx);

    std::vector<int> positions, blocks;
    std::vector<ExteriorImage> x_images;
    std::vector<YImage> y_images;
    for (const auto& t : a.terms()) {
        positions.clear();
        for (std::uint32_t m = t.mono.ext; m; m &= m - 1)
            positions.push_back(std::countr_zero(m));
        if (op.S().size() > positions.size())
            continue;
        x_images.clear();
        std::vector<unsigned> remaining_S = op.S();
        std::array<std::uint64_t, kMaxVars> add{};
        distribute_S(positions, 0, remaining_S, t.mono.ext, add, 1, p, x_images);
        if (x_images.empty())
            continue;

        blocks.clear();
        for (int j = 0; j < n; ++j)
            if (t.mono.exps[j])
                blocks.push_back(j);
        y_images.clear();
        std::vector<std::uint64_t> remaining_R = op.R();
        auto cur = t.mono.exps;
        distribute_R(rule, t.mono.exps, blocks, 0, remaining_R, cur, t.coeff, p, y_images);

        for (const auto& xi : x_images) {
            for (const auto& yi : y_images) {
                Monomial m;
                m.ext = xi.ext;
                for (int j = 0; j < n; ++j)
                    m.exps[j] = checked_add(yi.exps[j], xi.add[j]);
                acc.add(m, xi.sign > 0 ? yi.coeff : p - yi.coeff);
            }
        }
    }
    return std::move(acc).build();
}

Element st_u(unsigned u, const Element& a)
{
    const auto& ctx = a.context();
    const auto p = ctx.p();
    const auto shift = checked_pow(p, u);
    ElementBuilder acc(ctx);
    for (const auto& t : a.terms()) {
        int position = 0;
        for (std::uint32_t mask = t.mono.ext; mask; mask &= mask - 1, ++position) {
            const int var = std::countr_zero(mask);
            Monomial m = t.mono;
            m.ext &= ~(1u << var);
            m.exps[var] = checked_add(m.exps[var], shift);
            acc.add(m, (position & 1) ? p - t.coeff : t.coeff);
        }
    }
    return std::move(acc).build();
}

Element st_delta(unsigned i, const Element& a)
{
    if (i == 0)
        throw Error(Errc::invalid_argument, "Delta_i needs i >= 1");
    const auto& ctx = a.context();
    const auto p = ctx.p();
    const auto growth = checked_pow(p, i) - 1;
    ElementBuilder acc(ctx);
    for (const auto& t : a.terms()) {
        for (int j = 0; j < ctx.n(); ++j) {
            const auto e = t.mono.exps[j];
            if (e % p == 0)
                continue;
            Monomial m = t.mono;
            m.exps[j] = checked_add(e, growth);
            acc.add(m, (e % p) * t.coeff);
        }
    }
    return std::move(acc).build();
}

Element steenrod_p(std::uint64_t r, const Element& a)
{
    return apply(MilnorOp::steenrod_p(r), a);
}

}  // namespace modinv

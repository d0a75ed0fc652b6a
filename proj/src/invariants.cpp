#include "modinv/invariants.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace modinv {

namespace {

int permutation_sign(const std::vector<int>& perm)
{
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                ++inversions;
    return (inversions & 1) ? -1 : 1;
}

// det(y_{vars[r]}^{p^{e[c]}}) as a sum of monomials.
void add_y_determinant(ElementBuilder& acc, const Context& ctx, const std::vector<int>& vars,
                       const std::vector<std::uint64_t>& powers, std::uint32_t ext, int outer_sign)
{
    const auto p = ctx.p();
    std::vector<int> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Monomial m;
        m.ext = ext;
        for (std::size_t r = 0; r < vars.size(); ++r)
            m.exps[vars[r]] = checked_add(m.exps[vars[r]], powers[perm[r]]);
        const int sign = outer_sign * permutation_sign(perm);
        acc.add(m, sign > 0 ? 1 : p - 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

void check_m(const Context& ctx, int m)
{
    if (m < 0 || m > ctx.n())
        throw Error(Errc::index_out_of_range,
                    "invariant needs " + std::to_string(m) + " variables but n = " + std::to_string(ctx.n()));
}

// Synchronized memo for the recursively defined Dickson and Mui invariants.
struct Memo {
    std::mutex mutex;
    std::map<std::tuple<char, std::uint32_t, int, int, int>, Element> table;
};

Memo& memo()
{
    static Memo instance;
    return instance;
}

template <typename F>
Element memoized(char kind, const Context& ctx, int a, int b, F&& compute)
{
    auto key = std::make_tuple(kind, ctx.p(), ctx.n(), a, b);
    {
        std::lock_guard lock(memo().mutex);
        auto it = memo().table.find(key);
        if (it != memo().table.end())
            return it->second;
    }
    Element value = compute();
    std::lock_guard lock(memo().mutex);
    memo().table.emplace(key, value);
    return value;
}

}  // namespace

Element bracket(const Context& ctx, const BracketSpec& spec)
{
    const int k = spec.k, m = spec.m;
    if (k < 0 || m < k || static_cast<int>(spec.e.size()) != m - k)
        throw Error(Errc::invalid_argument, "bracket needs 0 <= k <= m and m - k exponent entries");
    check_m(ctx, m);
    const auto p = ctx.p();
    std::vector<std::uint64_t> powers;
    for (auto e : spec.e)
        powers.push_back(checked_pow(p, e));

    ElementBuilder acc(ctx);
    // Enumerate k-subsets I of {0..m-1} as bitmasks.
    for (std::uint32_t I = 0; I < (1u << m); ++I) {
        if (std::popcount(I) != k)
            continue;
        int shift = 0, j = 0;
        std::vector<int> rest;
        for (int v = 0; v < m; ++v) {
            if (I >> v & 1)
                shift += v - j++;
            else
                rest.push_back(v);
        }
        add_y_determinant(acc, ctx, rest, powers, I, (shift & 1) ? -1 : 1);
    }
    return std::move(acc).build();
}

Element bracket(const Context& ctx, const std::vector<unsigned>& e)
{
    return bracket(ctx, BracketSpec{0, e, static_cast<int>(e.size())});
}

std::vector<unsigned> hatted_range(int m, const std::vector<unsigned>& hats)
{
    std::vector<unsigned> out;
    for (int i = 0; i < m; ++i)
        if (std::find(hats.begin(), hats.end(), static_cast<unsigned>(i)) == hats.end())
            out.push_back(static_cast<unsigned>(i));
    return out;
}

Element dickson_L(const Context& ctx, int m)
{
    check_m(ctx, m);
    if (m == 0)
        return Element::constant(ctx, 1);
    return bracket(ctx, hatted_range(m, {}));
}

Element dickson_Ls(const Context& ctx, int m, int s)
{
    check_m(ctx, m);
    if (s < 0 || s > m)
        throw Error(Errc::invalid_argument, "L_{m,s} needs 0 <= s <= m");
    return bracket(ctx, hatted_range(m + 1, {static_cast<unsigned>(s)}));
}

Element dickson_q(const Context& ctx, int n, int s)
{
    check_m(ctx, n);
    if (s < 0)
        return Element(ctx);
    if (s > n)
        throw Error(Errc::invalid_argument, "Q_{n,s} needs s <= n");
    if (s == n)
        return Element::constant(ctx, 1);
    return memoized('Q', ctx, n, s, [&] {
        const auto p = ctx.p();
        Element lower = dickson_q(ctx, n - 1, s - 1);
        Element result = s > 0 ? frobenius(lower, 1) : Element(ctx);
        return result + dickson_q(ctx, n - 1, s) * pow(mui_v(ctx, n), p - 1);
    });
}

Element mui_v(const Context& ctx, int m)
{
    check_m(ctx, m);
    if (m < 1)
        throw Error(Errc::invalid_argument, "V_m needs m >= 1");
    return memoized('V', ctx, m, 0, [&] {
        const auto p = ctx.p();
        Element result(ctx);
        for (int s = 0; s < m; ++s) {
            Monomial ym;
            ym.exps[m - 1] = checked_pow(p, static_cast<std::uint64_t>(s));
            const int sign = ((m + s - 1) & 1) ? -1 : 1;
            result += dickson_q(ctx, m - 1, s) * Element::monomial(ctx, sign, ym);
        }
        return result;
    });
}

Element mui_m(const Context& ctx, int m, const std::vector<unsigned>& s, int d)
{
    check_m(ctx, m);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= static_cast<unsigned>(m) || (i > 0 && s[i - 1] >= s[i]))
            throw Error(Errc::invalid_argument, "M needs 0 <= s_1 < ... < s_k < m");
    }
    if (d < 1 || d > static_cast<int>(ctx.p()) - 1)
        throw Error(Errc::invalid_argument, "M^(d) needs 1 <= d <= p-1");
    Element base = bracket(ctx, BracketSpec{static_cast<int>(s.size()), hatted_range(m, s), m});
    if (d == 1)
        return base;
    return base * pow(dickson_L(ctx, m), static_cast<std::uint64_t>(d - 1));
}

bool mui_expansion_check(const Context& ctx, const BracketSpec& spec)
{
    const int k = spec.k, n = spec.m;
    if (k < 1)
        throw Error(Errc::hypothesis, "Mui's expansion needs k >= 1");
    auto sorted = spec.e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::hypothesis, "Mui's expansion needs distinct exponents");

    const Element lhs = bracket(ctx, spec) * dickson_L(ctx, n);
    Element rhs(ctx);
    // k-subsets s_1 < ... < s_k of {0..n-1}.
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k)
            continue;
        std::vector<unsigned> s;
        unsigned sum = 0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) {
                s.push_back(static_cast<unsigned>(i));
                sum += static_cast<unsigned>(i);
            }
        std::vector<unsigned> full = s;
        full.insert(full.end(), spec.e.begin(), spec.e.end());
        const int sign = (((k * (k - 1) / 2) + sum) & 1) ? -1 : 1;
        rhs += (mui_m(ctx, n, s) * bracket(ctx, full)).scaled(sign);
    }
    return lhs == rhs;
}

Element build(const Context& ctx, const InvariantName& name)
{
    return std::visit(
        [&](const auto& v) -> Element {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, inv::L>)
                return dickson_L(ctx, v.m);
            else if constexpr (std::is_same_v<T, inv::Ls>)
                return dickson_Ls(ctx, v.m, v.s);
            else if constexpr (std::is_same_v<T, inv::Q>) {
                if (v.s < 0 || v.s > v.n)
                    throw Error(Errc::invalid_argument, "Q(n,s) needs 0 <= s <= n");
                return dickson_q(ctx, v.n, v.s);
            }
            else if constexpr (std::is_same_v<T, inv::V>)
                return mui_v(ctx, v.m);
            else if constexpr (std::is_same_v<T, inv::M>)
                return mui_m(ctx, v.m, v.s, 1);
            else
                return mui_m(ctx, v.m, v.s, v.d);
        },
        name);
}

std::string to_string(const InvariantName& name)
{
    auto list = [](const std::vector<unsigned>& s) {
        std::ostringstream out;
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? "," : "") << s[i];
        return out.str();
    };
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, inv::L>)
                return "L(" + std::to_string(v.m) + ")";
            else if constexpr (std::is_same_v<T, inv::Ls>)
                return "Ls(" + std::to_string(v.m) + "," + std::to_string(v.s) + ")";
            else if constexpr (std::is_same_v<T, inv::Q>)
                return "Q(" + std::to_string(v.n) + "," + std::to_string(v.s) + ")";
            else if constexpr (std::is_same_v<T, inv::V>)
                return "V(" + std::to_string(v.m) + ")";
            else if constexpr (std::is_same_v<T, inv::M>)
                return "M(" + std::to_string(v.m) + ";" + list(v.s) + ")";
            else
                return "Md(" + std::to_string(v.m) + "," + std::to_string(v.d) + ";" + list(v.s) + ")";
        },
        name);
}

}  // namespace modinv

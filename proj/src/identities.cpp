#include "modinv/identities.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "modinv/invariants.hpp"
#include "modinv/milnor.hpp"
#include "modinv/padic.hpp"

namespace modinv {

// ---- Params ---------------------------------------------------------------

Params& Params::set(const std::string& name, std::int64_t v)
{
    values_[name] = {v};
    return *this;
}

Params& Params::set_list(const std::string& name, std::vector<std::int64_t> v)
{
    values_[name] = std::move(v);
    return *this;
}

std::int64_t Params::get(const std::string& name) const
{
    auto it = values_.find(name);
    if (it == values_.end())
        throw Error(Errc::hypothesis, "missing parameter '" + name + "'");
    if (it->second.size() != 1)
        throw Error(Errc::hypothesis, "parameter '" + name + "' must be a single integer");
    return it->second.front();
}

const std::vector<std::int64_t>& Params::list(const std::string& name) const
{
    auto it = values_.find(name);
    if (it == values_.end())
        throw Error(Errc::hypothesis, "missing parameter '" + name + "'");
    return it->second;
}

std::vector<unsigned> Params::ulist(const std::string& name) const
{
    std::vector<unsigned> out;
    for (auto v : list(name)) {
        if (v < 0 || v > 62)
            throw Error(Errc::hypothesis, "entries of '" + name + "' must lie in 0..62");
        out.push_back(static_cast<unsigned>(v));
    }
    return out;
}

namespace {

const std::vector<std::string>& key_order()
{
    static const std::vector<std::string> order{"p", "n", "form", "k", "s", "d", "i", "u", "v", "w", "e", "r"};
    return order;
}

bool is_list_key(const std::string& name) { return name == "e"; }

}  // namespace

std::string Params::to_string() const
{
    std::vector<std::string> keys;
    for (const auto& k : key_order())
        if (values_.count(k))
            keys.push_back(k);
    for (const auto& [k, v] : values_)
        if (std::find(key_order().begin(), key_order().end(), k) == key_order().end())
            keys.push_back(k);

    std::ostringstream out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto& vals = values_.at(keys[i]);
        out << (i ? " " : "") << keys[i] << '=';
        if (vals.size() == 1 && !is_list_key(keys[i])) {
            out << vals[0];
            continue;
        }
        out << '[';
        for (std::size_t j = 0; j < vals.size(); ++j)
            out << (j ? "," : "") << vals[j];
        out << ']';
    }
    return out.str();
}

void Params::assign(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(Errc::invalid_argument, "parameter must look like name=value, got '" + assignment + "'");
    const std::string name = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']')
        value = value.substr(1, value.size() - 2);
    std::vector<std::int64_t> vals;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw Error(Errc::invalid_argument, "parameter '" + name + "' has a non-integer entry '" + item + "'");
        vals.push_back(v);
    }
    values_[name] = std::move(vals);
}

// ---- helpers shared by the registry -----------------------------------------

namespace {

using U = std::vector<unsigned>;

void require(bool cond, const std::string& what)
{
    if (!cond)
        throw Error(Errc::hypothesis, what);
}

std::uint32_t prime_of(const Params& ps)
{
    const auto p = ps.get("p");
    require(p >= 3 && p <= (1ll << 30), "p must be an odd prime");
    return static_cast<std::uint32_t>(p);
}

int small(const Params& ps, const std::string& name, int lo, int hi)
{
    const auto v = ps.get(name);
    require(v >= lo && v <= hi,
            name + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi) + ", got " + std::to_string(v));
    return static_cast<int>(v);
}

bool distinct(const U& e)
{
    std::set<unsigned> seen(e.begin(), e.end());
    return seen.size() == e.size();
}

bool strictly_increasing(const U& s)
{
    return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end();
}

Element sgn(int parity, const Element& a) { return (parity & 1) ? -a : a; }

U cat(U a, const U& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

U without(const U& s, std::size_t t)
{
    U out = s;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(t));
    return out;
}

U range(unsigned lo, unsigned hi)  // lo..hi-1
{
    U out;
    for (unsigned i = lo; i < hi; ++i)
        out.push_back(i);
    return out;
}

Element B(const Context& ctx, int k, const U& e)
{
    return bracket(ctx, BracketSpec{k, e, k + static_cast<int>(e.size())});
}

Element frob(const Element& a, unsigned e) { return frobenius(a, e); }

Element Q(const Context& ctx, int n, int s) { return dickson_q(ctx, n, s); }

// Mui invariant with the s-list validated as a statement hypothesis.
Element Md(const Context& ctx, int n, const U& s, int d) { return mui_m(ctx, n, s, d); }

Element Lpow(const Context& ctx, int n, std::int64_t e)
{
    if (e < 0)
        throw Error(Errc::invalid_argument, "negative exponent " + std::to_string(e) + " on L_" + std::to_string(n));
    return pow(dickson_L(ctx, n), static_cast<std::uint64_t>(e));
}

std::uint64_t ppow(std::uint32_t p, std::uint64_t e) { return checked_pow(p, e); }

// s-list hypothesis shared by the Mui statements: 0 <= s_1 < ... < s_k < n, k >= 1.
U s_list(const Params& ps, int n)
{
    U s = ps.ulist("s");
    require(!s.empty(), "s-list must be non-empty");
    require(strictly_increasing(s), "s-list must be strictly increasing");
    require(s.back() < static_cast<unsigned>(n), "s-list entries must be < n");
    return s;
}

int d_param(const Params& ps, std::uint32_t p)
{
    return small(ps, "d", 1, static_cast<int>(p) - 1);
}

// ---- plan builders -----------------------------------------------------------

// All ordered tuples of length len over 0..max.
std::vector<std::vector<std::int64_t>> tuples(int len, int max)
{
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(len, 0);
    while (true) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[i] == max)
            cur[i--] = 0;
        if (i < 0)
            break;
        ++cur[i];
    }
    return out;
}

bool all_distinct(const std::vector<std::int64_t>& v)
{
    std::set<std::int64_t> seen(v.begin(), v.end());
    return seen.size() == v.size();
}

bool increasing(const std::vector<std::int64_t>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i])
            return false;
    return true;
}

// Non-empty strictly increasing subsets of 0..n-1.
std::vector<std::vector<std::int64_t>> s_lists(int n)
{
    std::vector<std::vector<std::int64_t>> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::int64_t> s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                s.push_back(i);
        out.push_back(s);
    }
    return out;
}

Params base(std::uint32_t p, int n)
{
    Params ps;
    ps.set("p", p);
    if (n > 0)
        ps.set("n", n);
    return ps;
}

bool quick(Profile profile) { return profile == Profile::quick; }

// ---- registry entries ------------------------------------------------------------

void lem22(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int k = small(ps, "k", 0, n - 1);
    const U e = ps.ulist("e");
    require(static_cast<int>(e.size()) == n - k, "e-list needs n-k entries");
    require(distinct(e), "e-list entries must be distinct");
    const int u = small(ps, "u", 0, 62);
    Context ctx(p, n);
    c.lhs = st_u(static_cast<unsigned>(u), B(ctx, k, e));
    if (k == 0) {
        c.branch = "k=0";
        c.rhs = Element(ctx);
    } else {
        c.branch = "k>0";
        c.rhs = sgn(k - 1, B(ctx, k - 1, cat({static_cast<unsigned>(u)}, e)));
    }
}

std::vector<Params> lem22_plan(std::uint32_t p, Profile profile)
{
    const int nmax = quick(profile) ? 3 : 4, emax = quick(profile) ? 3 : 4, umax = quick(profile) ? 3 : 5;
    std::vector<Params> out;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k < n; ++k)
            for (const auto& e : tuples(n - k, emax)) {
                if (!all_distinct(e) || (quick(profile) && !increasing(e)))
                    continue;
                for (int u = 0; u <= umax; ++u)
                    out.push_back(base(p, n).set("k", k).set_list("e", e).set("u", u));
            }
    return out;
}

void lem23(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int k = small(ps, "k", 0, n - 1);
    const U e = ps.ulist("e");
    require(static_cast<int>(e.size()) == n - k, "e-list needs n-k entries");
    require(distinct(e), "e-list entries must be distinct");
    require(std::all_of(e.begin() + 1, e.end(), [&](unsigned x) { return e[0] < x; }),
            "the first e entry must be smaller than the others");
    const int i = small(ps, "i", 1, 62);
    Context ctx(p, n);
    c.lhs = st_delta(static_cast<unsigned>(i), B(ctx, k, e));
    if (e[0] == 0) {
        c.branch = "e=0";
        U f = e;
        f[0] = static_cast<unsigned>(i);
        c.rhs = B(ctx, k, f);
    } else {
        c.branch = "e>0";
        c.rhs = Element(ctx);
    }
}

std::vector<Params> lem23_plan(std::uint32_t p, Profile profile)
{
    const int nmax = quick(profile) ? 3 : 4, emax = quick(profile) ? 3 : 4, imax = quick(profile) ? 3 : 5;
    std::vector<Params> out;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k < n; ++k)
            for (const auto& e : tuples(n - k, emax)) {
                if (!all_distinct(e) || !std::all_of(e.begin() + 1, e.end(), [&](auto x) { return e[0] < x; }))
                    continue;
                if (quick(profile) && !increasing(e))
                    continue;
                for (int i = 1; i <= imax; ++i)
                    out.push_back(base(p, n).set("k", k).set_list("e", e).set("i", i));
            }
    return out;
}

void ct5(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const U e = ps.ulist("e");
    require(static_cast<int>(e.size()) == n, "e-list needs n entries");
    Context ctx(p, n);
    const U head(e.begin(), e.end() - 1);
    const unsigned en = e.back();
    c.lhs = B(ctx, 0, cat(head, {en + n - 1}));
    Element rhs(ctx);
    for (int s = 0; s <= n - 2; ++s)
        rhs += sgn(n + s, B(ctx, 0, cat(head, {en + s})) * frob(Q(ctx, n - 1, s), en));
    rhs += B(ctx, 0, head) * frob(mui_v(ctx, n), en);
    c.rhs = rhs;
}

std::vector<Params> ct5_plan(std::uint32_t p, Profile profile)
{
    const int nmax = quick(profile) ? 3 : 4, emax = quick(profile) ? 2 : 3;
    std::vector<Params> out;
    for (int n = 1; n <= nmax; ++n)
        for (const auto& e : tuples(n, emax))
            out.push_back(base(p, n).set_list("e", e));
    return out;
}

void ct6(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int k = small(ps, "k", 0, n - 1);
    const U e = ps.ulist("e");
    require(static_cast<int>(e.size()) == n - k, "e-list needs n-k entries");
    Context ctx(p, n);
    const U head(e.begin(), e.end() - 1);
    const unsigned en = e.back();
    c.lhs = B(ctx, k, cat(head, {en + n}));
    Element rhs(ctx);
    for (int s = 0; s <= n - 1; ++s) {
        Element b = B(ctx, k, cat(head, {en + s}));
        if (!b.is_zero())
            rhs += sgn(n + s - 1, b * frob(Q(ctx, n, s), en));
    }
    c.rhs = rhs;
}

std::vector<Params> ct6_plan(std::uint32_t p, Profile profile)
{
    const int nmax = quick(profile) ? 3 : 4, emax = quick(profile) ? 2 : 3;
    std::vector<Params> out;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k < n; ++k)
            for (const auto& e : tuples(n - k, emax))
                out.push_back(base(p, n).set("k", k).set_list("e", e));
    return out;
}

void thm31(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int s = small(ps, "s", 0, n - 1);
    const int i = small(ps, "i", 1, 62);
    Context ctx(p, n);
    c.lhs = st_delta(static_cast<unsigned>(i), Q(ctx, n, s));
    c.rhs = sgn(n, B(ctx, 0, cat(hatted_range(n, {static_cast<unsigned>(s)}), {static_cast<unsigned>(i)})) *
                       Lpow(ctx, n, p - 2));
}

std::vector<Params> thm31_plan(std::uint32_t p, Profile)
{
    std::vector<Params> out;
    for (int n = 1; n <= 3; ++n)
        for (int s = 0; s < n; ++s)
            for (int i = 1; i <= n + 3; ++i)
                out.push_back(base(p, n).set("s", s).set("i", i));
    return out;
}

void cor32(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int s = small(ps, "s", 0, n - 1);
    const int i = small(ps, "i", 1, n);
    Context ctx(p, n);
    c.lhs = st_delta(static_cast<unsigned>(i), Q(ctx, n, s));
    if (i == s) {
        c.branch = "i=s>0";
        c.rhs = sgn(s - 1, Q(ctx, n, 0));
    } else if (i == n) {
        c.branch = "i=n";
        c.rhs = sgn(n, Q(ctx, n, 0) * Q(ctx, n, s));
    } else {
        c.branch = "otherwise";
        c.rhs = Element(ctx);
    }
}

std::vector<Params> cor32_plan(std::uint32_t p, Profile)
{
    std::vector<Params> out;
    for (int n = 1; n <= 3; ++n)
        for (int s = 0; s < n; ++s)
            for (int i = 1; i <= n; ++i)
                out.push_back(base(p, n).set("s", s).set("i", i));
    return out;
}

void prop33(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int k = small(ps, "k", 0, n - 1);
    const U e = ps.ulist("e");
    require(static_cast<int>(e.size()) == n - k, "e-list needs n-k entries");
    require(distinct(e), "e-list entries must be distinct");
    const auto r = ps.get("r");
    require(r >= 0, "r must be non-negative");
    Context ctx(p, n);
    c.lhs = steenrod_p(static_cast<std::uint64_t>(r), B(ctx, k, e));
    // Look for r = sum eps_j p^{e_j}; unique since the e_j are distinct.
    const int len = static_cast<int>(e.size());
    for (std::uint32_t eps = 0; eps < (1u << len); ++eps) {
        std::uint64_t sum = 0;
        for (int j = 0; j < len; ++j)
            if (eps >> j & 1)
                sum += ppow(p, e[j]);
        if (sum != static_cast<std::uint64_t>(r))
            continue;
        U f = e;
        for (int j = 0; j < len; ++j)
            f[j] += eps >> j & 1;
        c.branch = "r=sum eps p^e";
        c.rhs = B(ctx, k, f);
        return;
    }
    c.branch = "otherwise";
    c.rhs = Element(ctx);
}

std::vector<Params> prop33_plan(std::uint32_t p, Profile profile)
{
    const int emax = quick(profile) ? 2 : 3;
    std::vector<Params> out;
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k < n; ++k)
            for (const auto& e : tuples(n - k, emax)) {
                if (!all_distinct(e) || (quick(profile) && !increasing(e)))
                    continue;
                // Every monomial of the bracket has y-degree sum p^{e_j}, so
                // P^r vanishes beyond it; sweep everything up to that bound.
                std::int64_t top = 0;
                for (auto x : e)
                    top += static_cast<std::int64_t>(ppow(p, static_cast<std::uint64_t>(x)));
                for (std::int64_t r = 0; r <= top; ++r)
                    out.push_back(base(p, n).set("k", k).set_list("e", e).set("r", r));
            }
    return out;
}

void thm34(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int s = small(ps, "s", 0, n - 1);
    const int i = small(ps, "i", n, 40);
    Context ctx(p, n);
    const Element q = Q(ctx, n, s);
    c.lhs = st_delta(static_cast<unsigned>(i + 1), q);
    c.rhs = steenrod_p(ppow(p, i), st_delta(static_cast<unsigned>(i), q));
}

std::vector<Params> thm34_plan(std::uint32_t p, Profile profile)
{
    const int nmax = 3, ispan = quick(profile) ? 1 : 2;
    std::vector<Params> out;
    for (int n = 1; n <= nmax; ++n)
        for (int s = 0; s < n; ++s)
            for (int i = n; i <= n + ispan; ++i)
                out.push_back(base(p, n).set("s", s).set("i", i));
    return out;
}

void thm35(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int i = small(ps, "i", 1, 62);
    Context ctx(p, n);
    c.lhs = st_delta(static_cast<unsigned>(i), mui_v(ctx, n));
    c.rhs = sgn(n - 1, B(ctx, 0, cat(range(0, n - 1), {static_cast<unsigned>(i)})) * Lpow(ctx, n - 1, p - 2));
}

std::vector<Params> thm35_plan(std::uint32_t p, Profile)
{
    std::vector<Params> out;
    for (int n = 1; n <= 3; ++n)
        for (int i = 1; i <= n + 3; ++i)
            out.push_back(base(p, n).set("i", i));
    return out;
}

void cor36(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int i = small(ps, "i", 1, n);
    Context ctx(p, n);
    const Element v = mui_v(ctx, n);
    c.lhs = st_delta(static_cast<unsigned>(i), v);
    if (i < n - 1) {
        c.branch = "i<n-1";
        c.rhs = Element(ctx);
    } else if (i == n - 1) {
        c.branch = "i=n-1";
        c.rhs = sgn(n - 1, Q(ctx, n - 1, 0) * v);
    } else {
        c.branch = "i=n";
        c.rhs = sgn(n - 1, Q(ctx, n - 1, 0) * (frob(Q(ctx, n - 1, n - 2), 1) * v + frob(v, 1)));
    }
}

std::vector<Params> cor36_plan(std::uint32_t p, Profile)
{
    std::vector<Params> out;
    for (int n = 1; n <= 3; ++n)
        for (int i = 1; i <= n; ++i)
            out.push_back(base(p, n).set("i", i));
    return out;
}

void thm37(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const U s = s_list(ps, n);
    const int d = d_param(ps, p);
    const int i = small(ps, "i", 1, 62);
    const int k = static_cast<int>(s.size());
    Context ctx(p, n);
    const Element m = Md(ctx, n, s, d);
    c.lhs = st_delta(static_cast<unsigned>(i), m);
    const auto t = std::find(s.begin(), s.end(), static_cast<unsigned>(i));
    if (s[0] > 0 && t != s.end()) {
        c.branch = "i=s_t";
        const auto idx = static_cast<std::size_t>(t - s.begin());
        c.rhs = sgn(static_cast<int>(s[idx]) - static_cast<int>(idx + 1), Md(ctx, n, cat({0}, without(s, idx)), d));
        return;
    }
    if (i < n) {
        c.branch = "otherwise";
        c.rhs = Element(ctx);
        return;
    }
    const U ones_i = cat(range(1, n), {static_cast<unsigned>(i)});
    // (d-1) M [1..n-1,i] L^{d-2}; absent when d = 1.
    Element second(ctx);
    if (d >= 2)
        second = (Md(ctx, n, s, 1) * B(ctx, 0, ones_i) * Lpow(ctx, n, d - 2)).scaled(d - 1);
    if (s[0] == 0) {
        c.branch = "i>=n,s1=0";
        c.rhs = sgn(n - 1, second);
    } else {
        c.branch = "i>=n,s1>0";
        U rest;
        for (unsigned j = 1; j < static_cast<unsigned>(n); ++j)
            if (std::find(s.begin(), s.end(), j) == s.end())
                rest.push_back(j);
        rest.push_back(static_cast<unsigned>(i));
        c.rhs = sgn(n - 1, sgn(k, B(ctx, k, rest) * Lpow(ctx, n, d - 1)) + second);
    }
}

std::vector<Params> mui_plan(std::uint32_t p, const char* index, int lo)
{
    std::vector<Params> out;
    for (int n = 1; n <= 3; ++n)
        for (const auto& s : s_lists(n))
            for (int d = 1; d <= static_cast<int>(p) - 1; ++d)
                for (int i = lo; i <= n + 3; ++i)
                    out.push_back(base(p, n).set_list("s", s).set("d", d).set(index, i));
    return out;
}

void thm38(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const U s = s_list(ps, n);
    const int d = d_param(ps, p);
    const int u = small(ps, "u", 0, 62);
    const int k = static_cast<int>(s.size());
    Context ctx(p, n);
    c.lhs = st_u(static_cast<unsigned>(u), Md(ctx, n, s, d));
    const auto t = std::find(s.begin(), s.end(), static_cast<unsigned>(u));
    if (t != s.end()) {
        c.branch = "u=s_t";
        const auto idx = static_cast<std::size_t>(t - s.begin());
        const U rest = without(s, idx);
        // M with an empty s-list is L_n itself.
        const Element m = rest.empty() ? Lpow(ctx, n, d) : Md(ctx, n, rest, d);
        c.rhs = sgn(k + static_cast<int>(s[idx]) - static_cast<int>(idx + 1), m);
    } else if (u >= n) {
        c.branch = "u>=n";
        c.rhs = sgn(n - 1, B(ctx, k - 1, cat(hatted_range(n, s), {static_cast<unsigned>(u)})) * Lpow(ctx, n, d - 1));
    } else {
        c.branch = "otherwise";
        c.rhs = Element(ctx);
    }
}

void thm39(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int form = small(ps, "form", 1, 3);
    Context ctx(p, n);
    c.branch = "form" + std::to_string(form);
    if (form == 1) {
        // St^{Delta_0} is not an operation, so i - 1 >= 1 as well.
        const int i = small(ps, "i", std::max(n, 2), 40);
        const Element v = mui_v(ctx, n);
        c.lhs = st_delta(static_cast<unsigned>(i), v);
        c.rhs = steenrod_p(ppow(p, i - 1), st_delta(static_cast<unsigned>(i - 1), v));
        return;
    }
    const U s = s_list(ps, n);
    const int d = d_param(ps, p);
    const Element m = Md(ctx, n, s, d);
    if (form == 2) {
        const int i = small(ps, "i", n, 40);
        c.lhs = st_delta(static_cast<unsigned>(i + 1), m);
        c.rhs = steenrod_p(ppow(p, i), st_delta(static_cast<unsigned>(i), m));
    } else {
        const int u = small(ps, "u", n, 40);
        c.lhs = st_u(static_cast<unsigned>(u + 1), m);
        c.rhs = steenrod_p(ppow(p, u), st_u(static_cast<unsigned>(u), m));
    }
}

std::vector<Params> thm39_plan(std::uint32_t p, Profile profile)
{
    const int ispan = quick(profile) ? 1 : 2;
    std::vector<Params> out;
    for (int n = 1; n <= 3; ++n) {
        for (int i = std::max(n, 2); i <= n + ispan; ++i)
            out.push_back(base(p, n).set("form", 1).set("i", i));
        for (const auto& s : s_lists(n))
            for (int d = 1; d <= static_cast<int>(p) - 1; ++d)
                for (int i = n; i <= n + ispan; ++i) {
                    out.push_back(base(p, n).set("form", 2).set_list("s", s).set("d", d).set("i", i));
                    out.push_back(base(p, n).set("form", 3).set_list("s", s).set("d", d).set("u", i));
                }
    }
    return out;
}

void rem310(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int form = small(ps, "form", 1, 6);
    Context ctx(p, n);
    c.branch = "form" + std::to_string(form);
    auto q = [&](int m, int t) { return Q(ctx, m, t); };
    switch (form) {
    case 1: {
        const int s = small(ps, "s", 0, n - 1);
        c.lhs = st_delta(static_cast<unsigned>(n + 1), q(n, s));
        c.rhs = sgn(n, q(n, 0) * (frob(q(n, n - 1), 1) * q(n, s) - frob(q(n, s - 1), 1)));
        return;
    }
    case 2: {
        const int s = small(ps, "s", 0, n - 1);
        const Element top = q(n, n - 1);
        const Element inner = frob(top, 2) * frob(top, 1) * q(n, s) - frob(q(n, n - 2), 2) * q(n, s) +
                              frob(q(n, s - 2), 2) - frob(q(n, s - 1), 1) * frob(top, 2);
        c.lhs = st_delta(static_cast<unsigned>(n + 2), q(n, s));
        c.rhs = sgn(n, q(n, 0) * inner);
        return;
    }
    case 3: {
        const Element v = mui_v(ctx, n);
        const Element a = q(n - 1, n - 2);
        const Element inner = (frob(a, 2) * frob(a, 1) - frob(q(n - 1, n - 3), 2)) * v + frob(a, 2) * frob(v, 1) +
                              frob(v, 2);
        c.lhs = st_delta(static_cast<unsigned>(n + 1), v);
        c.rhs = sgn(n - 1, q(n - 1, 0) * inner);
        return;
    }
    default:
        break;
    }
    const U s = s_list(ps, n);
    const int d = d_param(ps, p);
    const int k = static_cast<int>(s.size());
    const Element m = Md(ctx, n, s, d);
    if (form == 4) {
        c.lhs = st_u(static_cast<unsigned>(n), m);
        Element rhs(ctx);
        for (int t = 1; t <= k; ++t) {
            const U rest = without(s, t - 1);
            const Element mt = rest.empty() ? Lpow(ctx, n, d) : Md(ctx, n, rest, d);
            rhs += sgn(n - 1 + k - t, mt * q(n, static_cast<int>(s[t - 1])));
        }
        c.rhs = rhs;
    } else if (form == 5) {
        require(s[0] > 0, "this expansion needs s_1 > 0");
        c.lhs = st_delta(static_cast<unsigned>(n), m);
        Element rhs(ctx);
        for (int t = 1; t <= k; ++t)
            rhs += sgn(t, Md(ctx, n, cat({0}, without(s, t - 1)), d) * q(n, static_cast<int>(s[t - 1])));
        rhs += (m * q(n, 0)).scaled(d);
        c.rhs = sgn(n - 1, rhs);
    } else {
        require(s[0] == 0, "this expansion needs s_1 = 0");
        c.lhs = st_delta(static_cast<unsigned>(n), m);
        c.rhs = sgn(n - 1, (m * q(n, 0)).scaled(d - 1));
    }
}

std::vector<Params> rem310_plan(std::uint32_t p, Profile profile)
{
    std::vector<Params> out;
    const int nmax = quick(profile) ? 2 : 3;
    for (int n = 2; n <= nmax; ++n) {
        for (int form = 1; form <= 2; ++form)
            for (int s = 0; s < n; ++s)
                out.push_back(base(p, n).set("form", form).set("s", s));
        out.push_back(base(p, n).set("form", 3));
        for (const auto& s : s_lists(n))
            for (int d = 1; d <= static_cast<int>(p) - 1; ++d) {
                out.push_back(base(p, n).set("form", 4).set_list("s", s).set("d", d));
                out.push_back(base(p, n).set("form", s[0] > 0 ? 5 : 6).set_list("s", s).set("d", d));
            }
    }
    return out;
}

// Section 4 identities live in two or three variables.

struct UVW {
    unsigned u, v, w;
};

UVW uvw(const Params& ps, bool need_w)
{
    const int u = small(ps, "u", 0, 40);
    const int v = small(ps, "v", u + 1, 40);
    const int w = need_w ? small(ps, "w", v + 1, 40) : v + 1;
    return {static_cast<unsigned>(u), static_cast<unsigned>(v), static_cast<unsigned>(w)};
}

void ct7(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const auto [u, v, w] = uvw(ps, false);
    Context ctx(p, 2);
    c.lhs = B(ctx, 0, {u, v});
    const Element v1 = mui_v(ctx, 1), v2 = mui_v(ctx, 2);
    Element rhs(ctx);
    for (unsigned s = u; s < v; ++s)
        rhs += pow(v1, ppow(p, v) - ppow(p, s + 1) + ppow(p, u)) * frob(v2, s);
    c.rhs = rhs;
}

void ct8(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const auto [u, v, w] = uvw(ps, true);
    Context ctx(p, 3);
    const Element l2 = dickson_L(ctx, 2), v3 = mui_v(ctx, 3);
    // Both sides multiplied by L_2^{p^w} so every power of L_2 is non-negative.
    c.lhs = B(ctx, 0, {u, v, w}) * frob(l2, w);
    Element rhs(ctx);
    for (unsigned s = u; s < v; ++s)
        rhs += B(ctx, 0, {u, s + 1}) * B(ctx, 0, {v, w}) * pow(l2, ppow(p, w) - ppow(p, s + 1)) * frob(v3, s);
    for (unsigned s = v; s < w; ++s) {
        const Element b = B(ctx, 0, {s + 1, w});
        if (!b.is_zero())
            rhs += B(ctx, 0, {u, v}) * b * pow(l2, ppow(p, w) - ppow(p, s + 1)) * frob(v3, s);
    }
    c.rhs = rhs;
}

void ct9(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const auto [u, v, w] = uvw(ps, false);
    Context ctx(p, 3);
    const Element l2 = dickson_L(ctx, 2), v3 = mui_v(ctx, 3);
    c.lhs = B(ctx, 0, {u, v, v + 1});
    Element rhs(ctx);
    for (unsigned s = u; s < v; ++s)
        rhs += B(ctx, 0, {u, s + 1}) * pow(l2, ppow(p, v) - ppow(p, s + 1)) * frob(v3, s);
    c.rhs = rhs;
}

void prop42(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const auto [u, v, w] = uvw(ps, false);
    Context ctx(p, 2);
    const Element q21 = Q(ctx, 2, 1);
    c.lhs = B(ctx, 0, {u, v});
    Element rhs(ctx);
    const auto span = static_cast<std::int64_t>(padic::geometric_span(p, u, v));
    for (auto a : padic::index_set_I(p, u, v)) {
        const auto ia = static_cast<std::int64_t>(a);
        const std::int64_t qexp = span - static_cast<std::int64_t>(p + 1) * ia;
        if (qexp < 0)
            throw Error(Errc::invalid_argument, "negative exponent on Q_{2,1} at a = " + std::to_string(a));
        rhs += sgn(static_cast<int>(a & 1),
                   Lpow(ctx, 2, static_cast<std::int64_t>(ppow(p, u)) + p * (p - 1) * ia) *
                       pow(q21, static_cast<std::uint64_t>(qexp)));
    }
    c.rhs = rhs;
}

void prop43(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const auto [u, v, w] = uvw(ps, false);
    Context ctx(p, 3);
    const Element q31 = Q(ctx, 3, 1), q32 = Q(ctx, 3, 2);
    c.lhs = B(ctx, 0, {u, v, v + 1});
    Element rhs(ctx);
    for (auto a : padic::index_set_J(p, u, v)) {
        const auto b = padic::b_func(p, u, v, a);
        if (b < 0)
            throw Error(Errc::invalid_argument, "negative exponent b = " + std::to_string(b) + " at a = " +
                                                    std::to_string(a));
        const auto cc = padic::c_func(p, u, v, a);
        rhs += sgn(static_cast<int>(a & 1),
                   Lpow(ctx, 3, static_cast<std::int64_t>(ppow(p, u) + p * (p - 1) * a)) *
                       pow(q31, static_cast<std::uint64_t>(b)) * pow(q32, cc));
    }
    c.rhs = rhs;
}

void lem45(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const auto [u, v, w] = uvw(ps, false);
    Context ctx(p, 3);
    auto b3 = [&](unsigned a, unsigned b, unsigned cc) { return B(ctx, 0, {a, b, cc}); };
    const Element q30 = Q(ctx, 3, 0), q31 = Q(ctx, 3, 1), q32 = Q(ctx, 3, 2);
    c.lhs = b3(u, v + 3, v + 4);
    c.rhs = b3(u, v + 2, v + 3) * frob(q31, v + 1) - b3(u, v + 1, v + 2) * frob(q30, v + 1) * frob(q32, v) +
            b3(u, v, v + 1) * frob(q30, v + 1) * frob(q30, v);
}

void lem44(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const auto [u, v, w] = uvw(ps, false);
    std::ostringstream why;
    const auto pv = ppow(p, v), pv1 = ppow(p, v - 1);

    auto as_set = [](const std::vector<std::uint64_t>& xs) { return std::set<std::uint64_t>(xs.begin(), xs.end()); };
    const auto j3 = as_set(padic::index_set_J(p, u, v + 3));
    const auto j2 = padic::index_set_J(p, u, v + 2);
    const auto j1 = padic::index_set_J(p, u, v + 1);
    const auto j0 = padic::index_set_J(p, u, v);

    std::multiset<std::uint64_t> joined;
    for (auto a : j2)
        joined.insert(a);
    for (auto a : j1)
        joined.insert(pv + a);
    for (auto a : j0)
        joined.insert(pv + pv1 + a);
    if (joined.size() != j3.size() || !std::equal(joined.begin(), joined.end(), j3.begin()))
        why << "set recursion fails; ";

    auto b = [&](unsigned vv, std::uint64_t a) { return padic::b_func(p, u, vv, a); };
    auto cf = [&](unsigned vv, std::uint64_t a) { return padic::c_func(p, u, vv, a); };
    for (auto a : j2)
        if (b(v + 3, a) != static_cast<std::int64_t>(ppow(p, v + 1)) + b(v + 2, a) || cf(v + 3, a) != cf(v + 2, a))
            why << "transfer fails on J(u,v+2) at a=" << a << "; ";
    for (auto a : j1)
        if (b(v + 3, pv + a) != b(v + 1, a) || cf(v + 3, pv + a) != pv + cf(v + 1, a))
            why << "transfer fails on J(u,v+1) at a=" << a << "; ";
    for (auto a : j0)
        if (b(v + 3, pv + pv1 + a) != b(v, a) || cf(v + 3, pv + pv1 + a) != cf(v, a))
            why << "transfer fails on J(u,v) at a=" << a << "; ";

    c.detail = why.str();
    c.status = c.detail.empty() ? CaseStatus::pass : CaseStatus::fail;
    c.branch = "sets+functions";
}

void mui(const Params& ps, IdentityCase& c)
{
    const auto p = prime_of(ps);
    const int n = small(ps, "n", 1, kMaxVars);
    const int k = small(ps, "k", 1, n - 1);
    const U e = ps.ulist("e");
    require(static_cast<int>(e.size()) == n - k, "e-list needs n-k entries");
    require(distinct(e), "e-list entries must be distinct");
    Context ctx(p, n);
    const bool ok = mui_expansion_check(ctx, BracketSpec{k, e, n});
    c.status = ok ? CaseStatus::pass : CaseStatus::fail;
    if (!ok)
        c.detail = "expansion mismatch";
}

std::vector<Params> mui_exp_plan(std::uint32_t p, Profile profile)
{
    const int emax = quick(profile) ? 2 : 3;
    std::vector<Params> out;
    for (int n = 2; n <= 3; ++n)
        for (int k = 1; k < n; ++k)
            for (const auto& e : tuples(n - k, emax))
                if (all_distinct(e))
                    out.push_back(base(p, n).set("k", k).set_list("e", e));
    return out;
}

// u < v (< w) plans for section 4; `span` bounds the largest index minus u.
std::vector<Params> uv_plan(std::uint32_t p, int umax, int span, int vshift)
{
    std::vector<Params> out;
    for (int u = 0; u <= umax; ++u)
        for (int v = u + 1; v + vshift - u <= span; ++v)
            out.push_back(base(p, 0).set("u", u).set("v", v));
    return out;
}

std::vector<Params> uvw_plan(std::uint32_t p, int umax, int span)
{
    std::vector<Params> out;
    for (int u = 0; u <= umax; ++u)
        for (int v = u + 1; v - u < span; ++v)
            for (int w = v + 1; w - u <= span; ++w)
                out.push_back(base(p, 0).set("u", u).set("v", v).set("w", w));
    return out;
}

// Largest index minus u allowed at p: 5 at p = 3, 3 at larger primes.
int sec4_span(std::uint32_t p, Profile profile)
{
    const int span = p == 3 ? 5 : 3;
    return quick(profile) ? std::min(span, 4) : span;
}

std::vector<IdentityEntry> build_registry()
{
    const std::vector<std::uint32_t> both{3, 5}, three{3};
    std::vector<IdentityEntry> r;
    r.push_back({"lem2.2", "St_u on [k;e] lowers k and prepends u", lem22, lem22_plan, both});
    r.push_back({"lem2.3", "St^{Delta_i} on [k;e] replaces a zero leading entry by i", lem23, lem23_plan, both});
    r.push_back({"thm2.4-ct5", "expansion of [e_1..e_{n-1}, e_n+n-1] in Q_{n-1,s} and V_n", ct5, ct5_plan, both});
    r.push_back({"thm2.4-ct6", "expansion of [k; e.., e_n+n] in Q_{n,s}", ct6, ct6_plan, both});
    r.push_back({"thm3.1", "St^{Delta_i} Q_{n,s} as a bracket times L_n^{p-2}", thm31, thm31_plan, both});
    r.push_back({"cor3.2", "St^{Delta_i} Q_{n,s} for 1 <= i <= n", cor32, cor32_plan, both});
    r.push_back({"prop3.3", "P^r on brackets", prop33, prop33_plan, three});
    r.push_back({"thm3.4", "St^{Delta_{i+1}} Q_{n,s} = P^{p^i} St^{Delta_i} Q_{n,s}, n <= i", thm34, thm34_plan,
                 three});
    r.push_back({"thm3.5", "St^{Delta_i} V_n as a bracket times L_{n-1}^{p-2}", thm35, thm35_plan, both});
    r.push_back({"cor3.6", "St^{Delta_i} V_n for 0 < i <= n", cor36, cor36_plan, both});
    r.push_back({"thm3.7", "St^{Delta_i} M^{(d)}_{n,s}", thm37, [](std::uint32_t p, Profile) {
                     return mui_plan(p, "i", 1);
                 }, both});
    r.push_back({"thm3.8", "St_u M^{(d)}_{n,s}", thm38, [](std::uint32_t p, Profile) {
                     return mui_plan(p, "u", 0);
                 }, both});
    r.push_back({"thm3.9", "P^{p^i} compositions on V_n and M^{(d)}", thm39, thm39_plan, three});
    r.push_back({"rem3.10", "closed forms for St^{Delta_{n+1}}, St^{Delta_{n+2}}, St_n, St^{Delta_n}", rem310,
                 rem310_plan, three});
    r.push_back({"prop4.1-ct7", "[u,v] in V_1, V_2", ct7, [](std::uint32_t p, Profile pr) {
                     return uv_plan(p, 1, sec4_span(p, pr), 0);
                 }, both});
    r.push_back({"prop4.1-ct8", "[u,v,w] L_2^{p^w} in brackets, L_2, V_3", ct8, [](std::uint32_t p, Profile pr) {
                     return uvw_plan(p, 1, sec4_span(p, pr));
                 }, both});
    r.push_back({"prop4.2", "[u,v] in L_2, Q_{2,1} over I(u,v)", prop42, [](std::uint32_t p, Profile pr) {
                     return uv_plan(p, 1, sec4_span(p, pr), 0);
                 }, both});
    r.push_back({"prop4.3", "[u,v,v+1] in L_3, Q_{3,1}, Q_{3,2} over J(u,v)", prop43,
                 [](std::uint32_t p, Profile pr) { return uv_plan(p, 1, sec4_span(p, pr), 0); }, both});
    r.push_back({"lem4.4", "recursion of J(u,v) and of b, c", lem44, [](std::uint32_t p, Profile pr) {
                     return uv_plan(p, 2, quick(pr) ? 6 : 9, 0);
                 }, both});
    r.push_back({"lem4.5", "four-term recursion for [u,v+3,v+4]", lem45, [](std::uint32_t p, Profile pr) {
                     // w = v+4, so the smallest case already spans 5.
                     return uv_plan(p, 1, quick(pr) || p != 3 ? 5 : 6, 4);
                 }, both});
    r.push_back({"ct9", "[u,v,v+1] in [u,s+1], L_2, V_3", ct9, [](std::uint32_t p, Profile pr) {
                     return uv_plan(p, 1, sec4_span(p, pr), 1);
                 }, both});
    r.push_back({"mui-expansion", "[k;e] L_n as a sum of M_{n,s} [s,e]", mui, mui_exp_plan, both});
    return r;
}

}  // namespace

const std::vector<IdentityEntry>& registry()
{
    static const std::vector<IdentityEntry> r = build_registry();
    return r;
}

const IdentityEntry& find_identity(const std::string& id)
{
    for (const auto& e : registry())
        if (e.id == id)
            return e;
    throw Error(Errc::unknown_id, "unknown identity id '" + id + "'");
}

IdentityCase check(const std::string& id, const Params& params)
{
    const auto& entry = find_identity(id);
    IdentityCase c;
    c.id = id;
    c.params = params;
    entry.evaluate(params, c);
    if (c.lhs && c.rhs) {
        require_same_context(*c.lhs, *c.rhs);
        c.diff = *c.lhs - *c.rhs;
        c.status = c.diff->is_zero() ? CaseStatus::pass : CaseStatus::fail;
    }
    return c;
}

SweepPlan make_plan(const std::string& id, const std::vector<std::uint32_t>& primes, Profile profile)
{
    const auto& entry = find_identity(id);
    SweepPlan plan{id, {}};
    for (auto p : primes.empty() ? entry.full_primes : primes) {
        Context check_prime(p, 1);
        auto cases = entry.plan(p, profile);
        plan.cases.insert(plan.cases.end(), cases.begin(), cases.end());
    }
    return plan;
}

std::vector<SweepPlan> make_all_plans(const std::vector<std::uint32_t>& primes, Profile profile)
{
    std::vector<SweepPlan> out;
    for (const auto& e : registry())
        out.push_back(make_plan(e.id, primes, profile));
    return out;
}

}  // namespace modinv

#include "modinv/expr.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "modinv/invariants.hpp"
#include "modinv/milnor.hpp"

namespace modinv::expr {

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Node parse_all()
    {
        Node n = parse_expr();
        skip_ws();
        if (pos_ < src_.size())
            fail(std::string("unexpected '") + src_[pos_] + "'");
        return n;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_ + 1, what); }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c)
    {
        if (!peek(c))
            return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= src_.size())
                fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    std::int64_t integer(bool allow_negative = false)
    {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (allow_negative && pos_ < src_.size() && src_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail(pos_ >= src_.size() ? "expected an integer but input ended" : "expected an integer");
        std::uint64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            const auto digit = static_cast<std::uint64_t>(src_[pos_] - '0');
            if (v > (static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) - digit) / 10) {
                pos_ = start;
                fail("integer literal too large");
            }
            v = v * 10 + digit;
            ++pos_;
        }
        return negative ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    }

    // Possibly empty comma separated integers, stopping before `close`.
    std::vector<std::int64_t> intlist(char close, bool allow_negative = false)
    {
        std::vector<std::int64_t> out;
        if (peek(close))
            return out;
        out.push_back(integer(allow_negative));
        while (accept(','))
            out.push_back(integer(allow_negative));
        return out;
    }

    std::vector<std::int64_t> bracketed()
    {
        expect('[');
        auto v = intlist(']');
        expect(']');
        return v;
    }

    Node parse_expr()
    {
        Node left = parse_term();
        while (true) {
            Kind k;
            if (accept('+'))
                k = Kind::Add;
            else if (accept('-'))
                k = Kind::Sub;
            else
                return left;
            Node right = parse_term();
            left = Node{k, {}, {}, {std::move(left), std::move(right)}};
        }
    }

    Node parse_term()
    {
        Node left = parse_factor();
        while (accept('*')) {
            Node right = parse_factor();
            left = Node{Kind::Mul, {}, {}, {std::move(left), std::move(right)}};
        }
        return left;
    }

    Node parse_factor()
    {
        Node base = parse_atom();
        if (accept('^'))
            return Node{Kind::Pow, {integer()}, {}, {std::move(base)}};
        return base;
    }

    Node parse_atom()
    {
        skip_ws();
        if (pos_ >= src_.size())
            fail("expected an expression but input ended");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Node inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Node{Kind::Int, {integer()}, {}, {}};
        if (!std::isalpha(static_cast<unsigned char>(c)))
            fail(std::string("unexpected '") + c + "'");

        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::string name(src_.substr(start, pos_ - start));
        Node n;
        if (name == "x" || name == "y") n.kind = name == "x" ? Kind::X : Kind::Y;
        else if (name == "L") n.kind = Kind::L;
        else if (name == "Ls") n.kind = Kind::Ls;
        else if (name == "Q") n.kind = Kind::Q;
        else if (name == "V") n.kind = Kind::V;
        else if (name == "M") n.kind = Kind::M;
        else if (name == "Md") n.kind = Kind::Md;
        else if (name == "B") n.kind = Kind::B;
        else if (name == "Stu") n.kind = Kind::Stu;
        else if (name == "StDelta") n.kind = Kind::StDelta;
        else if (name == "P") n.kind = Kind::P;
        else if (name == "StSR") n.kind = Kind::StSR;
        else if (name == "Act") n.kind = Kind::Act;
        else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        expect('(');
        switch (n.kind) {
        case Kind::X: case Kind::Y: case Kind::L: case Kind::V:
            n.ints = {integer()};
            break;
        case Kind::Ls: case Kind::Q:
            n.ints.push_back(integer());
            expect(',');
            n.ints.push_back(integer());
            break;
        case Kind::M:
            n.ints = {integer()};
            expect(';');
            n.lists.push_back(intlist(')'));
            break;
        case Kind::Md:
            n.ints.push_back(integer());
            expect(',');
            n.ints.push_back(integer());
            expect(';');
            n.lists.push_back(intlist(')'));
            break;
        case Kind::B:
            n.ints.push_back(integer());
            expect(';');
            n.lists.push_back(bracketed());
            expect(';');
            n.ints.push_back(integer());
            break;
        case Kind::Stu: case Kind::StDelta: case Kind::P:
            n.ints = {integer()};
            expect(',');
            n.kids.push_back(parse_expr());
            break;
        case Kind::StSR:
            n.lists.push_back(bracketed());
            expect(',');
            n.lists.push_back(bracketed());
            expect(',');
            n.kids.push_back(parse_expr());
            break;
        case Kind::Act:
            expect('[');
            do {
                expect('[');
                n.lists.push_back(intlist(']', true));
                expect(']');
            } while (accept(','));
            expect(']');
            expect(',');
            n.kids.push_back(parse_expr());
            break;
        default:
            break;
        }
        expect(')');
        return n;
    }
};

std::string join(const std::vector<std::int64_t>& v)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << v[i];
    return out.str();
}

bool is_sum(const Node& n) { return n.kind == Kind::Add || n.kind == Kind::Sub; }

std::string wrap(const Node& n, bool parens) { return parens ? "(" + print(n) + ")" : print(n); }

int small_int(std::int64_t v, std::int64_t lo, std::int64_t hi, const char* what)
{
    if (v < lo || v > hi)
        throw Error(Errc::invalid_argument, std::string(what) + " out of range: " + std::to_string(v));
    return static_cast<int>(v);
}

int var_index(std::int64_t v, int n)
{
    if (v < 1 || v > n)
        throw Error(Errc::index_out_of_range, "variable index " + std::to_string(v) + " outside 1.." + std::to_string(n));
    return static_cast<int>(v);
}

std::vector<unsigned> to_unsigned(const std::vector<std::int64_t>& v, const char* what)
{
    std::vector<unsigned> out;
    for (auto x : v)
        out.push_back(static_cast<unsigned>(small_int(x, 0, 62, what)));
    return out;
}

}  // namespace

Node parse(std::string_view src) { return Parser(src).parse_all(); }

std::string print(const Node& n)
{
    const auto& a = n.ints;
    switch (n.kind) {
    case Kind::X: return "x(" + std::to_string(a[0]) + ")";
    case Kind::Y: return "y(" + std::to_string(a[0]) + ")";
    case Kind::Int: return std::to_string(a[0]);
    case Kind::L: return "L(" + std::to_string(a[0]) + ")";
    case Kind::Ls: return "Ls(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + ")";
    case Kind::Q: return "Q(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + ")";
    case Kind::V: return "V(" + std::to_string(a[0]) + ")";
    case Kind::M: return "M(" + std::to_string(a[0]) + ";" + join(n.lists[0]) + ")";
    case Kind::Md:
        return "Md(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + ";" + join(n.lists[0]) + ")";
    case Kind::B:
        return "B(" + std::to_string(a[0]) + ";[" + join(n.lists[0]) + "];" + std::to_string(a[1]) + ")";
    case Kind::Stu: return "Stu(" + std::to_string(a[0]) + ", " + print(n.kids[0]) + ")";
    case Kind::StDelta: return "StDelta(" + std::to_string(a[0]) + ", " + print(n.kids[0]) + ")";
    case Kind::P: return "P(" + std::to_string(a[0]) + ", " + print(n.kids[0]) + ")";
    case Kind::StSR:
        return "StSR([" + join(n.lists[0]) + "],[" + join(n.lists[1]) + "], " + print(n.kids[0]) + ")";
    case Kind::Act: {
        std::string rows;
        for (std::size_t i = 0; i < n.lists.size(); ++i)
            rows += (i ? ",[" : "[") + join(n.lists[i]) + "]";
        return "Act([" + rows + "], " + print(n.kids[0]) + ")";
    }
    case Kind::Add:
    case Kind::Sub:
        return print(n.kids[0]) + (n.kind == Kind::Add ? " + " : " - ") + wrap(n.kids[1], is_sum(n.kids[1]));
    case Kind::Mul:
        return wrap(n.kids[0], is_sum(n.kids[0])) + " * " +
               wrap(n.kids[1], is_sum(n.kids[1]) || n.kids[1].kind == Kind::Mul);
    case Kind::Pow: {
        const Node& b = n.kids[0];
        return wrap(b, is_sum(b) || b.kind == Kind::Mul || b.kind == Kind::Pow) + "^" + std::to_string(a[0]);
    }
    }
    return {};
}

Element eval(const Context& ctx, const Node& n)
{
    const auto& a = n.ints;
    const int nmax = ctx.n();
    switch (n.kind) {
    case Kind::X: return Element::x(ctx, var_index(a[0], nmax));
    case Kind::Y: return Element::y(ctx, var_index(a[0], nmax));
    case Kind::Int: return Element::constant(ctx, a[0]);
    case Kind::L: return build(ctx, inv::L{small_int(a[0], 0, nmax, "L index")});
    case Kind::Ls:
        return build(ctx, inv::Ls{small_int(a[0], 0, nmax, "Ls index"), small_int(a[1], 0, nmax, "Ls index")});
    case Kind::Q:
        return build(ctx, inv::Q{small_int(a[0], 0, nmax, "Q index"), small_int(a[1], 0, nmax, "Q index")});
    case Kind::V: return build(ctx, inv::V{small_int(a[0], 1, nmax, "V index")});
    case Kind::M: return build(ctx, inv::M{small_int(a[0], 0, nmax, "M index"), to_unsigned(n.lists[0], "M entry")});
    case Kind::Md:
        return build(ctx, inv::Md{small_int(a[0], 0, nmax, "Md index"), small_int(a[1], 1, ctx.p() - 1, "Md power"),
                                  to_unsigned(n.lists[0], "Md entry")});
    case Kind::B: {
        const int m = small_int(a[1], 0, nmax, "bracket size");
        return bracket(ctx, BracketSpec{small_int(a[0], 0, m, "bracket k"), to_unsigned(n.lists[0], "bracket entry"), m});
    }
    case Kind::Stu:
        return st_u(static_cast<unsigned>(small_int(a[0], 0, 62, "Stu index")), eval(ctx, n.kids[0]));
    case Kind::StDelta:
        return st_delta(static_cast<unsigned>(small_int(a[0], 1, 62, "StDelta index")), eval(ctx, n.kids[0]));
    case Kind::P: return steenrod_p(static_cast<std::uint64_t>(a[0]), eval(ctx, n.kids[0]));
    case Kind::StSR: {
        std::vector<std::uint64_t> R;
        for (auto r : n.lists[1]) {
            if (r < 0)
                throw Error(Errc::invalid_argument, "R entries must be non-negative");
            R.push_back(static_cast<std::uint64_t>(r));
        }
        return apply(MilnorOp(to_unsigned(n.lists[0], "S entry"), std::move(R)), eval(ctx, n.kids[0]));
    }
    case Kind::Act: {
        std::vector<std::int64_t> entries;
        for (const auto& row : n.lists) {
            if (static_cast<int>(row.size()) != nmax || static_cast<int>(n.lists.size()) != nmax)
                throw Error(Errc::invalid_argument, "Act needs an n x n matrix with n = " + std::to_string(nmax));
            entries.insert(entries.end(), row.begin(), row.end());
        }
        return apply_matrix(MatrixFp(ctx, entries), eval(ctx, n.kids[0]));
    }
    case Kind::Add: return eval(ctx, n.kids[0]) + eval(ctx, n.kids[1]);
    case Kind::Sub: return eval(ctx, n.kids[0]) - eval(ctx, n.kids[1]);
    case Kind::Mul: return eval(ctx, n.kids[0]) * eval(ctx, n.kids[1]);
    case Kind::Pow: return pow(eval(ctx, n.kids[0]), static_cast<std::uint64_t>(a[0]));
    }
    throw Error(Errc::invalid_argument, "bad expression node");
}

Node random_tree(std::mt19937_64& rng, int depth)
{
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    auto list = [&](int maxlen, int lo, int hi) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(pick(0, maxlen)));
        for (auto& x : v)
            x = pick(lo, hi);
        return v;
    };
    const int leaf_kinds = 11, all_kinds = 19;
    const int k = static_cast<int>(depth <= 0 ? pick(0, leaf_kinds - 1) : pick(0, all_kinds - 1));
    Node n;
    switch (k) {
    case 0: n = {Kind::X, {pick(0, 9)}, {}, {}}; break;
    case 1: n = {Kind::Y, {pick(0, 9)}, {}, {}}; break;
    case 2: n = {Kind::Int, {pick(0, 1000)}, {}, {}}; break;
    case 3: n = {Kind::L, {pick(0, 9)}, {}, {}}; break;
    case 4: n = {Kind::Ls, {pick(0, 9), pick(0, 9)}, {}, {}}; break;
    case 5: n = {Kind::Q, {pick(0, 9), pick(0, 9)}, {}, {}}; break;
    case 6: n = {Kind::V, {pick(0, 9)}, {}, {}}; break;
    case 7: n = {Kind::M, {pick(0, 9)}, {list(3, 0, 9)}, {}}; break;
    case 8: n = {Kind::Md, {pick(0, 9), pick(0, 9)}, {list(3, 0, 9)}, {}}; break;
    case 9: n = {Kind::B, {pick(0, 9), pick(0, 9)}, {list(4, 0, 9)}, {}}; break;
    case 10: n = {Kind::Int, {pick(0, 5)}, {}, {}}; break;
    case 11: n = {Kind::Stu, {pick(0, 9)}, {}, {random_tree(rng, depth - 1)}}; break;
    case 12: n = {Kind::StDelta, {pick(0, 9)}, {}, {random_tree(rng, depth - 1)}}; break;
    case 13: n = {Kind::P, {pick(0, 99)}, {}, {random_tree(rng, depth - 1)}}; break;
    case 14: n = {Kind::StSR, {}, {list(3, 0, 9), list(3, 0, 9)}, {random_tree(rng, depth - 1)}}; break;
    case 15: {
        const auto dim = pick(1, 3);
        n.kind = Kind::Act;
        for (int r = 0; r < dim; ++r) {
            std::vector<std::int64_t> row(static_cast<std::size_t>(dim));
            for (auto& x : row)
                x = pick(-4, 4);
            n.lists.push_back(row);
        }
        n.kids.push_back(random_tree(rng, depth - 1));
        break;
    }
    case 16: n = {pick(0, 1) ? Kind::Add : Kind::Sub, {}, {}, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)}}; break;
    case 17: n = {Kind::Mul, {}, {}, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)}}; break;
    default: n = {Kind::Pow, {pick(0, 12)}, {}, {random_tree(rng, depth - 1)}}; break;
    }
    return n;
}

}  // namespace modinv::expr

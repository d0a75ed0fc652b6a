#include <doctest.h>

#include "checks.hpp"
#include "modinv/error.hpp"
#include "modinv/expr.hpp"
#include "modinv/invariants.hpp"

using namespace modinv;
using namespace modinv::expr;

namespace {

std::size_t syntax_column(const char* src)
{
    try {
        parse(src);
    } catch (const SyntaxError& e) {
        return e.column();
    }
    return 0;
}

}  // namespace

TEST_CASE("parse shapes")
{
    const Node app = parse("StDelta(1, Q(2,1))");
    CHECK(app.kind == Kind::StDelta);
    REQUIRE(app.kids.size() == 1);
    CHECK(app.kids[0].kind == Kind::Q);
    CHECK(parse("B(1;[1];2) * L(2)^2").kind == Kind::Mul);
    CHECK(parse("x(1) + y(2) - 3").kind == Kind::Sub);
    CHECK(parse("y(1)^3").kind == Kind::Pow);
}

TEST_CASE("canonical printing")
{
    CHECK(print(parse("StDelta( 1 ,Q(2, 1))")) == "StDelta(1, Q(2,1))");
    CHECK(print(parse("B(1;[1];2)*L(2)^2")) == "B(1;[1];2) * L(2)^2");
    CHECK(print(parse("(x(1)+y(1))*(y(2))")) == "(x(1) + y(1)) * y(2)");
    CHECK(print(parse("x(1) - (y(1) + y(2))")) == "x(1) - (y(1) + y(2))");
    CHECK(print(parse("Act([[1,0],[-1,1]], y(2))")) == "Act([[1,0],[-1,1]], y(2))");
}

TEST_CASE("syntax errors carry a column")
{
    CHECK(syntax_column("Q(2,") == 5);
    CHECK(syntax_column("") == 1);
    CHECK(syntax_column("x(1) +* y(1)") == 7);
    CHECK(syntax_column("Foo(1)") == 1);
    CHECK(syntax_column("x(1))") == 5);
    CHECK(syntax_column("Q(2)") != 0);
}

TEST_CASE("evaluation")
{
    Context c2(3, 2);
    CHECK(eval(c2, "StDelta(1, Q(2,1))") == eval(c2, "Q(2,0)"));
    CHECK(eval(c2, "StDelta(1, Q(2,1))") == dickson_q(c2, 2, 0));
    CHECK_FALSE(eval(c2, "StDelta(1, Q(2,1))") == -dickson_q(c2, 2, 0));
    CHECK(eval(Context(3, 1), "Stu(0, x(1))") == Element::y(Context(3, 1), 1));
    CHECK(eval(c2, "L(2) - B(0;[0,1];2)").is_zero());
    CHECK(eval(c2, "Md(2,2;0)") == mui_m(c2, 2, {0}, 2));
    CHECK(eval(c2, "P(1, y(1)^2)") == eval(c2, "2*y(1)^4"));
    CHECK(eval(c2, "StSR([0],[1], x(1))") == apply(MilnorOp({0}, {1}), Element::x(c2, 1)));
    CHECK(eval(c2, "Act([[1,0],[1,1]], V(2))") == mui_v(c2, 2));
    CHECK_THROWS_AS(eval(c2, "y(3)"), Error);
    CHECK_THROWS_AS(eval(c2, "Q(3,0)"), Error);
}

TEST_CASE("round trip on random trees")
{
    const auto r = checks::roundtrip_fuzz(300, 3);
    INFO(r.first_failure);
    CHECK(r.ok());
}

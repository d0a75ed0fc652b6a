#include <doctest.h>

#include <set>

#include "modinv/error.hpp"
#include "modinv/identities.hpp"
#include "modinv/invariants.hpp"

using namespace modinv;

TEST_CASE("registry covers the expected statements")
{
    const std::set<std::string> expected{
        "lem2.2", "lem2.3", "thm2.4-ct5", "thm2.4-ct6", "thm3.1", "cor3.2", "prop3.3", "thm3.4",
        "thm3.5", "cor3.6", "thm3.7", "thm3.8", "thm3.9", "rem3.10", "prop4.1-ct7", "prop4.1-ct8",
        "prop4.2", "prop4.3", "lem4.4", "lem4.5", "ct9", "mui-expansion"};
    std::set<std::string> got;
    for (const auto& e : registry()) {
        CHECK(got.insert(e.id).second);
        CHECK_FALSE(e.summary.empty());
        CHECK_FALSE(e.full_primes.empty());
    }
    CHECK(got == expected);
    CHECK_THROWS_AS(find_identity("nosuch"), Error);
}

TEST_CASE("single cases")
{
    Params a{{"p", {3}}, {"n", {2}}, {"s", {1}}, {"i", {1}}};
    const auto c1 = check("cor3.2", a);
    CHECK(c1.passed());
    CHECK(c1.branch == "i=s>0");
    Context ctx(3, 2);
    REQUIRE(c1.lhs);
    CHECK(*c1.lhs == dickson_q(ctx, 2, 0));

    Params b{{"p", {3}}, {"k", {0}}, {"e", {0, 1}}, {"n", {2}}, {"u", {1}}};
    const auto c2 = check("lem2.2", b);
    CHECK(c2.passed());
    REQUIRE(c2.lhs);
    CHECK(c2.lhs->is_zero());
    CHECK(c2.rhs->is_zero());

    Params t{{"p", {3}}, {"n", {2}}, {"s", {0}}, {"i", {1}}};
    CHECK(check("thm3.1", t).passed());
}

TEST_CASE("hypotheses are enforced")
{
    Params bad{{"p", {3}}, {"n", {2}}, {"s", {2}}, {"i", {1}}};
    CHECK_THROWS_AS(check("cor3.2", bad), Error);
    Params missing{{"p", {3}}, {"n", {2}}};
    CHECK_THROWS_AS(check("cor3.2", missing), Error);
    Params p2{{"p", {2}}, {"n", {2}}, {"s", {1}}, {"i", {1}}};
    CHECK_THROWS_AS(check("cor3.2", p2), Error);
}

TEST_CASE("params text")
{
    Params ps;
    ps.assign("p=3");
    ps.assign("e=0,1");
    ps.assign("s=1");
    CHECK(ps.to_string() == "p=3 s=1 e=[0,1]");
    CHECK(ps.get("p") == 3);
    CHECK(ps.ulist("e") == std::vector<unsigned>{0, 1});
    CHECK_THROWS_AS(ps.get("e"), Error);
    CHECK_THROWS_AS(ps.assign("novalue"), Error);
}

TEST_CASE("sweep reports")
{
    SUBCASE("empty plan")
    {
        const Report r = sweep({});
        CHECK(r.ids.empty());
        CHECK(r.total() == 0);
        CHECK(r.all_passed());
        const Report r2 = sweep({SweepPlan{"cor3.2", {}}});
        REQUIRE(r2.ids.size() == 1);
        CHECK(r2.ids[0].total == 0);
    }
    SUBCASE("branches and determinism")
    {
        const auto plan = make_plan("cor3.2", {3}, Profile::quick);
        const Report r = sweep({plan}, 1);
        CHECK(r.all_passed());
        CHECK(r.ids[0].branches.size() == 3);
        CHECK(format_text(r, false) == format_text(sweep({plan}, 2), false));
        CHECK(format_json(r, false) == format_json(sweep({plan}, 1), false));
    }
    SUBCASE("failures are reported at the first tuple in plan order")
    {
        auto plan = make_plan("cor3.2", {3}, Profile::quick);
        Params bad1{{"p", {3}}, {"n", {2}}, {"s", {5}}, {"i", {1}}};
        Params bad2{{"p", {3}}, {"n", {2}}, {"s", {7}}, {"i", {1}}};
        plan.cases.insert(plan.cases.begin() + 2, bad1);
        plan.cases.push_back(bad2);
        const Report r = sweep({plan});
        CHECK_FALSE(r.all_passed());
        CHECK(r.passed() + 2 == r.total());
        REQUIRE(r.ids[0].first_failure);
        CHECK(r.ids[0].first_failure->params == bad1);
        CHECK(r.ids[0].first_failure->detail.find("hypothesis") != std::string::npos);
        CHECK(format_text(r).find("FAIL") != std::string::npos);
    }
    CHECK_THROWS_AS(make_plan("nosuch", {3}, Profile::quick), Error);
}

// Command line front end. Talks to the engine through the C API only.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modinv/modinv.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int report_error(modinv_status st)
{
    std::cerr << "error: " << modinv_status_name(st) << ": " << modinv_last_error() << '\n';
    return kExitError;
}

int usage_error(const std::string& msg)
{
    std::cerr << "error: usage: " << msg << '\n';
    return kExitError;
}

// Owns a string handed out by the library.
struct CStr {
    char* s = nullptr;
    ~CStr() { modinv_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

struct Elem {
    modinv_element* e = nullptr;
    ~Elem() { modinv_element_free(e); }
};

struct Ctx {
    modinv_context* c = nullptr;
    ~Ctx() { modinv_context_free(c); }
};

std::string json_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

bool parse_primes(const std::string& text, std::vector<std::uint32_t>& out)
{
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0 || v > 0xffffffffLL)
                return false;
            out.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            return false;
        }
    }
    return !out.empty();
}

// Prints an element with its degree and size; JSON embeds the element encoding.
int print_element(const modinv_element* e, bool json, const std::string& label, int invariant = -1)
{
    CStr text;
    if (auto st = modinv_element_to_text(e, &text.s))
        return report_error(st);
    std::uint64_t degree = 0;
    const bool homogeneous = modinv_element_degree(e, &degree) != 0;
    const auto terms = modinv_element_terms(e);
    if (json) {
        CStr enc;
        if (auto st = modinv_element_to_json(e, &enc.s))
            return report_error(st);
        std::cout << "{\"input\": \"" << json_escape(label) << "\", \"text\": \"" << json_escape(text.str())
                  << "\", \"degree\": " << (homogeneous ? std::to_string(degree) : "null") << ", \"terms\": " << terms
                  << ", \"element\": " << enc.str();
        if (invariant >= 0)
            std::cout << ", \"unitriangular_invariant\": " << (invariant ? "true" : "false");
        std::cout << "}\n";
    } else {
        std::cout << text.str() << '\n'
                  << "degree: " << (homogeneous ? std::to_string(degree) : "-") << "  terms: " << terms << '\n';
        if (invariant >= 0)
            std::cout << "unitriangular invariant: " << (invariant ? "yes" : "no") << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modular invariants and Steenrod-Milnor operations over F_p"};
    app.require_subcommand(1);

    std::string primes_text = "3";
    int n = 3;
    bool json = false;
    std::string profile = "quick";
    std::uint64_t seed = 1;
    bool primes_given = false;
    app.add_option_function<std::string>(
           "--p", [&](const std::string& v) { primes_text = v, primes_given = true; },
           "odd prime (comma list for verify-all)")
        ->type_name("P");
    app.add_option("--n", n, "number of variable pairs (1..8)")->capture_default_str();
    app.add_flag("--json", json, "JSON output");
    app.add_option("--profile", profile, "verification profile")->check(CLI::IsMember({"quick", "full"}));
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
    app.fallthrough();

    auto* eval = app.add_subcommand("eval", "evaluate an expression");
    std::string expression;
    eval->add_option("expr", expression, "expression, e.g. \"StDelta(1, Q(2,1))\"")->required();

    auto* inv = app.add_subcommand("invariant", "print a named invariant such as Q(2,1) or Md(2,2;0)");
    std::string inv_name;
    int trials = 5;
    inv->add_option("name", inv_name)->required();
    inv->add_option("--trials", trials, "random unitriangular matrices tried when --seed is given");

    auto* verify = app.add_subcommand("verify", "check one identity (a single case with --param, else its sweep)");
    std::string id;
    std::vector<std::string> params;
    verify->add_option("--id", id, "identity id (see the list command)")->required();
    verify->add_option("--param", params, "name=value, lists as 0,1");

    auto* list = app.add_subcommand("list", "list identity ids");

    auto* verify_all = app.add_subcommand("verify-all", "sweep every identity");
    unsigned threads = 0;
    bool no_timings = false;
    for (auto* sub : {verify, verify_all}) {
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_flag("--no-timings", no_timings, "omit timings from the report");
    }

    auto* index = app.add_subcommand("index-set", "list I(u,v) or J(u,v)");
    std::string which = "I";
    unsigned u = 0, v = 1;
    index->add_option("--kind,--set", which, "which set")->check(CLI::IsMember({"I", "J"}));
    index->add_option("--u", u)->required();
    index->add_option("--v", v)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        for (auto& c : msg)
            if (c == '\n')
                c = ' ';
        return usage_error(msg);
    }

    std::vector<std::uint32_t> primes;
    if (!parse_primes(primes_text, primes))
        return usage_error("--p expects a prime or a comma separated list of primes");
    const bool full = profile == "full";

    auto single_context = [&](Ctx& ctx) -> int {
        if (primes.size() != 1)
            return usage_error("this command takes a single --p");
        if (auto st = modinv_context_new(primes[0], n, &ctx.c))
            return report_error(st);
        return 0;
    };

    if (eval->parsed() || inv->parsed()) {
        Ctx ctx;
        if (int rc = single_context(ctx))
            return rc;
        const std::string& src = eval->parsed() ? expression : inv_name;
        Elem e;
        if (auto st = modinv_eval(ctx.c, src.c_str(), &e.e))
            return report_error(st);
        int invariant = -1;
        if (inv->parsed() && app.count("--seed") > 0) {
            if (auto st = modinv_unitriangular_check(e.e, seed, trials, &invariant))
                return report_error(st);
        }
        if (int rc = print_element(e.e, json, src, invariant))
            return rc;
        return invariant == 0 ? kExitFail : 0;
    }

    if (list->parsed()) {
        CStr ids;
        if (auto st = modinv_identity_ids(&ids.s))
            return report_error(st);
        std::cout << ids.str();
        return 0;
    }

    if (verify->parsed() && !params.empty()) {
        std::string joined = "p=" + std::to_string(primes.at(0));
        if (primes.size() != 1)
            return usage_error("a single case takes a single --p");
        for (const auto& p : params)
            joined += " " + p;
        CStr report;
        int passed = 0;
        if (auto st = modinv_verify_case(id.c_str(), joined.c_str(), json, &report.s, &passed))
            return report_error(st);
        std::cout << report.str() << (json ? "\n" : "");
        return passed ? 0 : kExitFail;
    }

    if (verify->parsed() || verify_all->parsed()) {
        const std::vector<std::uint32_t> chosen = primes_given ? primes : std::vector<std::uint32_t>{};
        CStr report;
        int ok = 0;
        if (auto st = modinv_verify_sweep(verify->parsed() ? id.c_str() : nullptr, chosen.data(), chosen.size(),
                                          full ? 1 : 0, json, no_timings ? 0 : 1, threads, &report.s, &ok))
            return report_error(st);
        std::cout << report.str() << (json ? "\n" : "");
        return ok ? 0 : kExitFail;
    }

    if (index->parsed()) {
        if (primes.size() != 1)
            return usage_error("index-set takes a single --p");
        CStr out;
        if (auto st = modinv_index_set(primes[0], u, v, which[0], json, &out.s))
            return report_error(st);
        std::cout << out.str();
        return 0;
    }
    return usage_error("no command");
}

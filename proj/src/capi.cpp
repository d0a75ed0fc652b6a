#include "modinv/modinv.h"

#include <cstring>
#include <random>
#include <sstream>

#include <json.hpp>

#include "modinv/expr.hpp"
#include "modinv/fp_poly.hpp"
#include "modinv/identities.hpp"
#include "modinv/padic.hpp"

using namespace modinv;

struct modinv_context {
    Context ctx;
};

struct modinv_element {
    Element value;
};

namespace {

thread_local std::string last_error;

modinv_status to_status(Errc code)
{
    switch (code) {
    case Errc::invalid_argument: return MODINV_E_INVALID_ARGUMENT;
    case Errc::context_mismatch: return MODINV_E_CONTEXT_MISMATCH;
    case Errc::index_out_of_range: return MODINV_E_INDEX_OUT_OF_RANGE;
    case Errc::syntax: return MODINV_E_SYNTAX;
    case Errc::not_divisible: return MODINV_E_NOT_DIVISIBLE;
    case Errc::overflow: return MODINV_E_OVERFLOW;
    case Errc::unknown_id: return MODINV_E_UNKNOWN_ID;
    case Errc::hypothesis: return MODINV_E_HYPOTHESIS;
    }
    return MODINV_E_INTERNAL;
}

template <typename F>
modinv_status guard(F&& body)
{
    last_error.clear();
    try {
        body();
        return MODINV_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    }
    return MODINV_E_INTERNAL;
}

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* ptr, const char* what)
{
    if (!ptr)
        throw Error(Errc::invalid_argument, std::string(what) + " must not be null");
}

Params parse_params(const char* text)
{
    Params ps;
    if (!text)
        return ps;
    std::istringstream in(text);
    std::string item;
    while (in >> item)
        ps.assign(item);
    return ps;
}

}  // namespace

extern "C" {

const char* modinv_status_name(modinv_status status)
{
    switch (status) {
    case MODINV_OK: return "ok";
    case MODINV_E_INVALID_ARGUMENT: return errc_name(Errc::invalid_argument);
    case MODINV_E_CONTEXT_MISMATCH: return errc_name(Errc::context_mismatch);
    case MODINV_E_INDEX_OUT_OF_RANGE: return errc_name(Errc::index_out_of_range);
    case MODINV_E_SYNTAX: return errc_name(Errc::syntax);
    case MODINV_E_NOT_DIVISIBLE: return errc_name(Errc::not_divisible);
    case MODINV_E_OVERFLOW: return errc_name(Errc::overflow);
    case MODINV_E_UNKNOWN_ID: return errc_name(Errc::unknown_id);
    case MODINV_E_HYPOTHESIS: return errc_name(Errc::hypothesis);
    case MODINV_E_INTERNAL: break;
    }
    return "internal";
}

const char* modinv_last_error(void) { return last_error.c_str(); }

void modinv_string_free(char* s) { std::free(s); }

modinv_status modinv_context_new(uint32_t p, int n, modinv_context** out)
{
    return guard([&] {
        need(out, "out");
        *out = new modinv_context{Context(p, n)};
    });
}

void modinv_context_free(modinv_context* ctx) { delete ctx; }

modinv_status modinv_eval(const modinv_context* ctx, const char* expr, modinv_element** out)
{
    return guard([&] {
        need(ctx, "context");
        need(expr, "expression");
        need(out, "out");
        *out = new modinv_element{expr::eval(ctx->ctx, expr)};
    });
}

modinv_status modinv_element_parse(const modinv_context* ctx, const char* text, modinv_element** out)
{
    return guard([&] {
        need(ctx, "context");
        need(text, "text");
        need(out, "out");
        *out = new modinv_element{parse_element(ctx->ctx, text)};
    });
}

modinv_status modinv_element_from_json(const char* json, modinv_element** out)
{
    return guard([&] {
        need(json, "json");
        need(out, "out");
        *out = new modinv_element{element_from_json(json)};
    });
}

void modinv_element_free(modinv_element* e) { delete e; }

modinv_status modinv_element_to_text(const modinv_element* e, char** out)
{
    return guard([&] {
        need(e, "element");
        need(out, "out");
        *out = dup(to_text(e->value));
    });
}

modinv_status modinv_element_to_json(const modinv_element* e, char** out)
{
    return guard([&] {
        need(e, "element");
        need(out, "out");
        *out = dup(to_json(e->value));
    });
}

size_t modinv_element_terms(const modinv_element* e) { return e ? e->value.size() : 0; }

int modinv_element_degree(const modinv_element* e, uint64_t* degree)
{
    if (!e)
        return 0;
    auto d = e->value.degree();
    if (!d)
        return 0;
    if (degree)
        *degree = *d;
    return 1;
}

int modinv_element_equal(const modinv_element* a, const modinv_element* b)
{
    return a && b && a->value == b->value ? 1 : 0;
}

modinv_status modinv_expr_normalize(const char* src, char** out)
{
    return guard([&] {
        need(src, "expression");
        need(out, "out");
        *out = dup(expr::print(expr::parse(src)));
    });
}

modinv_status modinv_unitriangular_check(const modinv_element* e, uint64_t seed, int trials, int* invariant)
{
    return guard([&] {
        need(e, "element");
        need(invariant, "invariant");
        const Context& ctx = e->value.context();
        const int n = ctx.n();
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> entry(0, ctx.p() - 1);
        *invariant = 1;
        for (int t = 0; t < trials; ++t) {
            // y_i -> y_i + sum_{j<i} g_ij y_j: later variables absorb earlier ones.
            std::vector<std::int64_t> g(static_cast<std::size_t>(n * n), 0);
            for (int i = 0; i < n; ++i) {
                g[i * n + i] = 1;
                for (int j = 0; j < i; ++j)
                    g[i * n + j] = entry(rng);
            }
            if (!(apply_matrix(MatrixFp(ctx, g), e->value) == e->value)) {
                *invariant = 0;
                return;
            }
        }
    });
}

modinv_status modinv_identity_ids(char** out)
{
    return guard([&] {
        need(out, "out");
        std::string ids;
        for (const auto& entry : registry())
            ids += entry.id + "\n";
        *out = dup(ids);
    });
}

modinv_status modinv_verify_case(const char* id, const char* params, int json, char** report, int* passed)
{
    return guard([&] {
        need(id, "id");
        need(report, "report");
        const IdentityCase c = check(id, parse_params(params));
        if (passed)
            *passed = c.passed() ? 1 : 0;
        *report = dup(json ? format_case_json(c) : format_case_text(c) + "\n");
    });
}

modinv_status modinv_verify_sweep(const char* id, const uint32_t* primes, size_t nprimes, int profile, int json,
                                  int timings, unsigned threads, char** report, int* all_passed)
{
    return guard([&] {
        need(report, "report");
        std::vector<std::uint32_t> ps;
        if (nprimes)
            need(primes, "primes");
        for (size_t i = 0; i < nprimes; ++i)
            ps.push_back(primes[i]);
        const Profile pr = profile ? Profile::full : Profile::quick;
        std::vector<SweepPlan> plans;
        if (id)
            plans.push_back(make_plan(id, ps, pr));
        else
            plans = make_all_plans(ps, pr);
        const Report r = sweep(plans, threads);
        if (all_passed)
            *all_passed = r.all_passed() ? 1 : 0;
        *report = dup(json ? format_json(r, timings != 0) : format_text(r, timings != 0));
    });
}

modinv_status modinv_index_set(uint32_t p, unsigned u, unsigned v, char which, int json, char** out)
{
    return guard([&] {
        need(out, "out");
        Context check_prime(p, 1);
        if (which != 'I' && which != 'J')
            throw Error(Errc::invalid_argument, "index set must be I or J");
        if (u >= v)
            throw Error(Errc::invalid_argument, "index sets need u < v");
        const auto set = which == 'I' ? padic::index_set_I(p, u, v) : padic::index_set_J(p, u, v);
        nlohmann::ordered_json j;
        j["set"] = std::string(1, which);
        j["p"] = p;
        j["u"] = u;
        j["v"] = v;
        std::ostringstream text;
        text << which << '(' << u << ',' << v << ") at p = " << p << ": " << set.size() << " elements\n";
        auto arr = nlohmann::ordered_json::array();
        for (auto a : set) {
            nlohmann::ordered_json e;
            e["a"] = a;
            std::ostringstream digits;
            const auto ds = padic::digits(a, p);
            for (std::size_t i = ds.size(); i-- > 0;)
                digits << ds[i];
            e["digits"] = ds.empty() ? "0" : digits.str();
            text << "  " << a << "  digits " << (ds.empty() ? "0" : digits.str());
            if (which == 'J') {
                const auto dec = padic::j_decompose(p, u, v, a);
                e["blocks"] = dec.blocks;
                e["parts"] = dec.parts;
                e["b"] = padic::b_func(p, u, v, a);
                e["c"] = padic::c_func(p, u, v, a);
                text << "  b " << padic::b_func(p, u, v, a) << "  c " << padic::c_func(p, u, v, a) << "  blocks [";
                for (std::size_t i = 0; i < dec.blocks.size(); ++i)
                    text << (i ? "," : "") << dec.blocks[i];
                text << ']';
            }
            text << '\n';
            arr.push_back(std::move(e));
        }
        j["elements"] = std::move(arr);
        *out = dup(json ? j.dump(2) + "\n" : text.str());
    });
}

}  // extern "C"

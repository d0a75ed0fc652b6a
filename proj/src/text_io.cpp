#include "modinv/fp_poly.hpp"

#include <json.hpp>

#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace modinv {

std::string to_text(const Element& a)
{
    if (a.is_zero())
        return "0";
    const int n = a.context().n();
    std::ostringstream out;
    bool first_term = true;
    for (const auto& t : a.terms()) {
        if (!first_term)
            out << " + ";
        first_term = false;
        bool first_factor = true;
        auto sep = [&] {
            if (!first_factor)
                out << '*';
            first_factor = false;
        };
        if (t.coeff != 1) {
            sep();
            out << t.coeff;
        }
        for (std::uint32_t m = t.mono.ext; m; m &= m - 1) {
            sep();
            out << 'x' << (std::countr_zero(m) + 1);
        }
        for (int j = 0; j < n; ++j) {
            if (!t.mono.exps[j])
                continue;
            sep();
            out << 'y' << (j + 1);
            if (t.mono.exps[j] != 1)
                out << '^' << t.mono.exps[j];
        }
        if (first_factor)
            out << t.coeff;
    }
    return out.str();
}

std::string to_json(const Element& a)
{
    const int n = a.context().n();
    nlohmann::ordered_json j;
    j["p"] = a.context().p();
    j["n"] = n;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : a.terms()) {
        nlohmann::ordered_json jt;
        jt["c"] = t.coeff;
        auto ext = nlohmann::ordered_json::array();
        for (std::uint32_t m = t.mono.ext; m; m &= m - 1)
            ext.push_back(std::countr_zero(m) + 1);
        jt["ext"] = std::move(ext);
        jt["exp"] = std::vector<std::uint64_t>(t.mono.exps.begin(), t.mono.exps.begin() + n);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

namespace {

class ElementParser {
public:
    ElementParser(Context ctx, std::string_view src) : ctx_(ctx), src_(src) {}

    Element parse()
    {
        skip_ws();
        if (pos_ == src_.size())
            fail("empty input");
        Element result(ctx_);
        result += parse_term();
        skip_ws();
        while (pos_ < src_.size()) {
            expect('+');
            result += parse_term();
            skip_ws();
        }
        return result;
    }

private:
    Element parse_term()
    {
        skip_ws();
        Element term = Element::constant(ctx_, 1);
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ >= src_.size())
                fail("expected a factor");
            char c = src_[pos_];
            if (first && std::isdigit(static_cast<unsigned char>(c))) {
                auto v = parse_uint();
                term = term.scaled(static_cast<std::int64_t>(v % ctx_.p()));
            }
            else if (c == 'x' || c == 'y') {
                auto start = pos_;
                ++pos_;
                auto idx = parse_uint();
                if (idx < 1 || idx > static_cast<std::uint64_t>(ctx_.n())) {
                    pos_ = start;
                    fail("variable index out of range");
                }
                if (c == 'x')
                    term = term * Element::x(ctx_, static_cast<int>(idx));
                else {
                    std::uint64_t e = 1;
                    skip_ws();
                    if (pos_ < src_.size() && src_[pos_] == '^') {
                        ++pos_;
                        e = parse_uint();
                    }
                    term = term * pow(Element::y(ctx_, static_cast<int>(idx)), e);
                }
            }
            else
                fail(std::string("unexpected character '") + c + "'");
            first = false;
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == '*')
                ++pos_;
            else
                return term;
        }
    }

    std::uint64_t parse_uint()
    {
        skip_ws();
        std::uint64_t v = 0;
        auto begin = src_.data() + pos_, end = src_.data() + src_.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec == std::errc::result_out_of_range)
            fail("integer too large");
        if (ec != std::errc() || ptr == begin)
            fail("expected an integer");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_ + 1, what); }

    Context ctx_;
    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(Context ctx, std::string_view text)
{
    return ElementParser(ctx, text).parse();
}

Element element_from_json(std::string_view json)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(e.byte, "malformed JSON");
    }
    try {
        Context ctx(j.at("p").get<std::uint32_t>(), j.at("n").get<int>());
        std::vector<Term> terms;
        for (const auto& jt : j.at("terms")) {
            Term t;
            t.coeff = static_cast<std::uint32_t>(jt.at("c").get<std::uint64_t>() % ctx.p());
            for (int i : jt.at("ext").get<std::vector<int>>()) {
                if (i < 1 || i > ctx.n())
                    throw Error(Errc::index_out_of_range, "exterior index out of range");
                if (t.mono.ext & (1u << (i - 1)))
                    throw Error(Errc::invalid_argument, "repeated exterior index");
                t.mono.ext |= 1u << (i - 1);
            }
            auto exps = jt.at("exp").get<std::vector<std::uint64_t>>();
            if (exps.size() != static_cast<std::size_t>(ctx.n()))
                throw Error(Errc::invalid_argument, "exponent vector must have n entries");
            std::copy(exps.begin(), exps.end(), t.mono.exps.begin());
            terms.push_back(t);
        }
        return Element::from_terms(ctx, std::move(terms));
    }
    catch (const nlohmann::json::exception& e) {
        throw Error(Errc::syntax, std::string("bad element JSON: ") + e.what());
    }
}

}  // namespace modinv

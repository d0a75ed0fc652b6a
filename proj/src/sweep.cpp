#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "modinv/identities.hpp"

namespace modinv {

std::size_t Report::total() const
{
    std::size_t t = 0;
    for (const auto& r : ids)
        t += r.total;
    return t;
}

std::size_t Report::passed() const
{
    std::size_t t = 0;
    for (const auto& r : ids)
        t += r.passed;
    return t;
}

namespace {

struct Slot {
    std::size_t plan, index;
};

struct Outcome {
    bool passed = false;
    std::string branch;
    double seconds = 0;
    std::optional<IdentityCase> failure;
};

Outcome run_one(const std::string& id, const Params& params)
{
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        IdentityCase c = check(id, params);
        out.passed = c.passed();
        out.branch = c.branch;
        if (!out.passed) {
            c.lhs.reset();  // keep the report small; the diff is what matters
            c.rhs.reset();
            out.failure = std::move(c);
        }
    } catch (const Error& e) {
        IdentityCase c;
        c.id = id;
        c.params = params;
        c.detail = std::string(errc_name(e.code())) + ": " + e.what();
        out.failure = std::move(c);
    } catch (const std::exception& e) {
        IdentityCase c;
        c.id = id;
        c.params = params;
        c.detail = e.what();
        out.failure = std::move(c);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

Report sweep(const std::vector<SweepPlan>& plans, unsigned threads)
{
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < plans.size(); ++i)
        for (std::size_t j = 0; j < plans[i].cases.size(); ++j)
            slots.push_back({i, j});

    std::vector<Outcome> results(slots.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < slots.size();) {
            const auto& plan = plans[slots[k].plan];
            results[k] = run_one(plan.id, plan.cases[slots[k].index]);
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, slots.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    // Assembly in plan order keeps the report independent of scheduling.
    Report report;
    for (const auto& plan : plans)
        report.ids.push_back(IdReport{plan.id, plan.cases.size(), 0, 0, {}, {}});
    for (std::size_t k = 0; k < slots.size(); ++k) {
        auto& r = report.ids[slots[k].plan];
        auto& o = results[k];
        r.seconds += o.seconds;
        if (o.passed) {
            ++r.passed;
            if (!o.branch.empty())
                ++r.branches[o.branch];
        } else if (!r.first_failure) {
            r.first_failure = std::move(o.failure);
        }
    }
    return report;
}

std::string format_case_text(const IdentityCase& c)
{
    std::ostringstream out;
    out << c.id << ' ' << c.params.to_string() << ": " << (c.passed() ? "pass" : "FAIL");
    if (!c.branch.empty())
        out << " (" << c.branch << ')';
    if (c.lhs)
        out << "\n  lhs: " << to_text(*c.lhs);
    if (c.rhs)
        out << "\n  rhs: " << to_text(*c.rhs);
    if (!c.passed() && c.diff)
        out << "\n  diff: " << to_text(*c.diff);
    if (!c.detail.empty())
        out << "\n  detail: " << c.detail;
    return out.str();
}

namespace {

nlohmann::ordered_json params_json(const Params& ps)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ps.values()) {
        if (v.size() == 1 && k != "e")
            j[k] = v[0];
        else
            j[k] = v;
    }
    return j;
}

nlohmann::ordered_json case_json(const IdentityCase& c)
{
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["params"] = params_json(c.params);
    j["status"] = c.passed() ? "pass" : "fail";
    if (!c.branch.empty())
        j["branch"] = c.branch;
    if (c.lhs)
        j["lhs"] = to_text(*c.lhs);
    if (c.rhs)
        j["rhs"] = to_text(*c.rhs);
    if (!c.passed() && c.diff)
        j["diff"] = to_text(*c.diff);
    if (!c.detail.empty())
        j["detail"] = c.detail;
    return j;
}

}  // namespace

std::string format_case_json(const IdentityCase& c) { return case_json(c).dump(); }

std::string format_text(const Report& report, bool timings)
{
    std::ostringstream out;
    for (const auto& r : report.ids) {
        out << std::left << std::setw(14) << r.id << ' ' << (r.passed == r.total ? "pass" : "FAIL") << ' '
            << r.passed << '/' << r.total;
        if (timings)
            out << std::fixed << std::setprecision(2) << "  " << r.seconds << 's';
        if (!r.branches.empty()) {
            out << "  [";
            bool first = true;
            for (const auto& [b, count] : r.branches) {
                out << (first ? "" : ", ") << b << ": " << count;
                first = false;
            }
            out << ']';
        }
        out << '\n';
        if (r.first_failure)
            out << "  first counterexample: " << format_case_text(*r.first_failure) << '\n';
    }
    out << "total " << report.passed() << '/' << report.total() << ' '
        << (report.all_passed() ? "pass" : "FAIL") << '\n';
    return out.str();
}

std::string format_json(const Report& report, bool timings)
{
    nlohmann::ordered_json j;
    j["total"] = report.total();
    j["passed"] = report.passed();
    j["ok"] = report.all_passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : report.ids) {
        nlohmann::ordered_json e;
        e["id"] = r.id;
        e["total"] = r.total;
        e["passed"] = r.passed;
        if (timings)
            e["seconds"] = r.seconds;
        e["branches"] = r.branches;
        if (r.first_failure)
            e["first_failure"] = case_json(*r.first_failure);
        arr.push_back(std::move(e));
    }
    j["ids"] = std::move(arr);
    return j.dump(2);
}

}  // namespace modinv

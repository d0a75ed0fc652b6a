// Acceptance suite: one PASS/FAIL line per criterion, with wall time against
// its limit. Exits non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "modinv/identities.hpp"

#ifndef MODINV_CLI_PATH
#error "MODINV_CLI_PATH must name the command line binary"
#endif

using namespace modinv;

namespace {

struct Outcome {
    bool ok = true;
    std::string summary;
    std::vector<std::string> notes;
};

struct Criterion {
    int number;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

// Sweeps the ids with their default (full) primes and requires every case to
// pass and, per id, the listed branch labels to be exercised.
Outcome sweep_ids(const std::vector<std::string>& ids, const std::map<std::string, std::set<std::string>>& branches = {})
{
    std::vector<SweepPlan> plans;
    for (const auto& id : ids)
        plans.push_back(make_plan(id, {}, Profile::full));
    const Report r = sweep(plans);
    Outcome out;
    std::ostringstream sum;
    sum << r.passed() << '/' << r.total() << " cases";
    out.ok = r.all_passed() && r.total() > 0;
    for (const auto& idr : r.ids) {
        std::ostringstream line;
        line << idr.id << ' ' << idr.passed << '/' << idr.total << std::fixed << std::setprecision(1) << "  "
             << idr.seconds << 's';
        if (!idr.branches.empty()) {
            line << "  [";
            bool first = true;
            for (const auto& [b, n] : idr.branches) {
                line << (first ? "" : ", ") << b << ": " << n;
                first = false;
            }
            line << ']';
        }
        if (idr.total == 0) {
            out.ok = false;
            line << "  empty plan";
        }
        if (idr.first_failure)
            line << "  first failure " << idr.first_failure->params.to_string() << ' ' << idr.first_failure->detail;
        if (auto it = branches.find(idr.id); it != branches.end())
            for (const auto& want : it->second)
                if (!idr.branches.count(want)) {
                    out.ok = false;
                    line << "  missing branch " << want;
                }
        out.notes.push_back(line.str());
    }
    out.summary = sum.str();
    return out;
}

Outcome properties(const std::vector<checks::PropertyResult>& results)
{
    Outcome out;
    std::size_t checks = 0, failures = 0;
    for (const auto& r : results) {
        checks += r.checks;
        failures += r.failures;
        out.ok = out.ok && r.ok();
        std::ostringstream line;
        line << r.name << ": " << r.checks - r.failures << '/' << r.checks;
        if (!r.ok())
            line << "  first failure " << r.first_failure;
        out.notes.push_back(line.str());
    }
    out.summary = std::to_string(checks - failures) + "/" + std::to_string(checks) + " checks";
    return out;
}

Outcome merge(Outcome a, const Outcome& b)
{
    a.ok = a.ok && b.ok;
    a.summary += ", " + b.summary;
    a.notes.insert(a.notes.end(), b.notes.begin(), b.notes.end());
    return a;
}

Outcome run_cli()
{
    Outcome out;
    const std::string cmd = std::string("\"") + MODINV_CLI_PATH + "\" verify-all --profile quick --p 3 --no-timings";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        out.ok = false;
        out.summary = "could not start the CLI";
        return out;
    }
    std::string text;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
        text.append(buf, got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    out.ok = code == 0;
    out.summary = "verify-all exit " + std::to_string(code);
    const auto last = text.rfind("total");
    if (last != std::string::npos)
        out.notes.push_back(text.substr(last, text.find('\n', last) - last));
    return out;
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "bracket lemmas under St_u and St^Delta_i", 60, [] { return sweep_ids({"lem2.2", "lem2.3"}); }},
        {2, "ct5 and ct6 relations", 120, [] { return sweep_ids({"thm2.4-ct5", "thm2.4-ct6"}); }},
        {3, "St^Delta_i on Dickson invariants", 60,
         [] { return sweep_ids({"thm3.1", "cor3.2"}, {{"cor3.2", {"i=s>0", "i=n", "otherwise"}}}); }},
        {4, "P^r on brackets, positive and negative cases", 120,
         [] { return sweep_ids({"prop3.3"}, {{"prop3.3", {"r=sum eps p^e", "otherwise"}}}); }},
        {5, "compositions with P^{p^i}", 300, [] { return sweep_ids({"thm3.4", "thm3.9"}); }},
        {6, "operations on Mui invariants", 120,
         [] {
             return sweep_ids({"thm3.5", "cor3.6", "thm3.7", "thm3.8"},
                              {{"cor3.6", {"i<n-1", "i=n-1", "i=n"}},
                               {"thm3.7", {"i=s_t", "i>=n,s1=0", "i>=n,s1>0", "otherwise"}},
                               {"thm3.8", {"u=s_t", "u>=n", "otherwise"}}});
         }},
        {7, "six expansions of St^Delta_i on invariants", 120,
         [] {
             return sweep_ids({"rem3.10"}, {{"rem3.10", {"form1", "form2", "form3", "form4", "form5", "form6"}}});
         }},
        {8, "two-variable closed forms and index sets", 300,
         [] {
             Outcome o = sweep_ids({"prop4.1-ct7", "prop4.1-ct8", "ct9", "prop4.2", "prop4.3", "lem4.4", "lem4.5",
                                    "mui-expansion"});
             o = merge(o, properties(checks::run_padic_suites(3, 11)));
             return merge(o, properties(checks::run_padic_suites(5, 11)));
         }},
        {9, "property suites", 120, [] { return properties(checks::run_property_suites(20261018)); }},
        {10, "CLI verify-all and grammar round trip", 600,
         [] { return merge(run_cli(), properties({checks::roundtrip_fuzz(1000, 77)})); }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.summary = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = o.ok && in_time;
        all = all && pass;
        std::cout << "criterion " << std::setw(2) << c.number << ' ' << (pass ? "PASS" : "FAIL") << "  " << c.title
                  << "  " << o.summary << "  " << std::fixed << std::setprecision(1) << secs << "s / "
                  << c.limit_seconds << "s" << (in_time ? "" : "  TIME LIMIT EXCEEDED") << '\n';
        for (const auto& note : o.notes)
            std::cout << "    " << note << '\n';
        std::cout.flush();
    }
    return all ? 0 : 1;
}

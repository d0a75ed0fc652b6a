#pragma once

// Registry of the verified identities. Each entry knows its hypotheses, how to
// build both sides for one parameter tuple, and which tuples to sweep.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modinv/fp_poly.hpp"

namespace modinv {

// Named integer parameters. Scalars are one-element lists; list-valued
// parameters (e, s) may be empty.
class Params {
public:
    Params() = default;
    Params(std::initializer_list<std::pair<const std::string, std::vector<std::int64_t>>> init) : values_(init) {}

    Params& set(const std::string& name, std::int64_t v);
    Params& set_list(const std::string& name, std::vector<std::int64_t> v);

    bool has(const std::string& name) const { return values_.count(name) != 0; }
    // Throws Errc::hypothesis when missing or not a scalar.
    std::int64_t get(const std::string& name) const;
    const std::vector<std::int64_t>& list(const std::string& name) const;
    std::vector<unsigned> ulist(const std::string& name) const;

    const std::map<std::string, std::vector<std::int64_t>>& values() const { return values_; }
    // "p=3 n=2 e=[0,1]"; lists always bracketed.
    std::string to_string() const;
    // Parses "name=value" with value an integer or a comma separated list.
    void assign(const std::string& assignment);

    friend bool operator==(const Params&, const Params&) = default;

private:
    std::map<std::string, std::vector<std::int64_t>> values_;
};

enum class CaseStatus { pass, fail };

struct IdentityCase {
    std::string id;
    Params params;
    CaseStatus status = CaseStatus::fail;
    std::string branch;  // which case of a multi-case statement was exercised
    std::optional<Element> lhs, rhs, diff;
    std::string detail;  // evaluation error or non-polynomial mismatch

    bool passed() const { return status == CaseStatus::pass; }
};

enum class Profile { quick, full };

struct IdentityEntry {
    std::string id;
    std::string summary;
    // Builds sides (or decides directly) for one tuple; throws Errc::hypothesis
    // when the tuple violates the statement's assumptions.
    std::function<void(const Params&, IdentityCase&)> evaluate;
    std::function<std::vector<Params>(std::uint32_t p, Profile)> plan;
    std::vector<std::uint32_t> full_primes;  // primes swept by the full profile
};

const std::vector<IdentityEntry>& registry();
const IdentityEntry& find_identity(const std::string& id);  // throws Errc::unknown_id

// Evaluates one tuple. Hypothesis violations and unknown ids throw; any
// other evaluation error is recorded as a failing case.
IdentityCase check(const std::string& id, const Params& params);

struct SweepPlan {
    std::string id;
    std::vector<Params> cases;
};

SweepPlan make_plan(const std::string& id, const std::vector<std::uint32_t>& primes, Profile profile);
// Plans for every registry id. An empty prime list means each id's own full_primes.
std::vector<SweepPlan> make_all_plans(const std::vector<std::uint32_t>& primes, Profile profile);

struct IdReport {
    std::string id;
    std::size_t total = 0, passed = 0;
    double seconds = 0;
    std::map<std::string, std::size_t> branches;
    std::optional<IdentityCase> first_failure;  // smallest failing index in plan order
};

struct Report {
    std::vector<IdReport> ids;
    std::size_t total() const;
    std::size_t passed() const;
    bool all_passed() const { return total() == passed(); }
};

// Runs all cases, fanning out over `threads` workers (0 = hardware concurrency).
Report sweep(const std::vector<SweepPlan>& plans, unsigned threads = 0);

std::string format_text(const Report& report, bool timings = true);
std::string format_json(const Report& report, bool timings = true);
std::string format_case_text(const IdentityCase& c);
std::string format_case_json(const IdentityCase& c);

}  // namespace modinv

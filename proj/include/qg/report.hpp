#pragma once

// Structured check results. Every verifier returns one of these; the CLI
// renders them as line-delimited records or CSV rows.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qg {

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not applicable";
    }
    return "?";
}

struct CheckReport {
    std::string name;
    // Ordered key/value parameters (model, p, x, grid, case index, ...).
    std::vector<std::pair<std::string, std::string>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    Verdict verdict = Verdict::Pass;
    std::string witness;
    std::uint64_t seed = 0;
    bool has_seed = false;

    bool passed() const { return verdict == Verdict::Pass; }

    CheckReport& with(std::string key, std::string value) {
        params.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    CheckReport& with_seed(std::uint64_t s) {
        seed = s;
        has_seed = true;
        return *this;
    }
};

}  // namespace qg

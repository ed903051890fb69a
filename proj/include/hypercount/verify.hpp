#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypercount/charsum.hpp"
#include "hypercount/curves.hpp"
#include "hypercount/field.hpp"
#include "hypercount/padic.hpp"

namespace hypercount {

inline constexpr const char* kVersion = "0.1.0";

struct FieldSpec {
    int p = 0;
    int r = 1;
};

// Parses "9" into p=3, r=2; rejects even or non-prime-power sizes.
FieldSpec field_spec_from_q(long long q);

struct RunConfig {
    std::vector<FieldSpec> fields;
    std::vector<std::string> families; // empty means all
    int samples = 50;
    uint64_t seed = 0;
    std::optional<int> precision;   // absolute M override
    int precision_delta = 0;        // relative +k on the default rule
    std::optional<double> tolerance; // tolerance coefficient override
    int jobs = 1;
    int size_cap = FieldCtx::kDefaultSizeCap;
};

struct CheckRecord {
    std::string family;
    int index = 0;
    std::string params;
    long long brute = 0;
    long long formula = 0;
    std::vector<std::pair<std::string, long long>> terms;
    std::string g_path;
    bool pass = false;
    bool skipped = false;
    std::string skip_reason;
    std::string note;
};

struct FieldReport {
    int p = 0;
    int r = 1;
    long long q = 0;
    std::string modulus;
    std::vector<CheckRecord> checks;
    std::string error; // field-level failure (construction etc.)
};

struct RunSummary {
    long long pass = 0;
    long long fail = 0;
    long long skipped = 0;
};

struct Report {
    RunConfig config;
    std::vector<FieldReport> fields;
    RunSummary summary;
    long long elapsed_ms = 0;

    std::string to_json(bool include_timing = true) const;
    std::string to_csv() const;
    std::string to_text() const;
};

const std::vector<std::string>& all_family_names();

Report run_verify(const RunConfig& config);

} // namespace hypercount

#pragma once

// Verification suites: each suite expands into a list of cases, runs them on
// a worker pool and assembles a report in case order. In mod-p mode every
// case is checked at k independent evaluation points and passes only if all
// of them agree; a point that hits a vanishing denominator is replaced.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kls/root_system.hpp"

namespace kls::verify {

constexpr int kFormatVersion = 1;

enum class Mode { exact, modp };
std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct RunConfig {
    std::string type = "A";
    int rank = 2;
    int n = 0, d = 0;  // Grassmannian suites
    Mode mode = Mode::exact;
    int points = 1;
    uint64_t seed = 1;
    std::optional<std::filesystem::path> cache_dir;
    size_t hecke_guard = 720;
    size_t comb_guard = 5040;
    unsigned threads = 0;           // 0 = hardware concurrency
    std::optional<Subset> subset;   // parabolic suites; default Pi minus a middle node
    int samples = 20;               // random cases (serre)
    int recheck = 0;                // mod-p cases re-run exactly, chosen from the seed
    CartanData cartan() const;
    void validate() const;
};

// A suite that cannot run under the configured guards.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CaseResult {
    std::string id;
    bool pass = true;
    std::string lhs, rhs;  // serialized sides on failure
    std::string note;
};

struct Report {
    std::string suite;
    std::string group;
    Mode mode = Mode::exact;
    int points = 1;
    uint64_t seed = 1;
    std::vector<CaseResult> cases;
    double seconds = 0;

    size_t passed() const;
    bool ok() const { return passed() == cases.size(); }
    nlohmann::json json(bool timing = false) const;
    std::string text(bool timing = false) const;
};

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);
Report run_suite(const std::string& suite, const RunConfig& cfg);

// Default parabolic subset: Pi without the node ceil(rank/2).
Subset default_subset(int rank);

}  // namespace kls::verify

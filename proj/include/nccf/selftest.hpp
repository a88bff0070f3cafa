#ifndef NCCF_SELFTEST_HPP
#define NCCF_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nccf {

struct PropertyResult {
    std::string name;
    bool ok = false;
    std::string detail;     // worst margin / counterexample description
    double seconds = 0.0;   // wall time; diagnostic only, never serialized
};

enum class SelftestLevel { Quick, Full };

struct SelftestOptions {
    std::uint64_t seed = 0;
    SelftestLevel level = SelftestLevel::Quick;
    int grid = 512;  // contour grid for the Cauchy / decay properties
    // Test-harness hook: name of a deliberate corruption to inject, used to
    // demonstrate that the suite detects a broken build. Empty = none.
    std::string inject_fault;
};

// Runs the invariant suites of every module; order and content are
// deterministic per seed.
std::vector<PropertyResult> run_selftest(const SelftestOptions& opt);

}  // namespace nccf

#endif

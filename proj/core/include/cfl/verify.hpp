#ifndef CFL_VERIFY_HPP
#define CFL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cfl {

/// Pass count for one identity in a self-test suite.
struct IdentityTally {
    std::string name;
    long checked = 0;
    long passed = 0;
    std::vector<std::string> failures;  // first few, for the report

    [[nodiscard]] bool ok() const { return checked == passed; }
};

struct VerifyOptions {
    int max_order = 6;
    int trials = 20;
    std::uint64_t seed = 1;
};

/// Suites: antiderivative, shuffle, moments, pipelines, group, character,
/// or all. Throws std::invalid_argument on an unknown suite name.
std::vector<IdentityTally> run_verify_suite(const std::string& suite, const VerifyOptions& options);

std::vector<std::string> verify_suite_names();

}  // namespace cfl

#endif

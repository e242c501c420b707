#pragma once

#include "gaborwf/config.hpp"
#include "gaborwf/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaborwf
{
    /// One verification outcome. `value` is compared against `threshold` in the sense
    /// stated by `detail`; expected failures are reported but never fail a suite.
    struct Check
    {
        std::string name;
        bool passed = false;
        bool expected_fail = false;
        double value = std::numeric_limits<double>::quiet_NaN();
        double threshold = std::numeric_limits<double>::quiet_NaN();
        std::string detail;
        Json data = Json::object();
    };

    struct SuiteReport
    {
        std::string suite;
        std::vector<Check> checks;

        bool passed() const;
        Json to_json() const;
    };

    struct VerifyOptions
    {
        /// frames suite: evaluate the bounds at this lattice density instead of the default.
        std::optional<double> alpha_beta_product;
    };

    const std::vector<std::string>& suite_names();

    /// Runs one of: oracles, inversion, frames, microlocal, invariance.
    SuiteReport run_suite(const std::string& name, const Config& cfg, const VerifyOptions& opts = {});
}  // namespace gaborwf

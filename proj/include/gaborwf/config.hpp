#pragma once

#include "gaborwf/wavefront.hpp"

#include <optional>
#include <string>

namespace gaborwf
{
    /// Run-wide defaults. Every field can be overridden from a key = value file.
    struct Config
    {
        long n = 1024;
        double length = 64.0;
        int k_sectors = 72;
        double n_thr = 4.0;
        double alpha_beta = pi<double> / 2;
        double cg_tol = 1e-12;
        std::optional<double> r_min;  // unset: derived from the grid
        std::optional<double> r_max;
        int n_shells = 24;
        int margin = 1;
        long kernel_subsample = 32;
        long kernel_cap = 1L << 22;

        Grid<double> grid() const { return make_grid<double>(n, length); }
        SectorPartition partition() const { return SectorPartition(k_sectors); }
        RadialConfig radial() const;
    };

    /// Reads `key = value` lines; '#' starts a comment, blank lines are skipped, and the
    /// value `auto` leaves an optional field unset. Unknown keys are errors.
    Config load_config(const std::string& path);
    Config parse_config(const std::string& text, const std::string& origin = "<string>");
}  // namespace gaborwf

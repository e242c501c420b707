#pragma once

#include "gaborwf/symbol.hpp"

namespace gaborwf
{
    /// A named symbol with its declared order m.
    struct SymbolSpec
    {
        std::string name;
        SymbolFunction function;
        double order = 0;
    };

    /// Smooth angular cutoff parameters: transition radius r0 with width s, and
    /// angular edge width w (radians).
    struct ConeShape
    {
        double r0 = 6.0;
        double s = 1.0;
        double w = 8.0 * pi<double> / 180.0;
    };

    SymbolSpec symbol_one();
    SymbolSpec symbol_x();
    SymbolSpec symbol_xi();
    SymbolSpec symbol_sincos();
    SymbolSpec symbol_elliptic();

    /// ½erfc((|x| - 0.9·L/2)) · ½erfc((|ξ| - 0.9·Ξ)): brings a symbol smoothly to zero
    /// before the edges of the periodic phase domain.
    double domain_taper(double x, double xi, double length, double freq_max);

    /// Angular profile ψ(r)·Φ(θ) of the cone θ1 < θ < θ2 (degrees, counterclockwise),
    /// periodized in θ, without the domain taper.
    double cone_profile(double x, double xi, double theta1_deg, double theta2_deg, const ConeShape& shape = {});

    /// Tapered cone cutoff, order 0.
    SymbolSpec cone_cutoff(double theta1_deg, double theta2_deg, double length, double freq_max,
                           const ConeShape& shape = {});

    /// Tapered symbol vanishing on the cone θ1 < θ < θ2 beyond r0 and equal to 1 elsewhere.
    SymbolSpec cone_vanishing(double theta1_deg, double theta2_deg, double length, double freq_max,
                              const ConeShape& shape = {});

    /// Sum of two symbols (orders combine by max).
    SymbolSpec symbol_sum(const SymbolSpec& a, const SymbolSpec& b);

    /// Parses one, x, xi, sincos, elliptic, cone:θ1,θ2 or a '+'-separated sum of these.
    SymbolSpec parse_symbol(const std::string& text, double length, double freq_max);

    /// Order-0 symbols used for the microlocality checks.
    std::vector<SymbolSpec> microlocal_suite(double length, double freq_max);

    /// All shipped symbols: the order-0 suite plus x, ξ and x² + ξ².
    std::vector<SymbolSpec> full_suite(double length, double freq_max);
}  // namespace gaborwf

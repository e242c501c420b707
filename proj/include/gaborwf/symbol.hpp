#pragma once

#include "gaborwf/wavefront.hpp"

#include <functional>

namespace gaborwf
{
    /// a(x, ξ) as a callable on the continuous phase plane.
    using SymbolFunction = std::function<std::complex<double>(double x, double xi)>;

    /// Samples a(x_s, ξ_k) with x_s = -L/2 + sΔx/refine (refine = 1: phase grid, 2: the
    /// midpoint grid the Weyl kernel needs) and ξ_k the frequency grid.
    template <typename Real> struct SampledSymbol
    {
        Grid<Real> grid;
        int refine = 1;
        CMatrix<Real> values;
        double order = 0;
        double bound = 0;  // C in |a(z)| ≤ C⟨z⟩^m, measured on the samples
        std::string label;

        Real x(Eigen::Index s) const noexcept { return -grid.length() / 2 + Real(s) * grid.dx() / Real(refine); }
        Real xi(Eigen::Index k) const noexcept { return grid.xi(k); }
        Real sup_abs() const { return values.cwiseAbs().maxCoeff(); }
    };

    template <typename Real>
    SampledSymbol<Real> sample_symbol(const SymbolFunction& a, const Grid<Real>& grid, double order,
                                      std::string label, int refine = 1)
    {
        if (refine != 1 && refine != 2)
            throw InvalidArgument("symbol refinement must be 1 or 2");
        SampledSymbol<Real> sym{grid, refine, CMatrix<Real>(grid.n() * refine, grid.n()), order, 0, std::move(label)};
        for (Eigen::Index s = 0; s < sym.values.rows(); ++s)
            for (Eigen::Index k = 0; k < sym.values.cols(); ++k)
            {
                const std::complex<double> v = a(double(sym.x(s)), double(sym.xi(k)));
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw InvalidArgument("symbol '" + sym.label + "' has non-finite samples");
                sym.values(s, k) = Complex<Real>(Real(v.real()), Real(v.imag()));
                const double ratio =
                    std::abs(v) / std::pow(double(japanese_bracket(sym.x(s), sym.xi(k))), order);
                sym.bound = std::max(sym.bound, ratio);
            }
        return sym;
    }

    namespace detail
    {
        template <typename Real, typename Body> void for_each_symbol_sample(const SampledSymbol<Real>& a, Body&& body)
        {
            for (Eigen::Index s = 0; s < a.values.rows(); ++s)
                for (Eigen::Index k = 0; k < a.values.cols(); ++k)
                    body(double(a.x(s)), double(a.xi(k)), double(std::abs(a.values(s, k))));
        }
    }  // namespace detail

    /// Sectors along which the support of a reaches the outermost three shells.
    template <typename Real>
    SectorSet conesupp_estimate(const SampledSymbol<Real>& a, const SectorPartition& part, const RadialConfig& rad)
    {
        const double floor = floor_ratio * double(a.sup_abs());
        const double r_outer = rad.edge(rad.n_shells - 3);
        SectorSet out(part.k());
        detail::for_each_symbol_sample(a, [&](double x, double xi, double mag) {
            const double r = std::hypot(x, xi);
            if (r >= r_outer && r < rad.r_max && mag > floor)
                out.insert(part.sector_of(x, xi));
        });
        return out;
    }

    /// Characteristic sectors: those where min |a(z)|⟨z⟩^{-m} over r_min ≤ |z| < r_max falls below eps.
    template <typename Real>
    SectorSet char_estimate(const SampledSymbol<Real>& a, const SectorPartition& part, const RadialConfig& rad,
                            double eps)
    {
        std::vector<double> minimum(static_cast<std::size_t>(part.k()), std::numeric_limits<double>::infinity());
        detail::for_each_symbol_sample(a, [&](double x, double xi, double mag) {
            const double r = std::hypot(x, xi);
            if (r < rad.r_min || r >= rad.r_max)
                return;
            const double v = mag * std::pow(std::sqrt(1 + r * r), -a.order);
            double& cell = minimum[static_cast<std::size_t>(part.sector_of(x, xi))];
            cell = std::min(cell, v);
        });
        SectorSet out(part.k());
        for (int i = 0; i < part.k(); ++i)
            if (!(minimum[static_cast<std::size_t>(i)] >= eps))
                out.insert(i);
        return out;
    }
}  // namespace gaborwf

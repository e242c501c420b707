#pragma once

#include "gaborwf/synthesis.hpp"

#include <Eigen/Core>

namespace gaborwf
{
    /// One of the three generators of the metaplectic representation, with the
    /// symplectic map χ it implements: WF(U_χ u) = χ WF(u).
    struct MetaplecticElement
    {
        enum class Kind
        {
            fourier,
            chirp_mul,
            dilation
        };

        Kind kind = Kind::fourier;
        double parameter = 0;

        static MetaplecticElement fourier() { return {Kind::fourier, 0}; }
        static MetaplecticElement chirp_mul(double c) { return {Kind::chirp_mul, c}; }
        static MetaplecticElement dilation(double s)
        {
            if (!(s > 0) || !std::isfinite(s))
                throw InvalidArgument("dilation factor must be positive");
            return {Kind::dilation, s};
        }

        /// χ acting on column vectors (x, ξ).
        Eigen::Matrix2d matrix() const
        {
            Eigen::Matrix2d m;
            switch (kind)
            {
            case Kind::fourier:
                m << 0, 1, -1, 0;
                break;
            case Kind::chirp_mul:
                m << 1, 0, parameter, 1;
                break;
            case Kind::dilation:
                m << 1 / parameter, 0, 0, parameter;
                break;
            }
            return m;
        }
    };

    template <typename Real>
    SampledSignal<Real> metaplectic_apply(const SampledSignal<Real>& u, const MetaplecticElement& elem)
    {
        const auto& grid = u.grid();
        const Eigen::Index n = grid.n();
        CVector<Real> out(n);
        switch (elem.kind)
        {
        case MetaplecticElement::Kind::fourier:
        {
            // (2π)^{-1/2} û evaluated on the x grid; direct sums, since Δx and Δξ differ in general.
            const Real scale = grid.dx() / std::sqrt(two_pi<Real>);
            parallel_for(n, [&](long begin, long end) {
                for (long p = begin; p < end; ++p)
                {
                    const Real y = grid.x(p);
                    Complex<Real> acc(0);
                    for (Eigen::Index j = 0; j < n; ++j)
                    {
                        const Real arg = -grid.x(j) * y;
                        acc += u[j] * Complex<Real>(std::cos(arg), std::sin(arg));
                    }
                    out[p] = scale * acc;
                }
            });
            return SampledSignal<Real>(grid, std::move(out), "fourier(" + u.label() + ")");
        }
        case MetaplecticElement::Kind::chirp_mul:
        {
            const Real c = Real(elem.parameter);
            for (Eigen::Index j = 0; j < n; ++j)
            {
                const Real x = grid.x(j);
                const Real arg = c * x * x / 2;
                out[j] = u[j] * Complex<Real>(std::cos(arg), std::sin(arg));
            }
            return SampledSignal<Real>(grid, std::move(out), "chirp_mul(" + u.label() + ")");
        }
        case MetaplecticElement::Kind::dilation:
        {
            const Real s = Real(elem.parameter);
            const SampledSignal<Real> spec = dft(u);
            const Real cutoff = grid.freq_max() / s;
            Real total = 0, above = 0;
            for (Eigen::Index k = 0; k < n; ++k)
            {
                const Real e = std::norm(spec[k]);
                total += e;
                if (std::abs(grid.xi(k)) > cutoff)
                    above += e;
            }
            if (total > 0 && above > Real(1e-8) * total)
                throw InvalidArgument("dilation would alias: spectral energy above Xi/s exceeds 1e-8 of total");
            const RVector<Real> positions = s * grid.x_axis().array();
            out = std::sqrt(s) * band_limited_eval(u, positions);
            return SampledSignal<Real>(grid, std::move(out), "dilation(" + u.label() + ")");
        }
        }
        throw InvalidArgument("unknown metaplectic element");
    }
}  // namespace gaborwf

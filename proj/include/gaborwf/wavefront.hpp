#pragma once

#include "gaborwf/gabor.hpp"
#include "gaborwf/sectors.hpp"
#include "gaborwf/stft.hpp"

#include <limits>
#include <optional>

namespace gaborwf
{
    /// Geometric shells r_min·(r_max/r_min)^{h/n_shells}, h = 0..n_shells.
    struct RadialConfig
    {
        double r_min = 10.24;
        double r_max = 25.6;
        int n_shells = 24;

        /// r_max = 0.8·min(L/2, Ξ), r_min = max(2, 0.4·r_max).
        template <typename Real> static RadialConfig defaults_for(const Grid<Real>& grid)
        {
            RadialConfig rc;
            rc.r_max = 0.8 * std::min<double>(grid.length() / 2, grid.freq_max());
            rc.r_min = std::max(2.0, 0.4 * rc.r_max);
            rc.n_shells = 24;
            return rc;
        }

        template <typename Real> void validate(const Grid<Real>& grid) const
        {
            const double cap = 0.8 * std::min<double>(grid.length() / 2, grid.freq_max());
            if (!(r_min >= 2))
                throw InvalidArgument("radial r_min must be >= 2");
            if (!(r_max > r_min))
                throw InvalidArgument("radial r_max must exceed r_min");
            if (r_max > cap * (1 + 1e-12))
                throw InvalidArgument("radial r_max exceeds 0.8*min(L/2, Xi)");
            if (n_shells < 8)
                throw InvalidArgument("radial n_shells must be >= 8");
        }

        double edge(int h) const { return r_min * std::pow(r_max / r_min, double(h) / n_shells); }
        /// Geometric center of shell h, used as its representative radius.
        double center(int h) const { return std::sqrt(edge(h) * edge(h + 1)); }

        /// Shell index of radius r, or -1 outside [r_min, r_max).
        int shell_of(double r) const
        {
            if (!(r >= r_min) || !(r < r_max))
                return -1;
            int h = static_cast<int>(std::floor(n_shells * std::log(r / r_min) / std::log(r_max / r_min)));
            h = std::clamp(h, 0, n_shells - 1);
            // Correct for rounding in the logarithm at shell edges.
            while (h > 0 && r < edge(h))
                --h;
            while (h + 1 < n_shells && r >= edge(h + 1))
                ++h;
            return h;
        }
    };

    inline constexpr int min_populated_shells = 6;

    struct SectorDecay
    {
        int index = 0;
        std::vector<double> shell_max;  // NaN where the shell has no sample
        double sigma = std::numeric_limits<double>::quiet_NaN();
        double residual = 0;
        bool floor_hit = false;
        bool indeterminate = false;
        int n_points = 0;
    };

    struct DecayProfile
    {
        SectorPartition partition;
        RadialConfig radial;
        double reference = 0;  // magnitude the floor is relative to
        double floor = 0;
        std::vector<SectorDecay> sectors;
    };

    inline constexpr double floor_ratio = 1e-13;

    /// Decay profile of a magnitude field given by `visit(emit)`, where emit(x, ξ, |F|)
    /// is called once per sample. The floor is floor_ratio times the global maximum of
    /// |F| unless floor_reference is given.
    template <typename Visit>
    DecayProfile decay_profile_of(Visit&& visit, const SectorPartition& part, const RadialConfig& rad,
                                  std::optional<double> floor_reference = std::nullopt)
    {
        const int K = part.k();
        const int ns = rad.n_shells;
        std::vector<double> M(static_cast<std::size_t>(K * ns), -1.0);
        std::vector<int> counts(static_cast<std::size_t>(K), 0);
        double global_max = 0;
        visit([&](double x, double xi, double mag) {
            global_max = std::max(global_max, mag);
            const int h = rad.shell_of(std::hypot(x, xi));
            if (h < 0)
                return;
            const int s = part.sector_of(x, xi);
            double& cell = M[static_cast<std::size_t>(s * ns + h)];
            cell = std::max(cell, mag);
            ++counts[static_cast<std::size_t>(s)];
        });

        DecayProfile prof{part, rad, floor_reference.value_or(global_max), 0, {}};
        prof.floor = floor_ratio * prof.reference;
        std::vector<double> log_r(static_cast<std::size_t>(ns));
        for (int h = 0; h < ns; ++h)
            log_r[static_cast<std::size_t>(h)] = std::log(rad.center(h));

        prof.sectors.resize(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i)
        {
            SectorDecay& sd = prof.sectors[static_cast<std::size_t>(i)];
            sd.index = i;
            sd.n_points = counts[static_cast<std::size_t>(i)];
            sd.shell_max.assign(static_cast<std::size_t>(ns), std::numeric_limits<double>::quiet_NaN());
            int populated = 0;
            std::vector<double> lx, ly;
            for (int h = 0; h < ns; ++h)
            {
                const double m = M[static_cast<std::size_t>(i * ns + h)];
                if (m < 0)
                    continue;
                ++populated;
                sd.shell_max[static_cast<std::size_t>(h)] = m;
                // A zero reference means the whole field is zero: everything is at the floor.
                if (prof.reference <= 0 || m < prof.floor)
                {
                    sd.floor_hit = true;
                    continue;
                }
                lx.push_back(log_r[static_cast<std::size_t>(h)]);
                ly.push_back(std::log(m));
            }
            if (populated < min_populated_shells)
            {
                sd.indeterminate = true;
                continue;
            }
            if (lx.size() < 2)
            {
                sd.sigma = std::numeric_limits<double>::infinity();
                continue;
            }
            const double nx = double(lx.size());
            double mx = 0, my = 0;
            for (std::size_t q = 0; q < lx.size(); ++q)
            {
                mx += lx[q];
                my += ly[q];
            }
            mx /= nx;
            my /= nx;
            double sxx = 0, sxy = 0;
            for (std::size_t q = 0; q < lx.size(); ++q)
            {
                sxx += (lx[q] - mx) * (lx[q] - mx);
                sxy += (lx[q] - mx) * (ly[q] - my);
            }
            const double slope = sxy / sxx;
            double ss = 0;
            for (std::size_t q = 0; q < lx.size(); ++q)
            {
                const double e = ly[q] - (my + slope * (lx[q] - mx));
                ss += e * e;
            }
            sd.sigma = -slope;
            sd.residual = std::sqrt(ss / nx);
        }
        return prof;
    }

    /// Profile of |V_φu| over the full phase grid.
    template <typename Real>
    DecayProfile decay_profile(const STFTMatrix<Real>& field, const SectorPartition& part, const RadialConfig& rad,
                               std::optional<double> floor_reference = std::nullopt)
    {
        const auto& g = field.grid();
        return decay_profile_of(
            [&](auto&& emit) {
                for (Eigen::Index m = 0; m < field.values.rows(); ++m)
                {
                    const double x = double(g.x(m));
                    for (Eigen::Index k = 0; k < field.values.cols(); ++k)
                        emit(x, double(g.xi(k)), double(std::abs(field.values(m, k))));
                }
            },
            part, rad, floor_reference);
    }

    /// Profile of |c_λ| over the lattice points.
    template <typename Real>
    DecayProfile decay_profile(const GaborCoefficients<Real>& field, const SectorPartition& part,
                               const RadialConfig& rad, std::optional<double> floor_reference = std::nullopt)
    {
        const auto& lat = field.lattice;
        return decay_profile_of(
            [&](auto&& emit) {
                for (Eigen::Index j = 0; j < field.values.rows(); ++j)
                {
                    const double x = double(lat.x(j));
                    for (Eigen::Index l = 0; l < field.values.cols(); ++l)
                        emit(x, double(lat.xi(l)), double(std::abs(field.values(j, l))));
                }
            },
            part, rad, floor_reference);
    }

    /// Profile of a nonnegative real field sampled on the phase grid of `grid`.
    template <typename Real>
    DecayProfile decay_profile(const RMatrix<Real>& magnitude, const Grid<Real>& grid, const SectorPartition& part,
                               const RadialConfig& rad, std::optional<double> floor_reference = std::nullopt)
    {
        return decay_profile_of(
            [&](auto&& emit) {
                for (Eigen::Index m = 0; m < magnitude.rows(); ++m)
                {
                    const double x = double(grid.x(m));
                    for (Eigen::Index k = 0; k < magnitude.cols(); ++k)
                        emit(x, double(grid.xi(k)), double(std::abs(magnitude(m, k))));
                }
            },
            part, rad, floor_reference);
    }

    struct WaveFrontEstimate
    {
        SectorPartition partition;
        SectorSet singular;
        DecayProfile profile;
        double n_thr = 4;
        std::string provenance_field;  // "stft" or "gabor"
        std::string provenance_window;
        std::string provenance_signal;

        SectorSet indeterminate() const
        {
            SectorSet out(partition.k());
            for (const auto& s : profile.sectors)
                if (s.indeterminate)
                    out.insert(s.index);
            return out;
        }
    };

    /// singular = { i : σ_i < N_thr, not floor_hit, not indeterminate }.
    inline WaveFrontEstimate estimate_wavefront(const DecayProfile& profile, double n_thr = 4)
    {
        WaveFrontEstimate est{profile.partition, SectorSet(profile.partition.k()), profile, n_thr, {}, {}, {}};
        for (const auto& s : profile.sectors)
            if (!s.indeterminate && !s.floor_hit && s.sigma < n_thr)
                est.singular.insert(s.index);
        return est;
    }

    inline SetRelation wf_compare(const WaveFrontEstimate& lhs, const SectorSet& rhs, int margin = 1)
    {
        if (lhs.partition.k() != rhs.k())
            throw GridMismatch("wf_compare: partition mismatch");
        return wf_compare(lhs.singular, rhs, margin);
    }

    /// Wave-front estimate from the full STFT.
    template <typename Real>
    WaveFrontEstimate wavefront_stft(const SampledSignal<Real>& u, const Window<Real>& phi,
                                     const SectorPartition& part, const RadialConfig& rad, double n_thr = 4,
                                     std::optional<double> floor_reference = std::nullopt)
    {
        WaveFrontEstimate est = estimate_wavefront(decay_profile(stft(u, phi), part, rad, floor_reference), n_thr);
        est.provenance_field = "stft";
        est.provenance_window = phi.label();
        est.provenance_signal = u.label();
        return est;
    }

    /// Wave-front estimate from Gabor coefficients on a lattice.
    template <typename Real>
    WaveFrontEstimate wavefront_gabor(const SampledSignal<Real>& u, const Window<Real>& phi,
                                      const Lattice<Real>& lat, const SectorPartition& part,
                                      const RadialConfig& rad, double n_thr = 4)
    {
        WaveFrontEstimate est = estimate_wavefront(decay_profile(gabor_analysis(u, phi, lat), part, rad), n_thr);
        est.provenance_field = "gabor";
        est.provenance_window = phi.label();
        est.provenance_signal = u.label();
        return est;
    }
}  // namespace gaborwf

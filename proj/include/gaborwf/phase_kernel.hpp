#pragma once

#include "gaborwf/operators.hpp"
#include "gaborwf/synthesis.hpp"

namespace gaborwf
{
    /// K(z'; z) = (2π)^{-1} V_φ(a^w Π(z)φ)(z') on the phase grid coarsened by `subsample`
    /// in both directions, so that V_φ(a^w u)(z') = ∫ K(z'; z) V_φu(z) dz.
    template <typename Real> struct PhaseKernel
    {
        Grid<Real> grid;
        Eigen::Index subsample = 0;
        Eigen::Index nc = 0;  // coarse points per axis
        std::vector<Complex<Real>> values;
        std::string quantization = "weyl";

        std::size_t index(Eigen::Index p1, Eigen::Index q1, Eigen::Index p, Eigen::Index q) const
        {
            return static_cast<std::size_t>(((p1 * nc + q1) * nc + p) * nc + q);
        }
        Complex<Real> at(Eigen::Index p1, Eigen::Index q1, Eigen::Index p, Eigen::Index q) const
        {
            return values[index(p1, q1, p, q)];
        }
        Real x(Eigen::Index p) const { return grid.x(p * subsample); }
        Real xi(Eigen::Index q) const { return grid.xi(q * subsample); }
    };

    inline constexpr std::size_t default_kernel_cap = std::size_t(1) << 22;

    template <typename Real>
    PhaseKernel<Real> phase_kernel(const WeylOperator<Real>& op, const Window<Real>& phi, Eigen::Index subsample,
                                   std::size_t max_entries = default_kernel_cap)
    {
        const auto& grid = op.grid();
        require_same_grid(grid, phi.grid(), "phase_kernel");
        const Eigen::Index n = grid.n();
        if (subsample < 4 || n % subsample != 0)
            throw InvalidArgument("phase_kernel subsample must be >= 4 and divide n");
        const Eigen::Index nc = n / subsample;
        const double entries = std::pow(double(nc), 4);
        if (entries > double(max_entries))
            throw InvalidArgument("phase_kernel would need " + std::to_string(static_cast<long long>(entries)) +
                                  " entries, above the configured cap");

        PhaseKernel<Real> K{grid, subsample, nc, std::vector<Complex<Real>>(static_cast<std::size_t>(entries)), "weyl"};
        const Real dx = grid.dx();
        const Real inv2pi = Real(1) / two_pi<Real>;
        const CVector<Real>& w = phi.signal().values();

        // Columns Π(z)φ for every coarse z (exact roll plus modulation), then one product
        // with the operator kernel for all of them.
        CMatrix<Real> shifted(n, nc * nc);
        for (Eigen::Index pq = 0; pq < nc * nc; ++pq)
        {
            const Eigen::Index m = (pq / nc) * subsample - n / 2;
            const Real xi0 = grid.xi((pq % nc) * subsample);
            for (Eigen::Index j = 0; j < n; ++j)
            {
                const Real arg = grid.x(j) * xi0;
                shifted(j, pq) = w[((j - m) % n + n) % n] * Complex<Real>(std::cos(arg), std::sin(arg));
            }
        }
        const CMatrix<Real> applied = dx * (op.kernel() * shifted);

        // Only every subsample-th frequency is kept, so the length-n DFT reduces to a
        // length-nc DFT of the signal folded modulo nc.
        parallel_for(nc * nc, [&](long begin, long end) {
            Fft<Real> fft;
            CVector<Real> folded(nc), out(nc);
            for (long pq = begin; pq < end; ++pq)
            {
                const Eigen::Index p = pq / nc, q = pq % nc;
                for (Eigen::Index p1 = 0; p1 < nc; ++p1)
                {
                    const Eigen::Index m1 = p1 * subsample;
                    folded.setZero();
                    for (Eigen::Index j = 0; j < n; ++j)
                        folded[j % nc] += alternating_sign<Real>(j) * applied(j, pq) *
                                          std::conj(w[(j - m1 + n / 2 + n) % n]);
                    fft.forward(out.data(), folded.data(), nc);
                    for (Eigen::Index q1 = 0; q1 < nc; ++q1)
                        K.values[K.index(p1, q1, p, q)] =
                            inv2pi * dx * alternating_sign<Real>(q1 * subsample) * out[q1];
                }
            }
        });
        return K;
    }

    /// Log–log decay of a kernel quantity: maxima per geometric shell and the fitted slope.
    struct KernelProbe
    {
        std::vector<double> shell_r;
        std::vector<double> log_max;  // NaN for empty or sub-floor shells
        double slope = std::numeric_limits<double>::quiet_NaN();
        int fitted_shells = 0;
    };

    namespace detail
    {
        inline KernelProbe fit_probe(const std::vector<double>& maxima, double r_lo, double r_hi, int shells,
                                     double floor)
        {
            KernelProbe probe;
            std::vector<double> lx, ly;
            for (int h = 0; h < shells; ++h)
            {
                const double e0 = r_lo * std::pow(r_hi / r_lo, double(h) / shells);
                const double e1 = r_lo * std::pow(r_hi / r_lo, double(h + 1) / shells);
                const double r = std::sqrt(e0 * e1);
                probe.shell_r.push_back(r);
                const double m = maxima[static_cast<std::size_t>(h)];
                if (m > floor && m > 0)
                {
                    probe.log_max.push_back(std::log(m));
                    lx.push_back(std::log(r));
                    ly.push_back(std::log(m));
                }
                else
                    probe.log_max.push_back(std::numeric_limits<double>::quiet_NaN());
            }
            probe.fitted_shells = static_cast<int>(lx.size());
            if (lx.size() >= 2)
            {
                double mx = 0, my = 0;
                for (std::size_t i = 0; i < lx.size(); ++i)
                {
                    mx += lx[i];
                    my += ly[i];
                }
                mx /= double(lx.size());
                my /= double(lx.size());
                double sxx = 0, sxy = 0;
                for (std::size_t i = 0; i < lx.size(); ++i)
                {
                    sxx += (lx[i] - mx) * (lx[i] - mx);
                    sxy += (lx[i] - mx) * (ly[i] - my);
                }
                probe.slope = sxy / sxx;
            }
            return probe;
        }

        inline int shell_index(double r, double r_lo, double r_hi, int shells)
        {
            if (r < r_lo || r >= r_hi)
                return -1;
            const int h = static_cast<int>(std::floor(shells * std::log(r / r_lo) / std::log(r_hi / r_lo)));
            return std::clamp(h, 0, shells - 1);
        }

        inline double wrap_offset(double d, double period)
        {
            return d - period * std::round(d / period);
        }
    }  // namespace detail

    /// max |K(z'; z)| over pairs whose torus distance |z' - z| falls in each shell of [r_lo, r_hi).
    template <typename Real>
    KernelProbe off_diagonal_probe(const PhaseKernel<Real>& K, double r_lo, double r_hi, int shells = 8)
    {
        std::vector<double> maxima(static_cast<std::size_t>(shells), 0.0);
        double global = 0;
        const double Lx = double(K.grid.length());
        const double Lxi = 2 * double(K.grid.freq_max());
        for (Eigen::Index p1 = 0; p1 < K.nc; ++p1)
            for (Eigen::Index q1 = 0; q1 < K.nc; ++q1)
                for (Eigen::Index p = 0; p < K.nc; ++p)
                    for (Eigen::Index q = 0; q < K.nc; ++q)
                    {
                        const double v = double(std::abs(K.at(p1, q1, p, q)));
                        global = std::max(global, v);
                        const double dx = detail::wrap_offset(double(K.x(p1) - K.x(p)), Lx);
                        const double dxi = detail::wrap_offset(double(K.xi(q1) - K.xi(q)), Lxi);
                        const int h = detail::shell_index(std::hypot(dx, dxi), r_lo, r_hi, shells);
                        if (h >= 0)
                            maxima[static_cast<std::size_t>(h)] = std::max(maxima[static_cast<std::size_t>(h)], v);
                    }
        return detail::fit_probe(maxima, r_lo, r_hi, shells, floor_ratio * global);
    }

    /// max_z |K(z'; z)| against |z'| for z' in the given sectors.
    template <typename Real>
    KernelProbe cone_probe(const PhaseKernel<Real>& K, const SectorSet& cone, const SectorPartition& part,
                           double r_lo, double r_hi, int shells = 8)
    {
        std::vector<double> maxima(static_cast<std::size_t>(shells), 0.0);
        double global = 0;
        for (Eigen::Index p1 = 0; p1 < K.nc; ++p1)
            for (Eigen::Index q1 = 0; q1 < K.nc; ++q1)
            {
                double row_max = 0;
                for (Eigen::Index p = 0; p < K.nc; ++p)
                    for (Eigen::Index q = 0; q < K.nc; ++q)
                        row_max = std::max(row_max, double(std::abs(K.at(p1, q1, p, q))));
                global = std::max(global, row_max);
                const double x = double(K.x(p1)), xi = double(K.xi(q1));
                if (!cone.contains(part.sector_of(x, xi)))
                    continue;
                const int h = detail::shell_index(std::hypot(x, xi), r_lo, r_hi, shells);
                if (h >= 0)
                    maxima[static_cast<std::size_t>(h)] = std::max(maxima[static_cast<std::size_t>(h)], row_max);
            }
        return detail::fit_probe(maxima, r_lo, r_hi, shells, floor_ratio * global);
    }
}  // namespace gaborwf

#pragma once

#include "gaborwf/synthesis.hpp"

namespace gaborwf
{
    /// The phase-space grid z = (x_m, ξ_k) induced by a signal grid.
    template <typename Real> struct PhaseGrid
    {
        Grid<Real> grid;

        Eigen::Index n_x() const noexcept { return grid.n(); }
        Eigen::Index n_xi() const noexcept { return grid.n(); }
        Real x(Eigen::Index m) const noexcept { return grid.x(m); }
        Real xi(Eigen::Index k) const noexcept { return grid.xi(k); }
    };

    /// V[m][k] = V_φu(x_m, ξ_k).
    template <typename Real> struct STFTMatrix
    {
        PhaseGrid<Real> phase_grid;
        CMatrix<Real> values;
        std::string window_label;

        const Grid<Real>& grid() const noexcept { return phase_grid.grid; }
    };

    /// V_φu(x_m, ξ_k) = Δx Σ_j u(x_j) conj φ(x_j - x_m) e^{-i x_j ξ_k}, periodic window shift.
    template <typename Real> STFTMatrix<Real> stft(const SampledSignal<Real>& u, const Window<Real>& phi)
    {
        require_same_grid(u.grid(), phi.grid(), "stft");
        const auto& grid = u.grid();
        const Eigen::Index n = grid.n();
        const Real dx = grid.dx();
        const CVector<Real>& w = phi.signal().values();
        const CVector<Real>& f = u.values();

        CMatrix<Real> V(n, n);
        parallel_for(n, [&](long begin, long end) {
            Fft<Real> fft;
            CVector<Real> g(n), out(n);
            for (long m = begin; m < end; ++m)
            {
                // φ(x_j - x_m) sits at index j - m + n/2 on the centered grid.
                for (Eigen::Index j = 0; j < n; ++j)
                    g[j] = alternating_sign<Real>(j) * f[j] * std::conj(w[(j - m + n / 2 + n) % n]);
                fft.forward(out.data(), g.data(), n);
                for (Eigen::Index k = 0; k < n; ++k)
                    V(m, k) = dx * alternating_sign<Real>(k) * out[k];
            }
        });
        return {PhaseGrid<Real>{grid}, std::move(V), phi.label()};
    }

    /// (2π)^{-1} ΔxΔξ Σ_{m,k} F[m][k] Π(x_m, ξ_k)φ. Inverts stft exactly for a
    /// discretely normalized window.
    template <typename Real>
    SampledSignal<Real> stft_adjoint(const STFTMatrix<Real>& F, const Window<Real>& phi)
    {
        if (!phi.normalized())
            throw InvalidArgument("stft_adjoint requires a window with unit L2 norm");
        require_same_grid(F.grid(), phi.grid(), "stft_adjoint");
        const auto& grid = F.grid();
        const Eigen::Index n = grid.n();
        if (F.values.rows() != n || F.values.cols() != n)
            throw InvalidArgument("stft_adjoint: matrix shape does not match grid");
        const CVector<Real>& w = phi.signal().values();

        // Fixed block count, independent of the thread count, so the summation order
        // (and hence the bits of the result) never depends on parallelism.
        const long blocks = std::min<long>(16, n);
        std::vector<CVector<Real>> partial(static_cast<std::size_t>(blocks), CVector<Real>::Zero(n));
        const long chunk = (n + blocks - 1) / blocks;
        parallel_for(blocks, [&](long wb, long we) {
            Fft<Real> fft;
            CVector<Real> row(n), out(n);
            for (long wk = wb; wk < we; ++wk)
            {
                CVector<Real>& acc = partial[static_cast<std::size_t>(wk)];
                const long mend = std::min<long>(n, (wk + 1) * chunk);
                for (long m = wk * chunk; m < mend; ++m)
                {
                    for (Eigen::Index k = 0; k < n; ++k)
                        row[k] = alternating_sign<Real>(k) * F.values(m, k);
                    fft.inverse(out.data(), row.data(), n);
                    for (Eigen::Index j = 0; j < n; ++j)
                        acc[j] += alternating_sign<Real>(j) * w[(j - m + n / 2 + n) % n] * out[j];
                }
            }
        });
        CVector<Real> result = CVector<Real>::Zero(n);
        for (const auto& p : partial)
            result += p;
        result /= Real(n);
        return SampledSignal<Real>(grid, std::move(result), "stft_adjoint");
    }

    /// Values of a phase-space matrix at lattice points: rows m = j·a, columns k = l·b.
    template <typename Real>
    CMatrix<Real> subsample(const CMatrix<Real>& values, Eigen::Index a, Eigen::Index b)
    {
        CMatrix<Real> out(values.rows() / a, values.cols() / b);
        for (Eigen::Index j = 0; j < out.rows(); ++j)
            for (Eigen::Index l = 0; l < out.cols(); ++l)
                out(j, l) = values(j * a, l * b);
        return out;
    }
}  // namespace gaborwf

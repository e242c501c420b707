#pragma once

#include "gaborwf/stft.hpp"

namespace gaborwf
{
    namespace detail
    {
        /// Trigonometric interpolant of f on the grid refined by 2 (samples at x_0 + sΔx/2).
        template <typename Real> CVector<Real> upsample2(const CVector<Real>& f)
        {
            const Eigen::Index n = f.size();
            Fft<Real> fft;
            CVector<Real> spec(n);
            fft.forward(spec.data(), f.data(), n);
            CVector<Real> padded = CVector<Real>::Zero(2 * n);
            for (Eigen::Index k = 0; k < n / 2; ++k)
                padded[k] = spec[k];
            for (Eigen::Index k = n / 2 + 1; k < n; ++k)
                padded[k + n] = spec[k];
            padded[n / 2] = spec[n / 2] / Real(2);
            padded[n / 2 + n] = spec[n / 2] / Real(2);
            CVector<Real> out(2 * n);
            fft.inverse(out.data(), padded.data(), 2 * n);
            return out / Real(n);
        }
    }  // namespace detail

    /// Cross-Wigner distribution W(f,g)(x_m, ξ_q) = ∫ f(x+τ/2) conj g(x-τ/2) e^{-iτξ} dτ.
    ///
    /// τ runs over one period on the half-step grid; the endpoint pair τ = ±L/2 is
    /// averaged so that W(f,f) is real up to roundoff.
    template <typename Real>
    STFTMatrix<Real> wigner(const SampledSignal<Real>& f, const SampledSignal<Real>& g)
    {
        require_same_grid(f.grid(), g.grid(), "wigner");
        const auto& grid = f.grid();
        const Eigen::Index n = grid.n();
        const Eigen::Index n2 = 2 * n;
        const CVector<Real> fu = detail::upsample2(f.values());
        const CVector<Real> gu = detail::upsample2(g.values());
        const Real dx = grid.dx();

        CMatrix<Real> W(n, n);
        parallel_for(n, [&](long begin, long end) {
            Fft<Real> fft;
            CVector<Real> h(n), out(n);
            for (long m = begin; m < end; ++m)
            {
                const Eigen::Index c = 2 * m;
                auto lag = [&](Eigen::Index k) {
                    return fu[((c + k) % n2 + n2) % n2] * std::conj(gu[((c - k) % n2 + n2) % n2]);
                };
                for (Eigen::Index k = -n / 2 + 1; k < n / 2; ++k)
                    h[(k + n) % n] = alternating_sign<Real>(k < 0 ? -k : k) * lag(k);
                h[n / 2] = alternating_sign<Real>(n / 2) * (lag(n / 2) + lag(-n / 2)) / Real(2);
                fft.forward(out.data(), h.data(), n);
                for (Eigen::Index q = 0; q < n; ++q)
                    W(m, q) = dx * out[q];
            }
        });
        return {PhaseGrid<Real>{grid}, std::move(W), "wigner(" + f.label() + "," + g.label() + ")"};
    }
}  // namespace gaborwf

#pragma once

#include "gaborwf/stft.hpp"
#include "gaborwf/symbol.hpp"

namespace gaborwf
{
    /// Weyl quantization a^w on the periodic grid, stored as its discretized Schwartz kernel
    ///   k(x_j, x_l) = (2π)^{-1} Δξ Σ_k a(midpoint(j, l), ξ_k) e^{i(x_j - x_l)ξ_k}.
    /// The midpoint is taken along the shortest torus path d = wrap(j - l) ∈ [-n/2, n/2),
    /// i.e. at x = -L/2 + (2l + d)Δx/2, which is why the symbol must be sampled on the
    /// half-step grid. Build once, apply many times.
    template <typename Real> class WeylOperator
    {
    public:
        explicit WeylOperator(const SampledSymbol<Real>& a) : grid_(a.grid), label_(a.label)
        {
            if (a.refine != 2)
                throw InvalidArgument("weyl_apply needs the symbol sampled on the half-step grid (refine = 2)");
            const Eigen::Index n = grid_.n();
            const Eigen::Index n2 = 2 * n;
            if (a.values.rows() != n2 || a.values.cols() != n)
                throw GridMismatch("weyl_apply: symbol grid does not match signal grid");

            // G(s, d) = (Δξ/2π) (-1)^d Σ_k a_s[k] e^{2πikd/n}: one inverse FFT per midpoint row.
            CMatrix<Real> G(n2, n);
            const Real scale = grid_.freq_step() / two_pi<Real>;
            parallel_for(n2, [&](long begin, long end) {
                Fft<Real> fft;
                CVector<Real> row(n), out(n);
                for (long s = begin; s < end; ++s)
                {
                    row = a.values.row(s).transpose();
                    fft.inverse(out.data(), row.data(), n);
                    for (Eigen::Index d = 0; d < n; ++d)
                        G(s, d) = scale * out[d];
                }
            });

            kernel_.resize(n, n);
            parallel_for(n, [&](long begin, long end) {
                for (long j = begin; j < end; ++j)
                    for (Eigen::Index l = 0; l < n; ++l)
                    {
                        const Eigen::Index d = ((j - l + n / 2) % n + n) % n - n / 2;
                        const Eigen::Index s = ((2 * l + d) % n2 + n2) % n2;
                        const Complex<Real> v = alternating_sign<Real>(d < 0 ? -d : d) * G(s, (d + n) % n);
                        if (d == -n / 2)
                        {
                            // Points half a period apart have two midpoints on the circle;
                            // averaging them keeps real symbols self-adjoint.
                            const Eigen::Index s2 = (s + n) % n2;
                            kernel_(j, l) = (v + alternating_sign<Real>(n / 2) * G(s2, n / 2)) / Real(2);
                        }
                        else
                            kernel_(j, l) = v;
                    }
            });
        }

        const Grid<Real>& grid() const noexcept { return grid_; }
        /// k(x_j, x_l) without the quadrature weight Δx.
        const CMatrix<Real>& kernel() const noexcept { return kernel_; }

        CVector<Real> apply(const CVector<Real>& u) const { return grid_.dx() * (kernel_ * u); }

        SampledSignal<Real> apply(const SampledSignal<Real>& u) const
        {
            require_same_grid(u.grid(), grid_, "weyl_apply");
            return SampledSignal<Real>(grid_, apply(u.values()), "weyl(" + label_ + ")(" + u.label() + ")");
        }

    private:
        Grid<Real> grid_;
        std::string label_;
        CMatrix<Real> kernel_;
    };

    template <typename Real> SampledSignal<Real> weyl_apply(const SampledSymbol<Real>& a, const SampledSignal<Real>& u)
    {
        return WeylOperator<Real>(a).apply(u);
    }

    /// STFT multiplier V_ψ^*(b · V_ψu). With a unit-norm window, b ≡ 1 gives the identity.
    template <typename Real>
    SampledSignal<Real> localization_apply(const SampledSymbol<Real>& b, const Window<Real>& psi,
                                           const SampledSignal<Real>& u)
    {
        require_same_grid(u.grid(), psi.grid(), "localization_apply");
        require_same_grid(u.grid(), b.grid, "localization_apply");
        if (b.refine != 1)
            throw InvalidArgument("localization symbol must be sampled on the phase grid (refine = 1)");
        STFTMatrix<Real> V = stft(u, psi);
        V.values.array() *= b.values.array();
        return stft_adjoint(V, psi).with_label("localize(" + b.label + ")(" + u.label() + ")");
    }
}  // namespace gaborwf

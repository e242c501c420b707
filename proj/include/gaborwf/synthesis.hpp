#pragma once

#include "gaborwf/grid.hpp"

#include <memory>
#include <variant>

namespace gaborwf
{
    namespace kinds
    {
        struct Delta
        {
            double x0 = 0;
        };
        struct PlaneWave
        {
            double xi0 = 0;
        };
        struct Chirp
        {
            double c = 1;
        };
        struct Gaussian
        {
            double x0 = 0;
            double xi0 = 0;
        };
        struct Hermite
        {
            int order = 0;
        };
        struct PhaseShift;
    }  // namespace kinds

    using SignalKind = std::variant<kinds::Delta, kinds::PlaneWave, kinds::Chirp, kinds::Gaussian,
                                    kinds::Hermite, std::shared_ptr<const kinds::PhaseShift>>;

    namespace kinds
    {
        /// Π(z) applied to another kind, z = (x0, xi0).
        struct PhaseShift
        {
            SignalKind base;
            double x0 = 0;
            double xi0 = 0;
        };
    }  // namespace kinds

    inline SignalKind phase_shifted(SignalKind base, double x0, double xi0)
    {
        return std::make_shared<const kinds::PhaseShift>(kinds::PhaseShift{std::move(base), x0, xi0});
    }

    /// Samples of the k-th L²-normalized Hermite function h_k(x) at the given points.
    template <typename Real> RVector<Real> hermite_function(int order, const RVector<Real>& x)
    {
        if (order < 0)
            throw InvalidArgument("hermite order must be nonnegative");
        RVector<Real> prev = RVector<Real>::Zero(x.size());
        RVector<Real> cur = (std::pow(pi<Real>, Real(-0.25)) * (-x.array().square() / 2).exp()).matrix();
        for (int k = 0; k < order; ++k)
        {
            RVector<Real> next = (std::sqrt(Real(2) / Real(k + 1)) * x.array() * cur.array() -
                                  std::sqrt(Real(k) / Real(k + 1)) * prev.array())
                                     .matrix();
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }

    /// (M_ξ T_x f)(y) = e^{iyξ} f(y - x) with periodic translation. Translations by a
    /// multiple of Δx are exact rolls; others go through the Fourier shift theorem.
    template <typename Real>
    SampledSignal<Real> phase_shift(const SampledSignal<Real>& f, Real x0, Real xi0)
    {
        const auto& grid = f.grid();
        const Eigen::Index n = grid.n();
        CVector<Real> shifted(n);
        const Real steps = x0 / grid.dx();
        const Real rounded = std::round(steps);
        if (std::abs(steps - rounded) < 1e-9)
        {
            const Eigen::Index m = ((static_cast<Eigen::Index>(rounded) % n) + n) % n;
            for (Eigen::Index j = 0; j < n; ++j)
                shifted[j] = f[(j - m + n) % n];
        }
        else
        {
            SampledSignal<Real> spec = dft(f);
            CVector<Real> v = spec.values();
            for (Eigen::Index k = 0; k < n; ++k)
            {
                const Real arg = -x0 * grid.xi(k);
                v[k] *= Complex<Real>(std::cos(arg), std::sin(arg));
            }
            // Keep the Nyquist bin symmetric so real inputs stay real.
            v[0] = spec[0] * std::cos(x0 * grid.freq_max());
            shifted = inverse_dft(SampledSignal<Real>(grid, std::move(v))).values();
        }
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const Real arg = grid.x(j) * xi0;
            shifted[j] *= Complex<Real>(std::cos(arg), std::sin(arg));
        }
        return SampledSignal<Real>(grid, std::move(shifted), f.label());
    }

    namespace detail
    {
        template <typename Real> struct Synthesizer
        {
            const Grid<Real>& grid;

            SampledSignal<Real> operator()(const kinds::Delta& k) const
            {
                const Real half = grid.length() / 2;
                if (!(k.x0 >= -half && k.x0 < half))
                    throw InvalidArgument("delta center must lie in [-L/2, L/2)");
                Eigen::Index j = grid.nearest_index(Real(k.x0));
                if (j == grid.n())
                    j = 0;
                CVector<Real> v = CVector<Real>::Zero(grid.n());
                v[j] = Real(1) / grid.dx();
                return SampledSignal<Real>(grid, std::move(v), "delta(" + num(k.x0) + ")");
            }

            SampledSignal<Real> operator()(const kinds::PlaneWave& k) const
            {
                if (!(std::abs(k.xi0) < grid.freq_max()))
                    throw InvalidArgument("plane-wave frequency must lie in (-Xi, Xi) to avoid aliasing");
                CVector<Real> v(grid.n());
                for (Eigen::Index j = 0; j < grid.n(); ++j)
                {
                    const Real arg = grid.x(j) * Real(k.xi0);
                    v[j] = Complex<Real>(std::cos(arg), std::sin(arg));
                }
                return SampledSignal<Real>(grid, std::move(v), "plane_wave(" + num(k.xi0) + ")");
            }

            SampledSignal<Real> operator()(const kinds::Chirp& k) const
            {
                if (k.c == 0 || !std::isfinite(k.c))
                    throw InvalidArgument("chirp rate c must be nonzero (c != 0)");
                CVector<Real> v(grid.n());
                for (Eigen::Index j = 0; j < grid.n(); ++j)
                {
                    const Real x = grid.x(j);
                    const Real arg = Real(k.c) * x * x / 2;
                    v[j] = Complex<Real>(std::cos(arg), std::sin(arg));
                }
                return SampledSignal<Real>(grid, std::move(v), "chirp(" + num(k.c) + ")");
            }

            SampledSignal<Real> operator()(const kinds::Gaussian& k) const
            {
                CVector<Real> v(grid.n());
                const Real c = std::pow(pi<Real>, Real(-0.25));
                for (Eigen::Index j = 0; j < grid.n(); ++j)
                {
                    const Real x = grid.x(j);
                    const Real d = x - Real(k.x0);
                    const Real arg = x * Real(k.xi0);
                    v[j] = c * std::exp(-d * d / 2) * Complex<Real>(std::cos(arg), std::sin(arg));
                }
                return SampledSignal<Real>(grid, std::move(v),
                                           "gaussian(" + num(k.x0) + "," + num(k.xi0) + ")");
            }

            SampledSignal<Real> operator()(const kinds::Hermite& k) const
            {
                const RVector<Real> h = hermite_function<Real>(k.order, grid.x_axis());
                return SampledSignal<Real>(grid, h.template cast<Complex<Real>>(),
                                           "hermite(" + std::to_string(k.order) + ")");
            }

            SampledSignal<Real> operator()(const std::shared_ptr<const kinds::PhaseShift>& k) const
            {
                if (!k)
                    throw InvalidArgument("phase_shift requires a base signal");
                SampledSignal<Real> base = std::visit(*this, k->base);
                SampledSignal<Real> out = phase_shift(base, Real(k->x0), Real(k->xi0));
                return out.with_label("phase_shift(" + base.label() + ";" + num(k->x0) + "," +
                                      num(k->xi0) + ")");
            }

            static std::string num(double v)
            {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                return buf;
            }
        };
    }  // namespace detail

    template <typename Real> SampledSignal<Real> synthesize(const SignalKind& kind, const Grid<Real>& grid)
    {
        return std::visit(detail::Synthesizer<Real>{grid}, kind);
    }

    /// Analysis window φ with its cached L² norm.
    template <typename Real> class Window
    {
    public:
        Window() = default;
        explicit Window(SampledSignal<Real> signal) : signal_(std::move(signal)), norm_(l2_norm(signal_))
        {
            if (!(norm_ > 0))
                throw InvalidArgument("window must be nonzero");
        }

        const SampledSignal<Real>& signal() const noexcept { return signal_; }
        const Grid<Real>& grid() const noexcept { return signal_.grid(); }
        const std::string& label() const noexcept { return signal_.label(); }
        Real l2_norm_value() const noexcept { return norm_; }
        bool normalized() const noexcept { return std::abs(norm_ - Real(1)) <= Real(1e-12); }

        /// Rescales to unit discrete L² norm.
        Window normalize() const
        {
            CVector<Real> v = signal_.values() / norm_;
            return Window(SampledSignal<Real>(signal_.grid(), std::move(v), signal_.label()));
        }

    private:
        SampledSignal<Real> signal_;
        Real norm_ = 0;
    };

    /// Discretely normalized Gaussian window π^{-1/4} e^{-x²/2}.
    template <typename Real> Window<Real> gaussian_window(const Grid<Real>& grid)
    {
        return Window<Real>(synthesize(SignalKind{kinds::Gaussian{}}, grid)).normalize();
    }

    template <typename Real> Window<Real> hermite_window(const Grid<Real>& grid, int order)
    {
        return Window<Real>(synthesize(SignalKind{kinds::Hermite{order}}, grid)).normalize();
    }
}  // namespace gaborwf

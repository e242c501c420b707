#pragma once

#include "gaborwf/cg.hpp"
#include "gaborwf/stft.hpp"

#include <limits>
#include <random>

namespace gaborwf
{
    /// Separable lattice αZ × βZ restricted to the periodic phase grid. Lattice points
    /// are (x_{j·a}, ξ_{l·b}) with a = α/Δx and b = β/Δξ, so the origin is included.
    template <typename Real> struct Lattice
    {
        Grid<Real> grid;
        Eigen::Index a = 1;  // α / Δx
        Eigen::Index b = 1;  // β / Δξ

        Real alpha() const noexcept { return Real(a) * grid.dx(); }
        Real beta() const noexcept { return Real(b) * grid.freq_step(); }
        Eigen::Index n_time() const noexcept { return grid.n() / a; }
        Eigen::Index n_freq() const noexcept { return grid.n() / b; }
        Real x(Eigen::Index j) const noexcept { return grid.x(j * a); }
        Real xi(Eigen::Index l) const noexcept { return grid.xi(l * b); }
    };

    namespace detail
    {
        /// Nearest power of two (in log scale) to ratio, capped at n.
        inline long snap_power_of_two(double ratio, long n)
        {
            const double e = std::round(std::log2(ratio));
            const long v = 1L << static_cast<int>(std::clamp(e, 0.0, std::log2(double(n))));
            return v;
        }
    }  // namespace detail

    /// Snaps α and β to power-of-two multiples of Δx and Δξ (so they divide the grid).
    template <typename Real> Lattice<Real> make_lattice(Real alpha_req, Real beta_req, const Grid<Real>& grid)
    {
        if (!(alpha_req > 0) || !(beta_req > 0) || !std::isfinite(alpha_req) || !std::isfinite(beta_req))
            throw InvalidArgument("lattice steps must be positive");
        const Real limit = two_pi<Real> * (1 + Real(1e-12));
        if (alpha_req * beta_req > limit)
            throw InvalidArgument("lattice density violates alpha*beta <= 2*pi");
        if (alpha_req < grid.dx() / 2 || beta_req < grid.freq_step() / 2)
            throw InvalidArgument("lattice step would snap to zero");
        Lattice<Real> lat{grid, detail::snap_power_of_two(alpha_req / grid.dx(), grid.n()),
                          detail::snap_power_of_two(beta_req / grid.freq_step(), grid.n())};
        if (lat.alpha() * lat.beta() > limit)
            throw InvalidArgument("lattice density violates alpha*beta <= 2*pi after snapping");
        return lat;
    }

    /// Lattice with α = β = √product requested before snapping.
    template <typename Real> Lattice<Real> make_lattice_for_density(Real product, const Grid<Real>& grid)
    {
        const Real s = std::sqrt(product);
        return make_lattice(s, s, grid);
    }

    template <typename Real> struct GaborCoefficients
    {
        Lattice<Real> lattice;
        CMatrix<Real> values;  // c[j][l] = (u, Π(λ_{jl})φ)
        std::string window_label;
    };

    /// c[j][l] = V_φu(x_{ja}, ξ_{lb}); one FFT per lattice time step.
    template <typename Real>
    GaborCoefficients<Real> gabor_analysis(const SampledSignal<Real>& u, const Window<Real>& phi,
                                           const Lattice<Real>& lat)
    {
        require_same_grid(u.grid(), phi.grid(), "gabor_analysis");
        require_same_grid(u.grid(), lat.grid, "gabor_analysis");
        const Eigen::Index n = lat.grid.n();
        const Real dx = lat.grid.dx();
        const CVector<Real>& w = phi.signal().values();
        CMatrix<Real> c(lat.n_time(), lat.n_freq());
        parallel_for(lat.n_time(), [&](long begin, long end) {
            Fft<Real> fft;
            CVector<Real> g(n), out(n);
            for (long j = begin; j < end; ++j)
            {
                const Eigen::Index m = j * lat.a;
                for (Eigen::Index i = 0; i < n; ++i)
                    g[i] = alternating_sign<Real>(i) * u[i] * std::conj(w[(i - m + n / 2 + n) % n]);
                fft.forward(out.data(), g.data(), n);
                for (Eigen::Index l = 0; l < lat.n_freq(); ++l)
                {
                    const Eigen::Index k = l * lat.b;
                    c(j, l) = dx * alternating_sign<Real>(k) * out[k];
                }
            }
        });
        return {lat, std::move(c), phi.label()};
    }

    /// Σ_{j,l} c[j][l] Π(λ_{jl}) window.
    template <typename Real>
    SampledSignal<Real> gabor_synthesis(const GaborCoefficients<Real>& coeffs, const Window<Real>& window,
                                        const Lattice<Real>& lat)
    {
        require_same_grid(window.grid(), lat.grid, "gabor_synthesis");
        if (coeffs.values.rows() != lat.n_time() || coeffs.values.cols() != lat.n_freq())
            throw InvalidArgument("gabor_synthesis: coefficient shape does not match lattice");
        const Eigen::Index n = lat.grid.n();
        const CVector<Real>& w = window.signal().values();
        Fft<Real> fft;
        CVector<Real> row(n), out(n);
        CVector<Real> f = CVector<Real>::Zero(n);
        for (Eigen::Index j = 0; j < lat.n_time(); ++j)
        {
            row.setZero();
            for (Eigen::Index l = 0; l < lat.n_freq(); ++l)
            {
                const Eigen::Index k = l * lat.b;
                row[k] = alternating_sign<Real>(k) * coeffs.values(j, l);
            }
            fft.inverse(out.data(), row.data(), n);
            const Eigen::Index m = j * lat.a;
            for (Eigen::Index i = 0; i < n; ++i)
                f[i] += alternating_sign<Real>(i) * out[i] * w[(i - m + n / 2 + n) % n];
        }
        return SampledSignal<Real>(lat.grid, std::move(f), "gabor_synthesis");
    }

    /// S f = Σ_λ (f, Π(λ)φ) Π(λ)φ.
    template <typename Real>
    SampledSignal<Real> frame_operator_apply(const SampledSignal<Real>& f, const Window<Real>& phi,
                                             const Lattice<Real>& lat)
    {
        return gabor_synthesis(gabor_analysis(f, phi, lat), phi, lat).with_label("frame_operator");
    }

    template <typename Real> struct DualWindowResult
    {
        Window<Real> window;
        int iterations = 0;
        Real relative_residual = 0;
    };

    /// Canonical dual window φ̃ = S^{-1}φ by conjugate gradients (cap 10·n iterations).
    template <typename Real>
    DualWindowResult<Real> dual_window(const Window<Real>& phi, const Lattice<Real>& lat, Real tol = Real(1e-12))
    {
        require_same_grid(phi.grid(), lat.grid, "dual_window");
        const auto& grid = lat.grid;
        auto S = [&](const CVector<Real>& v) {
            return frame_operator_apply(SampledSignal<Real>(grid, v), phi, lat).values();
        };
        const int cap = static_cast<int>(10 * grid.n());
        CgResult<Real> cg = conjugate_gradient<Real>(S, phi.signal().values(), tol, cap);
        return {Window<Real>(SampledSignal<Real>(grid, std::move(cg.x), "dual(" + phi.label() + ")")),
                cg.iterations, cg.relative_residual};
    }

    template <typename Real> struct FrameBounds
    {
        Real lower = 0;  // A
        Real upper = 0;  // B
        std::string method;
        bool is_frame() const noexcept { return lower > 0; }
    };

    /// B from Lanczos iteration on S, A from Lanczos iteration on S^{-1} with each
    /// application solved by conjugate gradients. A is reported as 0 when an inner solve
    /// fails (numerically not a frame).
    template <typename Real>
    FrameBounds<Real> frame_bounds(const Window<Real>& phi, const Lattice<Real>& lat, Real rel_tol = Real(1e-6),
                                   int max_steps = 200)
    {
        require_same_grid(phi.grid(), lat.grid, "frame_bounds");
        const auto& grid = lat.grid;
        const Eigen::Index n = grid.n();
        auto S = [&](const CVector<Real>& v) {
            return frame_operator_apply(SampledSignal<Real>(grid, v), phi, lat).values();
        };
        std::mt19937_64 rng(0x5eed);
        std::normal_distribution<Real> normal;
        CVector<Real> start(n);
        for (Eigen::Index j = 0; j < n; ++j)
            start[j] = Complex<Real>(normal(rng), normal(rng));

        FrameBounds<Real> fb;
        fb.method = "lanczos on S (upper), lanczos on S^-1 via conjugate gradients (lower)";
        const RitzResult<Real> up = lanczos_extremes<Real>(S, start, rel_tol * Real(1e-2), max_steps);
        fb.upper = up.largest;
        if (!up.converged)
            fb.method += "; upper bound not converged";

        const int cap = static_cast<int>(10 * n);
        auto S_inv = [&](const CVector<Real>& v) { return conjugate_gradient<Real>(S, v, Real(1e-13), cap).x; };
        try
        {
            const RitzResult<Real> lo = lanczos_extremes<Real>(S_inv, start, rel_tol * Real(1e-2), max_steps);
            fb.lower = lo.largest > 0 ? Real(1) / lo.largest : Real(0);
            if (!lo.converged)
                fb.method += "; lower bound not converged";
        }
        catch (const ConvergenceError&)
        {
            fb.lower = 0;
            fb.method += "; lower bound solve failed";
        }
        if (fb.lower > fb.upper)
            fb.lower = fb.upper;
        return fb;
    }

    /// Σ_λ |c_λ|² for the given window.
    template <typename Real> Real coefficient_energy(const GaborCoefficients<Real>& c)
    {
        return c.values.squaredNorm();
    }

    inline constexpr double infinity_exponent = std::numeric_limits<double>::infinity();

    /// Mixed weighted norm (Σ_l (Σ_j |c_{jl}|^p ⟨λ_{jl}⟩^{sp})^{q/p})^{1/q}, inner index over
    /// time, outer over frequency. p, q ∈ {1, 2, ∞}.
    template <typename Real>
    Real modulation_norm(const SampledSignal<Real>& u, const Window<Real>& phi, const Lattice<Real>& lat, double p,
                         double q, Real s)
    {
        auto valid = [](double e) { return e == 1 || e == 2 || std::isinf(e); };
        if (!valid(p) || !valid(q))
            throw InvalidArgument("modulation_norm exponents must be 1, 2 or infinity");
        const GaborCoefficients<Real> c = gabor_analysis(u, phi, lat);
        auto accumulate = [](Real acc, Real v, double e) {
            return std::isinf(e) ? std::max(acc, v) : acc + std::pow(v, Real(e));
        };
        auto finish = [](Real acc, double e) { return std::isinf(e) ? acc : std::pow(acc, Real(1 / e)); };
        Real outer = 0;
        for (Eigen::Index l = 0; l < lat.n_freq(); ++l)
        {
            Real inner_acc = 0;
            for (Eigen::Index j = 0; j < lat.n_time(); ++j)
            {
                const Real weight = std::pow(japanese_bracket(lat.x(j), lat.xi(l)), s);
                inner_acc = accumulate(inner_acc, std::abs(c.values(j, l)) * weight, p);
            }
            outer = accumulate(outer, finish(inner_acc, p), q);
        }
        return finish(outer, q);
    }
}  // namespace gaborwf

#pragma once

#include "gaborwf/common.hpp"

#include <sstream>
#include <utility>

namespace gaborwf
{
    /// Uniform periodic grid on [-L/2, L/2) with its centered frequency grid.
    ///
    /// x_j = -L/2 + jΔx and ξ_k = (k - n/2)Δξ for j, k = 0..n-1, where Δx = L/n,
    /// Δξ = 2π/L and Ξ = πn/L, so that Δx·Δξ·n = 2π.
    template <typename Real> class Grid
    {
    public:
        Grid() = default;

        Eigen::Index n() const noexcept { return n_; }
        Real length() const noexcept { return length_; }
        Real dx() const noexcept { return length_ / Real(n_); }
        Real freq_step() const noexcept { return two_pi<Real> / length_; }
        Real freq_max() const noexcept { return pi<Real> * Real(n_) / length_; }

        Real x(Eigen::Index j) const noexcept { return -length_ / 2 + Real(j) * dx(); }
        Real xi(Eigen::Index k) const noexcept { return Real(k - n_ / 2) * freq_step(); }

        RVector<Real> x_axis() const
        {
            RVector<Real> v(n_);
            for (Eigen::Index j = 0; j < n_; ++j)
                v[j] = x(j);
            return v;
        }
        RVector<Real> xi_axis() const
        {
            RVector<Real> v(n_);
            for (Eigen::Index k = 0; k < n_; ++k)
                v[k] = xi(k);
            return v;
        }

        /// Index of the grid point nearest to x (no wrap).
        Eigen::Index nearest_index(Real pos) const
        {
            return static_cast<Eigen::Index>(std::llround((pos + length_ / 2) / dx()));
        }

        bool operator==(const Grid& other) const noexcept
        {
            return n_ == other.n_ && length_ == other.length_;
        }

        template <typename R> friend Grid<R> make_grid(long n, R length);

    private:
        Grid(Eigen::Index n, Real length) : n_(n), length_(length) {}

        Eigen::Index n_ = 0;
        Real length_ = 0;
    };

    /// Builds a grid of n points over [-L/2, L/2). n must be a power of two, n ≥ 16.
    template <typename Real> Grid<Real> make_grid(long n, Real length)
    {
        if (n < 16 || !is_power_of_two(n))
        {
            std::ostringstream os;
            os << "grid size must be a power of two >= 16, got " << n;
            throw InvalidArgument(os.str());
        }
        if (!(length > 0) || !std::isfinite(length))
            throw InvalidArgument("grid length must be positive and finite");
        return Grid<Real>(n, length);
    }

    /// Complex samples of a distribution on a Grid.
    template <typename Real> class SampledSignal
    {
    public:
        SampledSignal() = default;

        SampledSignal(Grid<Real> grid, CVector<Real> values, std::string label = {})
            : grid_(std::move(grid)), values_(std::move(values)), label_(std::move(label))
        {
            if (values_.size() != grid_.n())
                throw InvalidArgument("signal length does not match grid size");
            if (!values_.allFinite())
                throw InvalidArgument("signal values must be finite");
        }

        static SampledSignal zeros(const Grid<Real>& grid, std::string label = "zero")
        {
            return SampledSignal(grid, CVector<Real>::Zero(grid.n()), std::move(label));
        }

        const Grid<Real>& grid() const noexcept { return grid_; }
        const CVector<Real>& values() const noexcept { return values_; }
        const std::string& label() const noexcept { return label_; }
        Eigen::Index size() const noexcept { return values_.size(); }
        const Complex<Real>& operator[](Eigen::Index j) const { return values_[j]; }

        SampledSignal with_label(std::string label) const
        {
            SampledSignal copy = *this;
            copy.label_ = std::move(label);
            return copy;
        }

    private:
        Grid<Real> grid_;
        CVector<Real> values_;
        std::string label_;
    };

    template <typename Real>
    inline void require_same_grid(const Grid<Real>& a, const Grid<Real>& b, const char* what)
    {
        if (!(a == b))
            throw GridMismatch(std::string(what) + ": grid mismatch");
    }

    /// Discrete L² inner product (f, g) = Δx Σ f conj(g), conjugate linear in g.
    template <typename Real>
    Complex<Real> inner(const SampledSignal<Real>& f, const SampledSignal<Real>& g)
    {
        require_same_grid(f.grid(), g.grid(), "inner");
        return f.grid().dx() * g.values().dot(f.values());
    }

    template <typename Real> Real l2_norm(const SampledSignal<Real>& f)
    {
        return std::sqrt(f.grid().dx()) * f.values().norm();
    }

    /// ‖f - g‖ / ‖g‖ in the discrete ℓ² sense.
    template <typename Real>
    Real relative_error(const SampledSignal<Real>& f, const SampledSignal<Real>& reference)
    {
        require_same_grid(f.grid(), reference.grid(), "relative_error");
        const Real denom = reference.values().norm();
        const Real diff = (f.values() - reference.values()).norm();
        return denom > 0 ? diff / denom : diff;
    }

    /// Samples of f̂(ξ_k) = ∫ f(x) e^{-ixξ} dx by the rectangle rule Δx Σ f(x_j) e^{-i x_j ξ_k}.
    ///
    /// On the centered grid e^{-i x_j ξ_k} = (-1)^{j+k} e^{-2πijk/n} exactly (n divisible
    /// by 4), so one unscaled FFT with sign flips evaluates the sum.
    template <typename Real> SampledSignal<Real> dft(const SampledSignal<Real>& f)
    {
        const auto& grid = f.grid();
        const Eigen::Index n = grid.n();
        CVector<Real> in(n), out(n);
        for (Eigen::Index j = 0; j < n; ++j)
            in[j] = alternating_sign<Real>(j) * f[j];
        Fft<Real> fft;
        fft.forward(out.data(), in.data(), n);
        const Real dx = grid.dx();
        for (Eigen::Index k = 0; k < n; ++k)
            out[k] *= dx * alternating_sign<Real>(k);
        return SampledSignal<Real>(grid, std::move(out), "dft(" + f.label() + ")");
    }

    /// Inverse of dft: f(x_j) = (2π)^{-1} Δξ Σ_k f̂(ξ_k) e^{i x_j ξ_k}.
    template <typename Real> SampledSignal<Real> inverse_dft(const SampledSignal<Real>& spectrum)
    {
        const auto& grid = spectrum.grid();
        const Eigen::Index n = grid.n();
        CVector<Real> in(n), out(n);
        for (Eigen::Index k = 0; k < n; ++k)
            in[k] = alternating_sign<Real>(k) * spectrum[k];
        Fft<Real> fft;
        fft.inverse(out.data(), in.data(), n);
        const Real scale = grid.freq_step() / two_pi<Real>;
        for (Eigen::Index j = 0; j < n; ++j)
            out[j] *= scale * alternating_sign<Real>(j);
        return SampledSignal<Real>(grid, std::move(out), "idft(" + spectrum.label() + ")");
    }

    /// Evaluates the trigonometric interpolant of f at arbitrary positions (periodic).
    /// The Nyquist bin is split evenly between ±Ξ so real samples interpolate to real values.
    template <typename Real>
    CVector<Real> band_limited_eval(const SampledSignal<Real>& f, const RVector<Real>& positions)
    {
        const auto& grid = f.grid();
        const Eigen::Index n = grid.n();
        const SampledSignal<Real> spec = dft(f);
        const Real scale = grid.freq_step() / two_pi<Real>;
        CVector<Real> out(positions.size());
        parallel_for(positions.size(), [&](long begin, long end) {
            for (long p = begin; p < end; ++p)
            {
                const Real y = positions[p];
                Complex<Real> acc(0);
                for (Eigen::Index k = 1; k < n; ++k)
                {
                    const Real arg = y * grid.xi(k);
                    acc += spec[k] * Complex<Real>(std::cos(arg), std::sin(arg));
                }
                // Nyquist: ½ f̂(-Ξ)(e^{-iyΞ} + e^{iyΞ})
                acc += spec[0] * std::cos(y * grid.freq_max());
                out[p] = scale * acc;
            }
        });
        return out;
    }
}  // namespace gaborwf

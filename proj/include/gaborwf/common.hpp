#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gaborwf
{
    template <typename Real> using Complex = std::complex<Real>;
    template <typename Real> using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
    template <typename Real> using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    /// Row-major so that one phase-space row (fixed x) is contiguous for the FFT.
    template <typename Real>
    using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    template <typename Real>
    using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    template <typename Real> inline constexpr Real pi = std::numbers::pi_v<Real>;
    template <typename Real> inline constexpr Real two_pi = Real(2) * std::numbers::pi_v<Real>;

    /// Precondition or input-format violation.
    class InvalidArgument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Incompatible grids, lattices or partitions.
    class GridMismatch : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// An iterative solver did not reach its tolerance within the iteration cap.
    class ConvergenceError : public std::runtime_error
    {
    public:
        ConvergenceError(const std::string& what, int iterations, double residual)
            : std::runtime_error(what), iterations_(iterations), residual_(residual)
        {
        }
        int iterations() const noexcept { return iterations_; }
        double residual() const noexcept { return residual_; }

    private:
        int iterations_;
        double residual_;
    };

    /// ⟨z⟩ = (1 + |z|²)^{1/2} on the phase plane.
    template <typename Real> inline Real japanese_bracket(Real x, Real xi) noexcept
    {
        return std::sqrt(Real(1) + x * x + xi * xi);
    }

    inline bool is_power_of_two(long n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

    /// Worker count, capped by GABORWF_THREADS when set.
    inline unsigned thread_count()
    {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("GABORWF_THREADS"))
        {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap > 0)
                hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        }
        return hw;
    }

    /// Runs body(begin, end) over contiguous chunks of [0, count). Each index is
    /// visited by exactly one worker, so per-index results do not depend on the
    /// thread count.
    template <typename Body> void parallel_for(long count, Body&& body)
    {
        const long workers = std::min<long>(thread_count(), std::max<long>(count, 1));
        if (workers <= 1)
        {
            body(0L, count);
            return;
        }
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const long chunk = (count + workers - 1) / workers;
        for (long w = 0; w < workers; ++w)
        {
            const long begin = w * chunk;
            const long end = std::min(count, begin + chunk);
            if (begin >= end)
                break;
            pool.emplace_back([&body, begin, end] { body(begin, end); });
        }
        for (auto& t : pool)
            t.join();
    }

    /// Unscaled length-n DFT pair, e^{∓2πijk/n}. Not thread-safe (plan cache);
    /// use one instance per worker.
    template <typename Real> class Fft
    {
    public:
        Fft() { engine_.SetFlag(Eigen::FFT<Real>::Unscaled); }

        void forward(Complex<Real>* dst, const Complex<Real>* src, Eigen::Index n)
        {
            engine_.fwd(dst, src, n);
        }
        void inverse(Complex<Real>* dst, const Complex<Real>* src, Eigen::Index n)
        {
            engine_.inv(dst, src, n);
        }

    private:
        Eigen::FFT<Real> engine_;
    };

    /// (-1)^j
    template <typename Real> inline Real alternating_sign(Eigen::Index j) noexcept
    {
        return (j & 1) ? Real(-1) : Real(1);
    }
}  // namespace gaborwf

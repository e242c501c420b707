#pragma once

#include "gaborwf/common.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace gaborwf
{
    template <typename Real> struct CgResult
    {
        CVector<Real> x;
        int iterations = 0;
        Real relative_residual = 0;
    };

    /// Conjugate gradients for a Hermitian positive definite operator, started from zero.
    /// Stops when ‖b - Ax‖/‖b‖ ≤ tol, where the residual is recomputed explicitly
    /// before accepting convergence. Throws ConvergenceError after max_iterations.
    template <typename Real, typename Op>
    CgResult<Real> conjugate_gradient(Op&& apply, const CVector<Real>& b, Real tol, int max_iterations)
    {
        const Real bnorm = b.norm();
        CgResult<Real> result;
        result.x = CVector<Real>::Zero(b.size());
        if (bnorm == 0)
            return result;

        CVector<Real> r = b;
        CVector<Real> p = r;
        Real rr = r.squaredNorm();
        for (int it = 1; it <= max_iterations; ++it)
        {
            const CVector<Real> Ap = apply(p);
            const Real pAp = std::real(p.dot(Ap));
            if (!(pAp > 0))
            {
                std::ostringstream os;
                os << "conjugate gradient breakdown: operator not positive definite (p'Ap = " << pAp << ")";
                throw ConvergenceError(os.str(), it, std::sqrt(rr) / bnorm);
            }
            const Real alpha = rr / pAp;
            result.x += alpha * p;
            r -= alpha * Ap;
            const Real rr_new = r.squaredNorm();
            if (std::sqrt(rr_new) <= tol * bnorm)
            {
                // Guard against drift between the recursive and the true residual.
                r = b - apply(result.x);
                const Real true_res = r.norm() / bnorm;
                if (true_res <= tol)
                {
                    result.iterations = it;
                    result.relative_residual = true_res;
                    return result;
                }
                p = r;
                rr = r.squaredNorm();
                continue;
            }
            p = r + (rr_new / rr) * p;
            rr = rr_new;
        }
        std::ostringstream os;
        os << "conjugate gradient did not reach tolerance " << tol << " in " << max_iterations << " iterations";
        throw ConvergenceError(os.str(), max_iterations, std::sqrt(rr) / bnorm);
    }

    template <typename Real> struct RitzResult
    {
        Real largest = 0;
        Real smallest = 0;
        int steps = 0;
        bool converged = false;
    };

    /// Extreme eigenvalues of a Hermitian operator by Lanczos with full
    /// reorthogonalization (a Krylov-accelerated power iteration). Converged when the
    /// residual bound |β_k s_k| of both extreme Ritz pairs is ≤ rel_tol·|θ|.
    template <typename Real, typename Op>
    RitzResult<Real> lanczos_extremes(Op&& apply, const CVector<Real>& start, Real rel_tol, int max_steps)
    {
        const Eigen::Index n = start.size();
        max_steps = static_cast<int>(std::min<Eigen::Index>(max_steps, n));
        std::vector<CVector<Real>> basis;
        std::vector<Real> alpha, beta;
        basis.push_back(start.normalized());
        RitzResult<Real> res;
        for (int k = 0; k < max_steps; ++k)
        {
            CVector<Real> w = apply(basis.back());
            const Real a = std::real(basis.back().dot(w));
            alpha.push_back(a);
            // Two passes of Gram–Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis)
                    w -= q.dot(w) * q;
            const Real b = w.norm();

            const int m = k + 1;
            Eigen::Matrix<Real, Eigen::Dynamic, 1> diag(m), sub(std::max(m - 1, 1));
            for (int i = 0; i < m; ++i)
                diag[i] = alpha[static_cast<std::size_t>(i)];
            for (int i = 0; i + 1 < m; ++i)
                sub[i] = beta[static_cast<std::size_t>(i)];
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> tri;
            if (m == 1)
            {
                res.largest = res.smallest = diag[0];
                res.steps = 1;
                if (b == 0)
                {
                    res.converged = true;
                    return res;
                }
            }
            else
            {
                tri.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
                const auto& ev = tri.eigenvalues();
                const auto& vec = tri.eigenvectors();
                res.smallest = ev[0];
                res.largest = ev[m - 1];
                res.steps = m;
                const Real err_lo = std::abs(b * vec(m - 1, 0));
                const Real err_hi = std::abs(b * vec(m - 1, m - 1));
                if ((err_lo <= rel_tol * std::abs(res.smallest) && err_hi <= rel_tol * std::abs(res.largest)) ||
                    b <= std::numeric_limits<Real>::epsilon() * std::abs(res.largest))
                {
                    res.converged = true;
                    return res;
                }
            }
            beta.push_back(b);
            basis.push_back(w / b);
        }
        return res;
    }
}  // namespace gaborwf

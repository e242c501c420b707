#include "gaborwf/gabor.hpp"

#include <doctest.h>

using namespace gaborwf;

namespace
{
    /// Dense frame operator from the Walnut representation: S(j, j') vanishes unless
    /// (n/b) divides j - j', and otherwise equals Δx (n/b) (-1)^{j-j'} Σ_m φ(j - ma) conj φ(j' - ma).
    Eigen::MatrixXcd walnut_matrix(const Window<double>& phi, const Lattice<double>& lat)
    {
        const Eigen::Index n = lat.grid.n();
        const Eigen::Index period = n / lat.b;
        const auto& w = phi.signal().values();
        auto at = [&](Eigen::Index j, Eigen::Index shift) { return w[((j - shift + n / 2) % n + n) % n]; };
        Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index jp = 0; jp < n; ++jp)
            {
                const Eigen::Index d = j - jp;
                if (((d % period) + period) % period != 0)
                    continue;
                Complex<double> acc = 0;
                for (Eigen::Index t = 0; t < lat.n_time(); ++t)
                    acc += at(j, t * lat.a) * std::conj(at(jp, t * lat.a));
                const double sign = (((d % 2) + 2) % 2) ? -1.0 : 1.0;
                S(j, jp) = lat.grid.dx() * double(period) * sign * acc;
            }
        return S;
    }

    Eigen::MatrixXcd frame_matrix(const Window<double>& phi, const Lattice<double>& lat)
    {
        const Eigen::Index n = lat.grid.n();
        Eigen::MatrixXcd S(n, n);
        for (Eigen::Index c = 0; c < n; ++c)
        {
            CVector<double> e = CVector<double>::Zero(n);
            e[c] = 1;
            S.col(c) = frame_operator_apply(SampledSignal<double>(lat.grid, e), phi, lat).values();
        }
        return S;
    }
}  // namespace

TEST_CASE("lattice snapping")
{
    const auto g = make_grid<double>(1024, 64.0);
    const auto lat = make_lattice_for_density<double>(pi<double> / 2, g);
    CHECK(lat.a == 16);
    CHECK(lat.b == 16);
    CHECK(lat.alpha() == doctest::Approx(1.0));
    CHECK(lat.beta() == doctest::Approx(pi<double> / 2));
    CHECK(lat.n_time() == 64);

    const auto crit = make_lattice<double>(2.0, pi<double>, g);
    CHECK(crit.alpha() * crit.beta() == doctest::Approx(2 * pi<double>));

    CHECK_THROWS_AS(make_lattice<double>(4.0, 2.0, g), InvalidArgument);  // 8 > 2π before snapping
    CHECK_THROWS_AS(make_lattice<double>(-1.0, 1.0, g), InvalidArgument);
    CHECK_THROWS_AS(make_lattice<double>(g.dx() / 4, 1.0, g), InvalidArgument);
    CHECK_THROWS_AS(make_lattice_for_density<double>(7.0, g), InvalidArgument);
}

TEST_CASE("gabor coefficients are stft samples at lattice points")
{
    const auto g = make_grid<double>(256, 32.0);
    const auto phi = gaussian_window(g);
    const auto u = synthesize(SignalKind{kinds::Chirp{1}}, g);
    const auto lat = make_lattice<double>(0.5, pi<double> / 4, g);
    const auto c = gabor_analysis(u, phi, lat);
    const auto V = stft(u, phi);
    CHECK((c.values - subsample(V.values, lat.a, lat.b)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("synthesis is the adjoint of analysis")
{
    const auto g = make_grid<double>(128, 16.0);
    const auto phi = hermite_window(g, 1);
    const auto lat = make_lattice<double>(0.5, pi<double> / 2, g);
    const auto f = synthesize(SignalKind{kinds::Gaussian{1.0, 3.0}}, g);
    CMatrix<double> c(lat.n_time(), lat.n_freq());
    for (Eigen::Index j = 0; j < c.rows(); ++j)
        for (Eigen::Index l = 0; l < c.cols(); ++l)
            c(j, l) = Complex<double>(std::sin(double(j + 2 * l)), std::cos(double(3 * j - l)));
    const GaborCoefficients<double> coeffs{lat, c, ""};
    // (T c, f) = (c, C f) with the plain ℓ² pairing on coefficients and Δx Σ on signals.
    const Complex<double> lhs = gabor_synthesis(coeffs, phi, lat).values().dot(f.values()) * g.dx();
    const Complex<double> rhs = gabor_analysis(f, phi, lat).values.reshaped().dot(c.reshaped());
    CHECK(std::abs(std::conj(lhs) - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("frame operator matches the Walnut representation")
{
    const auto g = make_grid<double>(64, 16.0);
    const auto phi = gaussian_window(g);
    for (const auto& lat : {make_lattice<double>(1.0, pi<double> / 2, g), make_lattice<double>(0.5, pi<double>, g),
                            make_lattice<double>(2.0, pi<double>, g)})
    {
        const Eigen::MatrixXcd S = frame_matrix(phi, lat);
        const Eigen::MatrixXcd ref = walnut_matrix(phi, lat);
        CHECK((S - ref).cwiseAbs().maxCoeff() < 1e-12 * ref.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("frame on the full phase grid is n times the identity")
{
    const auto g = make_grid<double>(64, 16.0);
    const auto lat = make_lattice<double>(g.dx(), g.freq_step(), g);
    const Eigen::MatrixXcd S = frame_matrix(gaussian_window(g), lat);
    CHECK((S - 64.0 * Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("frame bounds agree with a dense eigensolver")
{
    const auto g = make_grid<double>(64, 16.0);
    const auto phi = gaussian_window(g);
    for (const auto& lat : {make_lattice<double>(1.0, pi<double> / 2, g), make_lattice<double>(2.0, pi<double> / 2, g)})
    {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(walnut_matrix(phi, lat));
        const auto fb = frame_bounds(phi, lat);
        CHECK(fb.is_frame());
        CHECK(fb.upper == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-6));
        CHECK(fb.lower == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-6));
    }
}

TEST_CASE("dual window")
{
    const auto g = make_grid<double>(256, 32.0);
    const auto phi = gaussian_window(g);
    const auto lat = make_lattice_for_density<double>(pi<double> / 2, g);
    const auto dual = dual_window(phi, lat);
    CHECK(dual.relative_residual <= 1e-12);
    CHECK(relative_error(frame_operator_apply(dual.window.signal(), phi, lat), phi.signal()) < 1e-11);

    const auto f = synthesize(SignalKind{kinds::Chirp{0.5}}, g);
    CHECK(relative_error(gabor_synthesis(gabor_analysis(f, phi, lat), dual.window, lat), f) < 1e-10);
    CHECK(relative_error(gabor_synthesis(gabor_analysis(f, dual.window, lat), phi, lat), f) < 1e-10);
}

TEST_CASE("frame inequality on random signals")
{
    const auto g = make_grid<double>(128, 16.0);
    const auto phi = gaussian_window(g);
    const auto lat = make_lattice<double>(1.0, pi<double> / 2, g);
    const auto fb = frame_bounds(phi, lat);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 10; ++trial)
    {
        CVector<double> v(g.n());
        for (auto& z : v)
            z = {normal(rng), normal(rng)};
        const SampledSignal<double> f(g, v);
        const double energy = coefficient_energy(gabor_analysis(f, phi, lat));
        const double norm2 = std::pow(l2_norm(f), 2);
        CHECK(energy >= fb.lower * norm2 * (1 - 1e-6));
        CHECK(energy <= fb.upper * norm2 * (1 + 1e-6));
    }
}

TEST_CASE("modulation norms")
{
    const auto g = make_grid<double>(256, 32.0);
    const auto phi = gaussian_window(g);
    const auto lat = make_lattice<double>(1.0, pi<double> / 2, g);
    const auto u = synthesize(SignalKind{kinds::Hermite{2}}, g);
    const auto c = gabor_analysis(u, phi, lat);
    CHECK(modulation_norm(u, phi, lat, 2, 2, 0.0) == doctest::Approx(std::sqrt(coefficient_energy(c))));
    CHECK(modulation_norm(u, phi, lat, infinity_exponent, infinity_exponent, 0.0) ==
          doctest::Approx(c.values.cwiseAbs().maxCoeff()));
    CHECK(modulation_norm(u, phi, lat, 1, 1, 0.0) == doctest::Approx(c.values.cwiseAbs().sum()));
    // Weights only increase the norm.
    CHECK(modulation_norm(u, phi, lat, 2, 1, 2.0) > modulation_norm(u, phi, lat, 2, 1, 0.0));
    CHECK_THROWS_AS(modulation_norm(u, phi, lat, 3, 2, 0.0), InvalidArgument);
}

TEST_CASE("conjugate gradients and lanczos on a dense matrix")
{
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Random(40, 40);
    M = M.adjoint() * M + 0.5 * Eigen::MatrixXcd::Identity(40, 40);
    auto apply = [&](const CVector<double>& v) { return CVector<double>(M * v); };
    const CVector<double> b = CVector<double>::Random(40);
    const auto cg = conjugate_gradient<double>(apply, b, 1e-12, 400);
    CHECK((M * cg.x - b).norm() <= 1e-12 * b.norm());
    CHECK(cg.relative_residual <= 1e-12);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    const auto r = lanczos_extremes<double>(apply, CVector<double>::Ones(40), 1e-10, 40);
    CHECK(r.converged);
    CHECK(r.largest == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-8));
    CHECK(r.smallest == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-8));

    Eigen::MatrixXcd indefinite = M - 1000.0 * Eigen::MatrixXcd::Identity(40, 40);
    auto bad = [&](const CVector<double>& v) { return CVector<double>(indefinite * v); };
    CHECK_THROWS_AS(conjugate_gradient<double>(bad, b, 1e-12, 400), ConvergenceError);
}

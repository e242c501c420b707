#include "gaborwf/io.hpp"
#include "gaborwf/synthesis.hpp"

#include <doctest.h>

#include <sstream>

using namespace gaborwf;

TEST_CASE("grid geometry")
{
    const auto g = make_grid<double>(1024, 64.0);
    CHECK(g.dx() == doctest::Approx(0.0625));
    CHECK(g.freq_step() == doctest::Approx(2 * pi<double> / 64));
    CHECK(g.freq_max() == doctest::Approx(pi<double> * 16));
    CHECK(g.x(0) == -32.0);
    CHECK(g.x(512) == 0.0);
    CHECK(g.xi(512) == 0.0);
    CHECK(g.xi(0) == doctest::Approx(-g.freq_max()));

    CHECK_THROWS_AS(make_grid<double>(1000, 64.0), InvalidArgument);
    CHECK_THROWS_AS(make_grid<double>(8, 64.0), InvalidArgument);
    CHECK_THROWS_AS(make_grid<double>(64, 0.0), InvalidArgument);
}

TEST_CASE("signals reject wrong sizes and non-finite samples")
{
    const auto g = make_grid<double>(64, 16.0);
    CHECK_THROWS_AS(SampledSignal<double>(g, CVector<double>::Zero(32)), InvalidArgument);
    CVector<double> v = CVector<double>::Zero(64);
    v[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SampledSignal<double>(g, v), InvalidArgument);
    const auto other = make_grid<double>(64, 8.0);
    CHECK_THROWS_AS(inner(SampledSignal<double>::zeros(g), SampledSignal<double>::zeros(other)), GridMismatch);
}

TEST_CASE("dft of a gaussian is the analytic transform")
{
    // ∫ e^{-x²/2} e^{-ixξ} dx = √(2π) e^{-ξ²/2}
    const auto g = make_grid<double>(256, 32.0);
    CVector<double> v(g.n());
    for (Eigen::Index j = 0; j < g.n(); ++j)
        v[j] = std::exp(-g.x(j) * g.x(j) / 2);
    const auto F = dft(SampledSignal<double>(g, v));
    double err = 0;
    for (Eigen::Index k = 0; k < g.n(); ++k)
        err = std::max(err, std::abs(F[k] - std::sqrt(2 * pi<double>) * std::exp(-g.xi(k) * g.xi(k) / 2)));
    CHECK(err < 1e-12);

    const auto back = inverse_dft(F);
    CHECK(relative_error(back, SampledSignal<double>(g, v)) < 1e-14);
}

TEST_CASE("dft is unitary up to 2π")
{
    // Δξ Σ|F|² = 2π Δx Σ|f|²
    const auto g = make_grid<double>(128, 10.0);
    const auto f = synthesize(SignalKind{kinds::Gaussian{1.0, 2.0}}, g);
    const auto F = dft(f);
    const double lhs = g.freq_step() * F.values().squaredNorm();
    CHECK(lhs == doctest::Approx(2 * pi<double> * std::pow(l2_norm(f), 2)).epsilon(1e-12));
}

TEST_CASE("band-limited evaluation interpolates grid samples and shifted exponentials")
{
    const auto g = make_grid<double>(64, 16.0);
    const double xi0 = 5 * g.freq_step();
    const auto u = synthesize(SignalKind{kinds::PlaneWave{xi0}}, g);
    RVector<double> ys(4);
    ys << g.x(7), 0.123, -3.3, 7.9;
    const CVector<double> vals = band_limited_eval(u, ys);
    for (Eigen::Index i = 0; i < ys.size(); ++i)
        CHECK(std::abs(vals[i] - std::polar(1.0, xi0 * ys[i])) < 1e-12);
}

TEST_CASE("synthesized kinds")
{
    const auto g = make_grid<double>(1024, 64.0);

    const auto d = synthesize(SignalKind{kinds::Delta{0}}, g);
    CHECK(d[512].real() == doctest::Approx(1 / g.dx()));
    CHECK(d.values().cwiseAbs().sum() * g.dx() == doctest::Approx(1.0));
    CHECK_THROWS_AS(synthesize(SignalKind{kinds::Delta{32.0}}, g), InvalidArgument);

    CHECK_THROWS_AS(synthesize(SignalKind{kinds::PlaneWave{g.freq_max()}}, g), InvalidArgument);

    try
    {
        synthesize(SignalKind{kinds::Chirp{0}}, g);
        FAIL("chirp with c = 0 accepted");
    }
    catch (const InvalidArgument& e)
    {
        CHECK(std::string(e.what()).find("c != 0") != std::string::npos);
    }

    const auto ch = synthesize(SignalKind{kinds::Chirp{-2}}, g);
    CHECK(std::abs(ch[700] - std::polar(1.0, -g.x(700) * g.x(700))) < 1e-12);

    CHECK_THROWS_AS(synthesize(SignalKind{kinds::Hermite{-1}}, g), InvalidArgument);
}

TEST_CASE("hermite functions are orthonormal")
{
    const auto g = make_grid<double>(1024, 64.0);
    std::vector<SampledSignal<double>> h;
    for (int k = 0; k < 6; ++k)
        h.push_back(synthesize(SignalKind{kinds::Hermite{k}}, g));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            CHECK(std::abs(inner(h[a], h[b]) - (a == b ? 1.0 : 0.0)) < 1e-12);
    // h_1(x) = √2 π^{-1/4} x e^{-x²/2}
    const double x = g.x(540);
    CHECK(h[1][540].real() == doctest::Approx(std::sqrt(2.0) * std::pow(pi<double>, -0.25) * x * std::exp(-x * x / 2)));
}

TEST_CASE("phase shifts")
{
    const auto g = make_grid<double>(256, 32.0);
    const auto base = synthesize(SignalKind{kinds::Gaussian{}}, g);

    SUBCASE("grid-aligned translation is an exact roll")
    {
        const auto s = phase_shift(base, 8 * g.dx(), 0.0);
        for (Eigen::Index j = 0; j < g.n(); ++j)
            CHECK(s[(j + 8) % g.n()] == base[j]);
    }
    SUBCASE("off-grid translation matches the analytic gaussian")
    {
        const double x0 = 1.37, xi0 = 2.0;
        const auto s = phase_shift(base, x0, xi0);
        const auto ref = synthesize(SignalKind{kinds::Gaussian{x0, xi0}}, g);
        CHECK(relative_error(s, ref) < 1e-10);
    }
    SUBCASE("phase_shifted kind composes with synthesis")
    {
        const auto s = synthesize(phase_shifted(SignalKind{kinds::Gaussian{}}, 2.0, 0.5), g);
        CHECK(relative_error(s, synthesize(SignalKind{kinds::Gaussian{2.0, 0.5}}, g)) < 1e-10);
    }
}

TEST_CASE("windows are normalized")
{
    const auto g = make_grid<double>(1024, 64.0);
    CHECK(gaussian_window(g).normalized());
    CHECK(l2_norm(hermite_window(g, 2).signal()) == doctest::Approx(1.0).epsilon(1e-14));
    const Window<double> raw(SampledSignal<double>(g, 2 * gaussian_window(g).signal().values()));
    CHECK_FALSE(raw.normalized());
}

TEST_CASE("signal csv round trip is exact")
{
    const auto g = make_grid<double>(64, 16.0);
    const auto u = synthesize(SignalKind{kinds::Chirp{0.7}}, g);
    std::stringstream ss;
    write_signal_csv(ss, u);
    const std::string text = ss.str();
    CHECK(text.rfind("# gabor-wf signal v1, 64, 16, chirp", 0) == 0);
    const auto v = read_signal_csv(ss);
    CHECK(v.grid() == g);
    CHECK(v.values() == u.values());
}

TEST_CASE("malformed signal files are rejected")
{
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_signal_csv(in);
    };
    CHECK_THROWS_AS(parse("not a header\n"), IoError);
    CHECK_THROWS_AS(parse("# gabor-wf signal v1, 16, 4, x\n0,1,0\n"), IoError);
    std::string dup = "# gabor-wf signal v1, 16, 4, x\n";
    for (int i = 0; i < 16; ++i)
        dup += std::to_string(i == 15 ? 0 : i) + ",1,0\n";
    CHECK_THROWS_AS(parse(dup), IoError);
}

#include "gaborwf/microlocal.hpp"
#include "gaborwf/phase_kernel.hpp"
#include "gaborwf/symbols.hpp"

#include <doctest.h>

using namespace gaborwf;

namespace
{
    SampledSymbol<double> sampled(const SymbolSpec& s, const Grid<double>& g, int refine = 2)
    {
        return sample_symbol<double>(s.function, g, s.order, s.name, refine);
    }
}  // namespace

TEST_CASE("symbol parsing")
{
    const double L = 64, Xi = 16 * pi<double>;
    CHECK(parse_symbol("one", L, Xi).function(3, 4) == std::complex<double>(1));
    CHECK(parse_symbol("x", L, Xi).order == 1);
    CHECK(parse_symbol("elliptic", L, Xi).function(3, 4) == std::complex<double>(25));
    CHECK(parse_symbol("cone:0,45", L, Xi).name == "cone:0,45");
    const auto sum = parse_symbol("cone:20,70+cone:200,250", L, Xi);
    CHECK(sum.name == "cone:20,70+cone:200,250");
    CHECK(sum.function(10, 10).real() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(sum.function(-10, -10).real() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(parse_symbol("", L, Xi), InvalidArgument);
    CHECK_THROWS_AS(parse_symbol("bogus", L, Xi), InvalidArgument);
    CHECK_THROWS_AS(parse_symbol("cone:45", L, Xi), InvalidArgument);
    CHECK_THROWS_AS(parse_symbol("cone:45,10", L, Xi), InvalidArgument);
    CHECK_THROWS_AS(parse_symbol("cone:a,10", L, Xi), InvalidArgument);
}

TEST_CASE("cone cutoffs")
{
    const double L = 64, Xi = 16 * pi<double>;
    const auto c = cone_cutoff(0, 45, L, Xi);
    auto at = [&](double r, double deg) {
        const double t = deg * pi<double> / 180;
        return c.function(r * std::cos(t), r * std::sin(t)).real();
    };
    // The erf edges (width 8°) leave 1 - erf(22.5/8) short of 1 at the middle of a 45° cone.
    CHECK(at(15, 22.5) == doctest::Approx(std::erf(22.5 / 8)).epsilon(1e-6));
    CHECK(std::abs(at(15, 180)) < 1e-12);
    CHECK(std::abs(at(15, 90)) < 1e-9);
    CHECK(std::abs(at(1, 22.5)) < 1e-9);  // inside the transition radius
    CHECK(at(15, 0) == doctest::Approx(0.5).epsilon(1e-6));
    // Periodized in angle: a cone across 0° is handled.
    const auto wrap = cone_cutoff(-30, 30, L, Xi);
    CHECK(wrap.function(15 * std::cos(-0.1), 15 * std::sin(-0.1)).real() == doctest::Approx(1.0).epsilon(1e-4));
    // The taper brings everything to zero near the edges of the periodic phase domain.
    CHECK(std::abs(c.function(31.9, 31.9)) < 1e-5);

    const auto v = cone_vanishing(-90, 90, L, Xi);
    CHECK(std::abs(v.function(15, 0)) < 1e-9);
    CHECK(v.function(-15, 0).real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cone support and characteristic sets")
{
    const auto g = make_grid<double>(1024, 64.0);
    const SectorPartition p(72);
    const auto rad = RadialConfig::defaults_for(g);
    const auto a = sampled(cone_cutoff(0, 45, g.length(), g.freq_max()), g, 1);
    const SectorSet supp = conesupp_estimate(a, p, rad);
    CHECK(supp.contains(4));
    CHECK_FALSE(supp.contains(36));
    CHECK_FALSE(supp.contains(20));
    const SectorSet chr = char_estimate(a, p, rad, 1e-3);
    CHECK(chr.contains(36));
    CHECK_FALSE(chr.contains(4));
    CHECK(char_estimate(sampled(symbol_one(), g, 1), p, rad, 0.5).empty());
    CHECK_THROWS_AS(sample_symbol<double>(symbol_one().function, g, 0, "one", 3), InvalidArgument);
}

TEST_CASE("weyl quantization of polynomial symbols")
{
    const auto g = make_grid<double>(256, 32.0);
    const auto u = synthesize(SignalKind{kinds::Gaussian{0.5, 1.0}}, g);

    SUBCASE("a = 1 is the identity")
    {
        CHECK(relative_error(weyl_apply(sampled(symbol_one(), g), u), u) < 1e-12);
    }
    SUBCASE("a = x multiplies by x")
    {
        CVector<double> ref(g.n());
        for (Eigen::Index j = 0; j < g.n(); ++j)
            ref[j] = g.x(j) * u[j];
        CHECK(relative_error(weyl_apply(sampled(symbol_x(), g), u), SampledSignal<double>(g, ref)) < 1e-12);
    }
    SUBCASE("a = xi differentiates")
    {
        // D u = -i u' with u = π^{-1/4} e^{ixξ0} e^{-(x-x0)²/2}: u' = (iξ0 - (x - x0)) u.
        CVector<double> ref(g.n());
        for (Eigen::Index j = 0; j < g.n(); ++j)
            ref[j] = Complex<double>(0, -1) * (Complex<double>(-(g.x(j) - 0.5), 1.0) * u[j]);
        CHECK(relative_error(weyl_apply(sampled(symbol_xi(), g), u), SampledSignal<double>(g, ref)) < 1e-10);
    }
    SUBCASE("a = x² + ξ² is the harmonic oscillator")
    {
        const auto h = synthesize(SignalKind{kinds::Hermite{3}}, g);
        const auto v = weyl_apply(sampled(symbol_elliptic(), g), h);
        CHECK(relative_error(v, SampledSignal<double>(g, 7.0 * h.values())) < 1e-9);
    }
    SUBCASE("refinement is required")
    {
        CHECK_THROWS_AS(weyl_apply(sampled(symbol_one(), g, 1), u), InvalidArgument);
    }
}

TEST_CASE("real symbols give self-adjoint operators")
{
    const auto g = make_grid<double>(128, 16.0);
    const WeylOperator<double> op(sampled(cone_cutoff(20, 70, g.length(), g.freq_max()), g));
    const auto& K = op.kernel();
    CHECK((K - K.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * K.cwiseAbs().maxCoeff());
}

TEST_CASE("localization operators")
{
    const auto g = make_grid<double>(256, 32.0);
    const auto phi = gaussian_window(g);
    const auto u = synthesize(SignalKind{kinds::Chirp{1}}, g);
    CHECK(relative_error(localization_apply(sampled(symbol_one(), g, 1), phi, u), u) < 1e-12);
    // A positive mask gives a positive operator.
    const auto b = sampled(cone_cutoff(0, 90, g.length(), g.freq_max()), g, 1);
    const auto v = localization_apply(b, phi, u);
    CHECK(inner(v, u).real() > 0);
    CHECK(std::abs(inner(v, u).imag()) < 1e-12 * std::abs(inner(v, u)));
    CHECK_THROWS_AS(localization_apply(sampled(symbol_one(), g, 2), phi, u), InvalidArgument);
    const SymbolSpec zero{"zero", [](double, double) { return std::complex<double>(0); }, 0};
    CHECK(localization_apply(sampled(zero, g, 1), phi, u).values().isZero());
}

TEST_CASE("localizing away from the wave front set leaves a smooth signal")
{
    const auto g = make_grid<double>(1024, 64.0);
    const auto phi = gaussian_window(g);
    const auto u = synthesize(SignalKind{kinds::Chirp{1}}, g);
    const auto b = sampled(cone_cutoff(110, 160, g.length(), g.freq_max()), g, 1);
    const auto v = localization_apply(b, phi, u);
    const SectorPartition p(72);
    const auto rad = RadialConfig::defaults_for(g);
    // Floor referenced to the input so that pure roundoff is not rescaled into a signal.
    const double ref = stft(u, phi).values.cwiseAbs().maxCoeff();
    CHECK(wavefront_stft(v, phi, p, rad, 4.0, ref).singular.empty());
}

TEST_CASE("phase-space kernel of the identity is the reproducing kernel")
{
    // K(z'; z) = (2π)^{-1} V_φ(Π(z)φ)(z'), with |V_φ(Π(z)φ)(z')| = e^{-|z'-z|²/4} for the gaussian.
    const auto g = make_grid<double>(256, 32.0);
    const auto phi = gaussian_window(g);
    const WeylOperator<double> op(sampled(symbol_one(), g));
    const auto K = phase_kernel(op, phi, 16);
    CHECK(K.nc == 16);
    double err = 0;
    for (Eigen::Index p1 = 5; p1 < 11; ++p1)
        for (Eigen::Index q1 = 5; q1 < 11; ++q1)
            for (Eigen::Index p = 6; p < 10; ++p)
                for (Eigen::Index q = 6; q < 10; ++q)
                {
                    const double dx = K.x(p1) - K.x(p), dxi = K.xi(q1) - K.xi(q);
                    const double ref = std::exp(-(dx * dx + dxi * dxi) / 4) / (2 * pi<double>);
                    err = std::max(err, std::abs(std::abs(K.at(p1, q1, p, q)) - ref));
                }
    CHECK(err < 1e-10);
    CHECK_THROWS_AS(phase_kernel(op, phi, 16, 1000), InvalidArgument);
    CHECK_THROWS_AS(phase_kernel(op, phi, 3), InvalidArgument);
}

TEST_CASE("kernel probes fit power laws")
{
    std::vector<double> maxima;
    for (int h = 0; h < 8; ++h)
    {
        const double r = 4 * std::pow(25.6 / 4, (h + 0.5) / 8);
        maxima.push_back(std::pow(r, -7.0));
    }
    const auto probe = detail::fit_probe(maxima, 4, 25.6, 8, 0);
    CHECK(probe.fitted_shells == 8);
    CHECK(probe.slope == doctest::Approx(-7.0));
}

TEST_CASE("microlocality check on a cone cutoff")
{
    const auto g = make_grid<double>(1024, 64.0);
    const auto rad = RadialConfig::defaults_for(g);
    const MicrolocalConfig<double> cfg{gaussian_window(g), SectorPartition(72), rad, 4.0, 1};
    const auto u = synthesize(SignalKind{kinds::Chirp{1}}, g);

    const auto id = microlocality_check(sampled(symbol_one(), g), u, cfg);
    CHECK(id.verdict == SetRelation::equal);
    CHECK(id.lhs == id.wf_u);

    const auto a = sampled(cone_cutoff(20, 70, g.length(), g.freq_max()), g);
    const auto rep = microlocality_check(a, u, cfg);
    CHECK(rep.holds());
    CHECK_FALSE(rep.lhs.empty());
    CHECK(rep.lhs.is_subset_of(rep.rhs.dilate(1)));

    const auto off = sampled(cone_cutoff(110, 160, g.length(), g.freq_max()), g);
    const auto rep_off = microlocality_check(off, u, cfg);
    CHECK(rep_off.rhs.empty());
    CHECK(rep_off.lhs.empty());

    CHECK_THROWS_AS(microlocality_check(sampled(symbol_x(), g), u, cfg), InvalidArgument);
}

#include "gaborwf/config.hpp"
#include "gaborwf/io.hpp"
#include "gaborwf/verify.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace gaborwf;

TEST_CASE("config defaults and overrides")
{
    const Config d;
    CHECK(d.n == 1024);
    CHECK(d.length == 64.0);
    CHECK(d.k_sectors == 72);
    CHECK(d.alpha_beta == doctest::Approx(pi<double> / 2));
    CHECK(d.radial().r_max == doctest::Approx(25.6));

    const Config c = parse_config("# comment\nn = 512\nL=32  # trailing\n\nK = 36\nr_max = auto\nalpha_beta = 1.0\n");
    CHECK(c.n == 512);
    CHECK(c.length == 32.0);
    CHECK(c.k_sectors == 36);
    CHECK_FALSE(c.r_max.has_value());
    CHECK(c.alpha_beta == 1.0);

    CHECK_THROWS_AS(parse_config("bogus = 1\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("n 1024\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("n = ten\n"), InvalidArgument);
}

TEST_CASE("shipped defaults file matches the built-in defaults")
{
    const Config c = load_config(GABORWF_SOURCE_DIR "/config/defaults.toml");
    const Config d;
    CHECK(c.n == d.n);
    CHECK(c.length == d.length);
    CHECK(c.k_sectors == d.k_sectors);
    CHECK(c.n_thr == d.n_thr);
    CHECK(c.alpha_beta == doctest::Approx(d.alpha_beta).epsilon(1e-15));
    CHECK(c.cg_tol == d.cg_tol);
}

TEST_CASE("json reports")
{
    const auto g = make_grid<double>(1024, 64.0);
    const auto est = wavefront_stft(synthesize(SignalKind{kinds::Delta{0}}, g), gaussian_window(g),
                                    SectorPartition(72), RadialConfig::defaults_for(g), 4.0);
    const Json j = wavefront_json(est);
    CHECK(j["K"] == 72);
    CHECK(j["singular"].size() == est.singular.size());
    CHECK(j["sectors"].size() == 72);
    // Floor-hit sectors have infinite σ, which is written as null.
    bool saw_null = false;
    for (const auto& s : j["sectors"])
        saw_null = saw_null || s["sigma"].is_null();
    CHECK(saw_null);
    CHECK(dump(j) == dump(wavefront_json(est)));
    CHECK(dump(j).back() == '\n');
}

TEST_CASE("pgm heatmap")
{
    const auto g = make_grid<double>(64, 16.0);
    const auto V = stft(synthesize(SignalKind{kinds::Gaussian{}}, g), gaussian_window(g));
    const auto path = std::filesystem::temp_directory_path() / "gaborwf_test.pgm";
    write_stft_pgm(path.string(), V);
    std::ifstream in(path, std::ios::binary);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == 64);
    CHECK(h == 64);
    CHECK(maxval == 65535);
    CHECK(std::filesystem::file_size(path) > 64u * 64u * 2u);
    CHECK(std::filesystem::exists(path.string() + ".json"));
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".json");
}

TEST_CASE("unknown suite")
{
    CHECK(suite_names().size() == 5);
    CHECK_THROWS_AS(run_suite("nope", Config{}), InvalidArgument);
}

TEST_CASE("inversion suite passes and reports deterministically")
{
    const auto a = run_suite("inversion", Config{});
    const auto b = run_suite("inversion", Config{});
    CHECK(a.passed());
    CHECK(dump(a.to_json()) == dump(b.to_json()));
}

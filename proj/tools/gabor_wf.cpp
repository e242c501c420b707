// gabor-wf: synthesize signals, estimate Gabor wave front sets, apply operators and
// run the verification suites.

#include "gaborwf/gaborwf.hpp"
#include "gaborwf/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

using namespace gaborwf;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_usage = 1;
    constexpr int exit_failed = 2;

    struct Globals
    {
        std::string config_path;
        bool timestamp = false;

        Config load() const { return config_path.empty() ? Config{} : load_config(config_path); }
    };

    std::string utc_now()
    {
        const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        return buf;
    }

    void stamp(Json& j, const Globals& g)
    {
        if (g.timestamp)
            j["generated_at"] = utc_now();
    }

    /// Adopts the signal's grid so derived defaults (radial range) follow the input.
    Config config_for(const Globals& g, const Grid<double>& grid)
    {
        Config cfg = g.load();
        cfg.n = grid.n();
        cfg.length = grid.length();
        return cfg;
    }

    Window<double> parse_window(const std::string& spec, const Grid<double>& grid)
    {
        if (spec == "gaussian")
            return gaussian_window(grid);
        if (spec.rfind("hermite", 0) == 0 && spec.size() > 7)
        {
            std::size_t used = 0;
            const int order = std::stoi(spec.substr(7), &used);
            if (used == spec.size() - 7)
                return hermite_window(grid, order);
        }
        throw InvalidArgument("unknown window '" + spec + "' (expected gaussian or hermiteK, e.g. hermite2)");
    }

    // ---- synthesize ---------------------------------------------------------------

    struct SynthesizeArgs
    {
        std::string kind;
        double c = 1, x0 = 0, xi0 = 0;
        int order = 0;
        std::optional<long> n;
        std::optional<double> length;
        double shift_x = 0, shift_xi = 0;
        std::string out;
    };

    int cmd_synthesize(const SynthesizeArgs& a, const Globals& g)
    {
        Config cfg = g.load();
        if (a.n)
            cfg.n = *a.n;
        if (a.length)
            cfg.length = *a.length;
        const Grid<double> grid = cfg.grid();
        SignalKind kind;
        if (a.kind == "delta")
            kind = kinds::Delta{a.x0};
        else if (a.kind == "plane_wave")
            kind = kinds::PlaneWave{a.xi0};
        else if (a.kind == "chirp")
            kind = kinds::Chirp{a.c};
        else if (a.kind == "gaussian")
            kind = kinds::Gaussian{a.x0, a.xi0};
        else if (a.kind == "hermite")
            kind = kinds::Hermite{a.order};
        else
            throw InvalidArgument("unknown kind '" + a.kind + "'");
        if (a.shift_x != 0 || a.shift_xi != 0)
            kind = phase_shifted(kind, a.shift_x, a.shift_xi);
        write_signal_csv(a.out, synthesize(kind, grid));
        return exit_ok;
    }

    // ---- wavefront ----------------------------------------------------------------

    struct WavefrontArgs
    {
        std::string input;
        std::string mode = "stft";
        std::string window = "gaussian";
        std::optional<int> k;
        std::optional<double> n_thr;
        std::string out, pgm, rays;
    };

    int cmd_wavefront(const WavefrontArgs& a, const Globals& g)
    {
        const SampledSignal<double> u = read_signal_csv(a.input);
        Config cfg = config_for(g, u.grid());
        if (a.k)
            cfg.k_sectors = *a.k;
        if (a.n_thr)
            cfg.n_thr = *a.n_thr;
        const Window<double> phi = parse_window(a.window, u.grid());
        const SectorPartition part = cfg.partition();
        const RadialConfig rad = cfg.radial();

        WaveFrontEstimate est;
        Json lattice;
        if (a.mode == "stft")
            est = wavefront_stft(u, phi, part, rad, cfg.n_thr);
        else if (a.mode == "gabor")
        {
            const auto lat = make_lattice_for_density(cfg.alpha_beta, u.grid());
            est = wavefront_gabor(u, phi, lat, part, rad, cfg.n_thr);
            lattice = {{"alpha", lat.alpha()}, {"beta", lat.beta()}};
        }
        else
            throw InvalidArgument("unknown mode '" + a.mode + "' (expected stft or gabor)");

        Json j = wavefront_json(est);
        j["mode"] = a.mode;
        if (!lattice.is_null())
            j["lattice"] = lattice;
        stamp(j, g);
        if (a.out.empty())
            std::cout << dump(j);
        else
            write_text(a.out, dump(j));
        if (!a.pgm.empty())
            write_stft_pgm(a.pgm, stft(u, phi));
        if (!a.rays.empty())
            write_rays_csv(a.rays, est.profile);
        return exit_ok;
    }

    // ---- apply --------------------------------------------------------------------

    struct ApplyArgs
    {
        std::string input;
        std::string weyl, localize;
        std::string window = "gaussian";
        std::string out;
    };

    int cmd_apply(const ApplyArgs& a, const Globals& g)
    {
        if (a.weyl.empty() == a.localize.empty())
            throw CLI::ValidationError("apply", "exactly one of --weyl SYMBOL or --localize SYMBOL is required");
        const SampledSignal<double> u = read_signal_csv(a.input);
        const Grid<double>& grid = u.grid();
        (void)config_for(g, grid);
        const std::string& text = a.weyl.empty() ? a.localize : a.weyl;
        const SymbolSpec spec = parse_symbol(text, grid.length(), grid.freq_max());
        SampledSignal<double> v = u;
        if (!a.weyl.empty())
            v = weyl_apply(sample_symbol<double>(spec.function, grid, spec.order, spec.name, 2), u);
        else
            v = localization_apply(sample_symbol<double>(spec.function, grid, spec.order, spec.name, 1),
                                   parse_window(a.window, grid), u);
        write_signal_csv(a.out, v);
        return exit_ok;
    }

    // ---- verify -------------------------------------------------------------------

    struct VerifyArgs
    {
        std::string suite;
        std::optional<double> alpha_beta_product;
        std::string out;
    };

    std::string format_value(double v)
    {
        if (std::isnan(v))
            return "-";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", v);
        return buf;
    }

    int cmd_verify(const VerifyArgs& a, const Globals& g)
    {
        const Config cfg = g.load();
        VerifyOptions opts;
        opts.alpha_beta_product = a.alpha_beta_product;
        std::vector<std::string> suites;
        if (a.suite == "all")
            suites = suite_names();
        else
            suites = {a.suite};

        Json reports = Json::array();
        bool ok = true;
        for (const auto& name : suites)
        {
            const SuiteReport rep = run_suite(name, cfg, opts);
            for (const auto& c : rep.checks)
            {
                const char* tag = c.passed ? "PASS" : (c.expected_fail ? "XFAIL" : "FAIL");
                std::cout << tag << "  " << name << "/" << c.name << "  value=" << format_value(c.value)
                          << "  threshold=" << format_value(c.threshold) << "  " << c.detail << "\n";
                if (c.data.contains("sigma") && !c.data["sigma"].empty())
                    std::cout << "      sigma " << c.data["sigma"].dump() << "\n";
            }
            std::cout << (rep.passed() ? "suite " + name + ": passed\n" : "suite " + name + ": FAILED\n");
            ok = ok && rep.passed();
            reports.push_back(rep.to_json());
        }
        if (!a.out.empty())
        {
            Json j = suites.size() == 1 ? reports[0] : Json{{"suites", reports}, {"passed", ok}};
            stamp(j, g);
            write_text(a.out, dump(j));
        }
        return ok ? exit_ok : exit_failed;
    }
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gabor wave front sets of sampled signals"};
    app.require_subcommand(1);
    Globals globals;
    app.add_option("--config", globals.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_flag("--timestamp", globals.timestamp, "add a generation time to JSON reports");

    SynthesizeArgs syn;
    auto* s = app.add_subcommand("synthesize", "write a test signal as CSV");
    s->add_option("--kind", syn.kind, "delta, plane_wave, chirp, gaussian or hermite")->required();
    s->add_option("--c", syn.c, "chirp rate");
    s->add_option("--x0", syn.x0, "position (delta, gaussian)");
    s->add_option("--xi0", syn.xi0, "frequency (plane_wave, gaussian)");
    s->add_option("--order", syn.order, "hermite order");
    s->add_option("--n", syn.n, "grid points (power of two)");
    s->add_option("--L", syn.length, "period length");
    s->add_option("--shift-x", syn.shift_x, "apply a phase-space shift: translation");
    s->add_option("--shift-xi", syn.shift_xi, "apply a phase-space shift: modulation");
    s->add_option("-o,--output", syn.out, "output CSV")->required();

    WavefrontArgs wf;
    auto* w = app.add_subcommand("wavefront", "estimate the wave front set of a signal");
    w->add_option("signal", wf.input, "signal CSV")->required();
    w->add_option("--mode", wf.mode, "stft or gabor")->check(CLI::IsMember({"stft", "gabor"}));
    w->add_option("--window", wf.window, "gaussian or hermiteK");
    w->add_option("--K", wf.k, "number of sectors");
    w->add_option("--N-thr", wf.n_thr, "decay threshold");
    w->add_option("-o,--output", wf.out, "JSON report (stdout if omitted)");
    w->add_option("--pgm", wf.pgm, "16-bit PGM heatmap of |V|");
    w->add_option("--rays", wf.rays, "CSV of per-sector shell maxima");

    ApplyArgs ap;
    auto* p = app.add_subcommand("apply", "apply a Weyl or localization operator");
    p->add_option("signal", ap.input, "signal CSV")->required();
    p->add_option("--weyl", ap.weyl, "symbol for the Weyl quantization");
    p->add_option("--localize", ap.localize, "mask for the STFT multiplier");
    p->add_option("--window", ap.window, "analysis window for --localize");
    p->add_option("-o,--output", ap.out, "output CSV")->required();

    VerifyArgs ve;
    auto* v = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    v->add_option("suite", ve.suite, "oracles, inversion, frames, microlocal, invariance or all")
        ->required()
        ->check(CLI::IsMember(choices));
    v->add_option("--alpha-beta-product", ve.alpha_beta_product, "frames: lattice density to examine");
    v->add_option("-o,--output", ve.out, "JSON report");

    try
    {
        app.parse(argc, argv);
        if (*s)
            return cmd_synthesize(syn, globals);
        if (*w)
            return cmd_wavefront(wf, globals);
        if (*p)
            return cmd_apply(ap, globals);
        return cmd_verify(ve, globals);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "gabor-wf: " << e.what() << "\n";
        return exit_usage;
    }
}

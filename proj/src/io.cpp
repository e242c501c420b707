#include "gaborwf/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace gaborwf
{
    namespace
    {
        std::string fmt17(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::ofstream open_out(const std::string& path, bool binary = false)
        {
            std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
            if (!out)
                throw IoError("cannot open '" + path + "' for writing");
            return out;
        }

        void check_written(std::ostream& out, const std::string& path)
        {
            out.flush();
            if (!out)
                throw IoError("write to '" + path + "' failed");
        }

        double parse_double(const std::string& s, const std::string& where)
        {
            std::size_t used = 0;
            double v = 0;
            try
            {
                v = std::stod(s, &used);
            }
            catch (const std::exception&)
            {
                used = 0;
            }
            if (used == 0 || used != s.size())
                throw IoError(where + ": bad number '" + s + "'");
            return v;
        }

        std::string trim(const std::string& s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        }
    }  // namespace

    void write_signal_csv(std::ostream& out, const SampledSignal<double>& u)
    {
        out << "# gabor-wf signal v1, " << u.grid().n() << ", " << fmt17(u.grid().length()) << ", " << u.label()
            << '\n';
        for (Eigen::Index j = 0; j < u.size(); ++j)
            out << j << ',' << fmt17(u[j].real()) << ',' << fmt17(u[j].imag()) << '\n';
    }

    void write_signal_csv(const std::string& path, const SampledSignal<double>& u)
    {
        auto out = open_out(path);
        write_signal_csv(out, u);
        check_written(out, path);
    }

    SampledSignal<double> read_signal_csv(std::istream& in, const std::string& origin)
    {
        std::string header;
        if (!std::getline(in, header))
            throw IoError(origin + ": empty signal file");
        const std::string magic = "# gabor-wf signal v1,";
        if (header.rfind(magic, 0) != 0)
            throw IoError(origin + ": missing '# gabor-wf signal v1' header");
        std::string rest = header.substr(magic.size());
        // n, L, label (the label may itself contain commas)
        const auto c1 = rest.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : rest.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw IoError(origin + ": header must read '# gabor-wf signal v1, n, L, label'");
        const double nd = parse_double(trim(rest.substr(0, c1)), origin + ":1");
        const double L = parse_double(trim(rest.substr(c1 + 1, c2 - c1 - 1)), origin + ":1");
        const std::string label = trim(rest.substr(c2 + 1));
        if (nd != std::floor(nd))
            throw IoError(origin + ": n must be an integer");
        Grid<double> grid;
        try
        {
            grid = make_grid<double>(static_cast<long>(nd), L);
        }
        catch (const InvalidArgument& e)
        {
            throw IoError(origin + ": " + e.what());
        }

        CVector<double> values(grid.n());
        std::vector<bool> seen(static_cast<std::size_t>(grid.n()), false);
        std::string line;
        int lineno = 1;
        while (std::getline(in, line))
        {
            ++lineno;
            if (trim(line).empty())
                continue;
            const std::string where = origin + ":" + std::to_string(lineno);
            std::istringstream row(line);
            std::string a, b, c;
            if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
                throw IoError(where + ": expected index,re,im");
            const double idx = parse_double(trim(a), where);
            if (idx != std::floor(idx) || idx < 0 || idx >= double(grid.n()))
                throw IoError(where + ": index out of range");
            const auto j = static_cast<std::size_t>(idx);
            if (seen[j])
                throw IoError(where + ": duplicate index");
            seen[j] = true;
            values[static_cast<Eigen::Index>(j)] = {parse_double(trim(b), where), parse_double(trim(c), where)};
        }
        for (std::size_t j = 0; j < seen.size(); ++j)
            if (!seen[j])
                throw IoError(origin + ": missing sample " + std::to_string(j));
        try
        {
            return SampledSignal<double>(grid, std::move(values), label);
        }
        catch (const InvalidArgument& e)
        {
            throw IoError(origin + ": " + e.what());
        }
    }

    SampledSignal<double> read_signal_csv(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open '" + path + "'");
        return read_signal_csv(in, path);
    }

    Json stft_pgm_sidecar(const STFTMatrix<double>& V)
    {
        const Eigen::ArrayXXd mag = V.values.cwiseAbs().array();
        Json j;
        j["vmin"] = mag.minCoeff();
        j["vmax"] = mag.maxCoeff();
        j["n_x"] = V.values.rows();
        j["n_xi"] = V.values.cols();
        j["L"] = V.grid().length();
        return j;
    }

    void write_stft_pgm(const std::string& path, const STFTMatrix<double>& V)
    {
        const Json side = stft_pgm_sidecar(V);
        const double vmin = side["vmin"], vmax = side["vmax"];
        const double span = vmax > vmin ? vmax - vmin : 1.0;
        // Rows are frequency (top = +Ξ), columns are x.
        const Eigen::Index nx = V.values.rows(), nxi = V.values.cols();
        auto out = open_out(path, true);
        out << "P5\n" << nx << ' ' << nxi << "\n65535\n";
        std::vector<unsigned char> buf(static_cast<std::size_t>(2 * nx));
        for (Eigen::Index k = nxi - 1; k >= 0; --k)
        {
            for (Eigen::Index m = 0; m < nx; ++m)
            {
                const double t = (std::abs(V.values(m, k)) - vmin) / span;
                const auto v = static_cast<std::uint16_t>(std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
                buf[static_cast<std::size_t>(2 * m)] = static_cast<unsigned char>(v >> 8);
                buf[static_cast<std::size_t>(2 * m + 1)] = static_cast<unsigned char>(v & 0xff);
            }
            out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        }
        check_written(out, path);
        write_text(path + ".json", dump(side));
    }

    void write_stft_csv(const std::string& path, const STFTMatrix<double>& V)
    {
        auto out = open_out(path);
        out << "m,k,re,im\n";
        for (Eigen::Index m = 0; m < V.values.rows(); ++m)
            for (Eigen::Index k = 0; k < V.values.cols(); ++k)
                out << m << ',' << k << ',' << fmt17(V.values(m, k).real()) << ',' << fmt17(V.values(m, k).imag())
                    << '\n';
        check_written(out, path);
    }

    void write_gabor_csv(const std::string& path, const GaborCoefficients<double>& c)
    {
        auto out = open_out(path);
        out << "j,k,lambda_x,lambda_xi,re,im\n";
        for (Eigen::Index j = 0; j < c.values.rows(); ++j)
            for (Eigen::Index l = 0; l < c.values.cols(); ++l)
                out << j << ',' << l << ',' << fmt17(c.lattice.x(j)) << ',' << fmt17(c.lattice.xi(l)) << ','
                    << fmt17(c.values(j, l).real()) << ',' << fmt17(c.values(j, l).imag()) << '\n';
        check_written(out, path);
    }

    Json frame_bounds_json(const FrameBounds<double>& fb, const Lattice<double>& lat)
    {
        Json j;
        j["alpha"] = lat.alpha();
        j["beta"] = lat.beta();
        j["alpha_beta"] = lat.alpha() * lat.beta();
        j["A"] = fb.lower;
        j["B"] = fb.upper;
        j["is_frame"] = fb.is_frame();
        j["method"] = fb.method;
        return j;
    }

    Json sector_set_json(const SectorSet& s)
    {
        Json arr = Json::array();
        for (int i : s)
            arr.push_back(i);
        return arr;
    }

    namespace
    {
        Json finite_or_null(double v)
        {
            return std::isfinite(v) ? Json(v) : Json(nullptr);
        }
    }  // namespace

    Json wavefront_json(const WaveFrontEstimate& est)
    {
        Json j;
        j["K"] = est.partition.k();
        j["N_thr"] = est.n_thr;
        j["singular"] = sector_set_json(est.singular);
        Json sectors = Json::array();
        for (const auto& s : est.profile.sectors)
        {
            Json e;
            e["i"] = s.index;
            e["sigma"] = finite_or_null(s.sigma);
            e["residual"] = s.residual;
            e["floor_hit"] = s.floor_hit;
            e["n_points"] = s.n_points;
            if (s.indeterminate)
                e["indeterminate"] = true;
            sectors.push_back(std::move(e));
        }
        j["sectors"] = std::move(sectors);
        Json prov;
        prov["field"] = est.provenance_field;
        prov["window"] = est.provenance_window;
        prov["signal"] = est.provenance_signal;
        prov["radial"] = {{"r_min", est.profile.radial.r_min},
                          {"r_max", est.profile.radial.r_max},
                          {"n_shells", est.profile.radial.n_shells},
                          {"spacing", "geometric"}};
        prov["floor"] = est.profile.floor;
        prov["note"] = "symbol and decay checks certify zeroth-order bounds only";
        j["provenance"] = std::move(prov);
        return j;
    }

    void write_rays_csv(const std::string& path, const DecayProfile& profile)
    {
        auto out = open_out(path);
        out << "sector,shell,r,logM\n";
        for (const auto& s : profile.sectors)
            for (int h = 0; h < profile.radial.n_shells; ++h)
            {
                const double m = s.shell_max[static_cast<std::size_t>(h)];
                if (std::isnan(m))
                    continue;
                out << s.index << ',' << h << ',' << fmt17(profile.radial.center(h)) << ','
                    << (m > 0 ? fmt17(std::log(m)) : std::string("-inf")) << '\n';
            }
        check_written(out, path);
    }

    Json microlocal_json(const MicrolocalReport& rep)
    {
        Json j;
        j["verdict"] = to_string(rep.verdict);
        j["lhs"] = sector_set_json(rep.lhs);
        j["wf_u"] = sector_set_json(rep.wf_u);
        j["conesupp_a"] = sector_set_json(rep.conesupp_a);
        j["margin"] = rep.margin;
        j["quantization"] = rep.quantization;
        return j;
    }

    void write_kernel_probe_csv(const std::string& path, const KernelProbe& probe)
    {
        auto out = open_out(path);
        out << "shell,offset_r,logMaxK\n";
        for (std::size_t h = 0; h < probe.shell_r.size(); ++h)
            out << h << ',' << fmt17(probe.shell_r[h]) << ','
                << (std::isnan(probe.log_max[h]) ? std::string("nan") : fmt17(probe.log_max[h])) << '\n';
        check_written(out, path);
    }

    void write_text(const std::string& path, const std::string& text)
    {
        auto out = open_out(path, true);
        out << text;
        check_written(out, path);
    }

    std::string dump(const Json& j)
    {
        return j.dump(2) + "\n";
    }
}  // namespace gaborwf

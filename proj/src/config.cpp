#include "gaborwf/config.hpp"

#include <fstream>
#include <sstream>

namespace gaborwf
{
    RadialConfig Config::radial() const
    {
        RadialConfig rc = RadialConfig::defaults_for(grid());
        if (r_max)
            rc.r_max = *r_max;
        if (r_min)
            rc.r_min = *r_min;
        else if (r_max)
            rc.r_min = std::max(2.0, 0.4 * rc.r_max);
        rc.n_shells = n_shells;
        rc.validate(grid());
        return rc;
    }

    namespace
    {
        std::string trim(const std::string& s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        double to_double(const std::string& v, const std::string& where)
        {
            std::size_t used = 0;
            double d = 0;
            try
            {
                d = std::stod(v, &used);
            }
            catch (const std::exception&)
            {
                used = 0;
            }
            if (used == 0 || used != v.size())
                throw InvalidArgument(where + ": expected a number, got '" + v + "'");
            return d;
        }

        long to_long(const std::string& v, const std::string& where)
        {
            const double d = to_double(v, where);
            if (d != std::floor(d))
                throw InvalidArgument(where + ": expected an integer, got '" + v + "'");
            return static_cast<long>(d);
        }
    }  // namespace

    Config parse_config(const std::string& text, const std::string& origin)
    {
        Config cfg;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            const std::string where = origin + ":" + std::to_string(lineno);
            if (eq == std::string::npos)
                throw InvalidArgument(where + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
                value = value.substr(1, value.size() - 2);

            if (key == "n")
                cfg.n = to_long(value, where);
            else if (key == "L")
                cfg.length = to_double(value, where);
            else if (key == "K")
                cfg.k_sectors = static_cast<int>(to_long(value, where));
            else if (key == "N_thr")
                cfg.n_thr = to_double(value, where);
            else if (key == "alpha_beta")
                cfg.alpha_beta = to_double(value, where);
            else if (key == "cg_tol")
                cfg.cg_tol = to_double(value, where);
            else if (key == "r_min")
                cfg.r_min = value == "auto" ? std::nullopt : std::optional<double>(to_double(value, where));
            else if (key == "r_max")
                cfg.r_max = value == "auto" ? std::nullopt : std::optional<double>(to_double(value, where));
            else if (key == "n_shells")
                cfg.n_shells = static_cast<int>(to_long(value, where));
            else if (key == "margin")
                cfg.margin = static_cast<int>(to_long(value, where));
            else if (key == "kernel_subsample")
                cfg.kernel_subsample = to_long(value, where);
            else if (key == "kernel_cap")
                cfg.kernel_cap = to_long(value, where);
            else
                throw InvalidArgument(where + ": unknown key '" + key + "'");
        }
        return cfg;
    }

    Config load_config(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str(), path);
    }
}  // namespace gaborwf

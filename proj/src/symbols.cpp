#include "gaborwf/symbols.hpp"

#include <sstream>

namespace gaborwf
{
    SymbolSpec symbol_one()
    {
        return {"one", [](double, double) { return std::complex<double>(1.0); }, 0.0};
    }

    SymbolSpec symbol_x()
    {
        return {"x", [](double x, double) { return std::complex<double>(x); }, 1.0};
    }

    SymbolSpec symbol_xi()
    {
        return {"xi", [](double, double xi) { return std::complex<double>(xi); }, 1.0};
    }

    SymbolSpec symbol_sincos()
    {
        return {"sincos", [](double x, double xi) { return std::complex<double>(std::sin(x) * std::cos(xi)); }, 0.0};
    }

    SymbolSpec symbol_elliptic()
    {
        return {"elliptic", [](double x, double xi) { return std::complex<double>(x * x + xi * xi); }, 2.0};
    }

    double domain_taper(double x, double xi, double length, double freq_max)
    {
        return 0.25 * std::erfc(std::abs(x) - 0.9 * length / 2) * std::erfc(std::abs(xi) - 0.9 * freq_max);
    }

    double cone_profile(double x, double xi, double theta1_deg, double theta2_deg, const ConeShape& shape)
    {
        const double t1 = theta1_deg * pi<double> / 180.0;
        const double t2 = theta2_deg * pi<double> / 180.0;
        const double r = std::hypot(x, xi);
        const double th = std::atan2(xi, x);
        double ang = 0;
        for (int k = -1; k <= 1; ++k)
        {
            const double t = th + 2 * pi<double> * k;
            ang += 0.5 * (std::erf((t - t1) / shape.w) - std::erf((t - t2) / shape.w));
        }
        return 0.5 * std::erfc((shape.r0 - r) / shape.s) * ang;
    }

    namespace
    {
        std::string cone_name(const char* prefix, double t1, double t2)
        {
            std::ostringstream os;
            os << prefix << t1 << ',' << t2;
            return os.str();
        }

        double parse_number(const std::string& s, const std::string& context)
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
            if (used != s.size() || s.empty())
                throw InvalidArgument("bad number '" + s + "' in symbol '" + context + "'");
            return v;
        }
    }  // namespace

    SymbolSpec cone_cutoff(double theta1_deg, double theta2_deg, double length, double freq_max,
                           const ConeShape& shape)
    {
        if (!(theta2_deg > theta1_deg))
            throw InvalidArgument("cone angles must satisfy theta1 < theta2");
        return {cone_name("cone:", theta1_deg, theta2_deg),
                [=](double x, double xi) {
                    return std::complex<double>(cone_profile(x, xi, theta1_deg, theta2_deg, shape) *
                                                domain_taper(x, xi, length, freq_max));
                },
                0.0};
    }

    SymbolSpec cone_vanishing(double theta1_deg, double theta2_deg, double length, double freq_max,
                              const ConeShape& shape)
    {
        if (!(theta2_deg > theta1_deg))
            throw InvalidArgument("cone angles must satisfy theta1 < theta2");
        return {cone_name("cone_vanishing:", theta1_deg, theta2_deg),
                [=](double x, double xi) {
                    return std::complex<double>((1.0 - cone_profile(x, xi, theta1_deg, theta2_deg, shape)) *
                                                domain_taper(x, xi, length, freq_max));
                },
                0.0};
    }

    SymbolSpec symbol_sum(const SymbolSpec& a, const SymbolSpec& b)
    {
        auto fa = a.function;
        auto fb = b.function;
        return {a.name + "+" + b.name, [fa, fb](double x, double xi) { return fa(x, xi) + fb(x, xi); },
                std::max(a.order, b.order)};
    }

    SymbolSpec parse_symbol(const std::string& text, double length, double freq_max)
    {
        if (text.empty())
            throw InvalidArgument("missing symbol name");
        const auto plus = text.find('+');
        if (plus != std::string::npos)
            return symbol_sum(parse_symbol(text.substr(0, plus), length, freq_max),
                              parse_symbol(text.substr(plus + 1), length, freq_max));
        if (text == "one")
            return symbol_one();
        if (text == "x")
            return symbol_x();
        if (text == "xi")
            return symbol_xi();
        if (text == "sincos")
            return symbol_sincos();
        if (text == "elliptic")
            return symbol_elliptic();
        for (const char* prefix : {"cone:", "cone_vanishing:"})
        {
            const std::string p(prefix);
            if (text.rfind(p, 0) != 0)
                continue;
            const std::string args = text.substr(p.size());
            const auto comma = args.find(',');
            if (comma == std::string::npos)
                throw InvalidArgument("cone symbol needs two angles, e.g. cone:0,45");
            const double t1 = parse_number(args.substr(0, comma), text);
            const double t2 = parse_number(args.substr(comma + 1), text);
            return p == "cone:" ? cone_cutoff(t1, t2, length, freq_max) : cone_vanishing(t1, t2, length, freq_max);
        }
        throw InvalidArgument("unknown symbol '" + text +
                              "' (expected one, x, xi, sincos, elliptic, cone:t1,t2, cone_vanishing:t1,t2)");
    }

    std::vector<SymbolSpec> microlocal_suite(double length, double freq_max)
    {
        std::vector<SymbolSpec> suite{symbol_one(), symbol_sincos()};
        const double cones[][2] = {{0, 45}, {20, 70}, {110, 160}, {60, 120}, {200, 250}, {300, 340}};
        for (const auto& c : cones)
            suite.push_back(cone_cutoff(c[0], c[1], length, freq_max));
        suite.push_back(symbol_sum(cone_cutoff(20, 70, length, freq_max), cone_cutoff(200, 250, length, freq_max)));
        return suite;
    }

    std::vector<SymbolSpec> full_suite(double length, double freq_max)
    {
        std::vector<SymbolSpec> suite = microlocal_suite(length, freq_max);
        suite.push_back(symbol_x());
        suite.push_back(symbol_xi());
        suite.push_back(symbol_elliptic());
        return suite;
    }
}  // namespace gaborwf

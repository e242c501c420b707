#pragma once

#include "gaborwf/gabor.hpp"
#include "gaborwf/microlocal.hpp"
#include "gaborwf/phase_kernel.hpp"
#include "gaborwf/wavefront.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace gaborwf
{
    using Json = nlohmann::ordered_json;

    /// Thrown for unreadable, unwritable or malformed files.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// `# gabor-wf signal v1, n, L, label` followed by `index,re,im` rows at 17 significant digits.
    void write_signal_csv(std::ostream& out, const SampledSignal<double>& u);
    void write_signal_csv(const std::string& path, const SampledSignal<double>& u);
    SampledSignal<double> read_signal_csv(std::istream& in, const std::string& origin = "<stream>");
    SampledSignal<double> read_signal_csv(const std::string& path);

    /// 16-bit binary PGM of |V| scaled linearly onto [0, 65535], plus its scaling sidecar.
    void write_stft_pgm(const std::string& path, const STFTMatrix<double>& V);
    Json stft_pgm_sidecar(const STFTMatrix<double>& V);
    void write_stft_csv(const std::string& path, const STFTMatrix<double>& V);

    void write_gabor_csv(const std::string& path, const GaborCoefficients<double>& c);
    Json frame_bounds_json(const FrameBounds<double>& fb, const Lattice<double>& lat);

    Json sector_set_json(const SectorSet& s);
    Json wavefront_json(const WaveFrontEstimate& est);
    /// `sector,shell,r,logM` for every populated shell.
    void write_rays_csv(const std::string& path, const DecayProfile& profile);

    Json microlocal_json(const MicrolocalReport& rep);
    /// `shell,offset_r,logMaxK`.
    void write_kernel_probe_csv(const std::string& path, const KernelProbe& probe);

    void write_text(const std::string& path, const std::string& text);
    /// Stable formatting: two-space indent and a trailing newline.
    std::string dump(const Json& j);
}  // namespace gaborwf

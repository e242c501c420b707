#pragma once

#include "gaborwf/operators.hpp"
#include "gaborwf/wavefront.hpp"

namespace gaborwf
{
    template <typename Real> struct MicrolocalConfig
    {
        Window<Real> window;
        SectorPartition partition;
        RadialConfig radial;
        double n_thr = 4;
        int margin = 1;
    };

    struct MicrolocalReport
    {
        SetRelation verdict = SetRelation::neither;
        SectorSet lhs;         // WF(a^w u)
        SectorSet wf_u;        // WF(u)
        SectorSet conesupp_a;  // conesupp(a)
        SectorSet rhs;         // WF(u) ∩ conesupp(a)
        int margin = 1;
        std::string quantization = "weyl";

        bool holds() const { return verdict != SetRelation::neither; }
    };

    /// The parts of a microlocality check that depend only on the input signal.
    struct SignalAnalysis
    {
        WaveFrontEstimate wf;
        double stft_max = 0;
    };

    template <typename Real>
    SignalAnalysis analyze_signal(const SampledSignal<Real>& u, const MicrolocalConfig<Real>& cfg)
    {
        const STFTMatrix<Real> Vu = stft(u, cfg.window);
        return {estimate_wavefront(decay_profile(Vu, cfg.partition, cfg.radial), cfg.n_thr),
                double(Vu.values.cwiseAbs().maxCoeff())};
    }

    /// Compares WF(a^w u) with WF(u) ∩ conesupp(a). The output's decay floor is referenced
    /// to max|V_φu|·sup|a| rather than to the output itself, so an output that is pure
    /// roundoff is classified as negligible instead of being rescaled into a signal.
    template <typename Real>
    MicrolocalReport microlocality_check(const WeylOperator<Real>& op, const SampledSymbol<Real>& a,
                                         const SectorSet& conesupp_a, const SampledSignal<Real>& u,
                                         const SignalAnalysis& input, const MicrolocalConfig<Real>& cfg)
    {
        if (a.order != 0)
            throw InvalidArgument("microlocality_check needs an order-0 symbol");
        const SampledSignal<Real> v = op.apply(u);
        const WaveFrontEstimate lhs = estimate_wavefront(
            decay_profile(stft(v, cfg.window), cfg.partition, cfg.radial, input.stft_max * double(a.sup_abs())),
            cfg.n_thr);

        MicrolocalReport rep;
        rep.lhs = lhs.singular;
        rep.wf_u = input.wf.singular;
        rep.conesupp_a = conesupp_a;
        rep.rhs = rep.wf_u.intersect(rep.conesupp_a);
        rep.margin = cfg.margin;
        rep.verdict = wf_compare(rep.lhs, rep.rhs, cfg.margin);
        return rep;
    }

    template <typename Real>
    MicrolocalReport microlocality_check(const WeylOperator<Real>& op, const SampledSymbol<Real>& a,
                                         const SampledSignal<Real>& u, const MicrolocalConfig<Real>& cfg)
    {
        return microlocality_check(op, a, conesupp_estimate(a, cfg.partition, cfg.radial), u,
                                   analyze_signal(u, cfg), cfg);
    }

    template <typename Real>
    MicrolocalReport microlocality_check(const SampledSymbol<Real>& a, const SampledSignal<Real>& u,
                                         const MicrolocalConfig<Real>& cfg)
    {
        return microlocality_check(WeylOperator<Real>(a), a, u, cfg);
    }
}  // namespace gaborwf

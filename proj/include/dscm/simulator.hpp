#ifndef DSCM_SIMULATOR_HPP
#define DSCM_SIMULATOR_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dscm/link_profile.hpp"
#include "dscm/shaping.hpp"

namespace dscm {

class ConfigurationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Monte-Carlo waveform settings.
//
// The multiplex is synthesized spectrally on circular blocks at the
// critical sampling rate Fs = N * (1 + rolloff) * symbol_rate, i.e.
// samples_per_symbol = N * (1 + rolloff). Matched RRC filtering is then
// exact (no truncation), subcarriers are orthogonal to machine precision,
// and the clipping distortion has no spectral room outside the signal
// band, which is what makes the closed-form clipping-noise budget
// apply per subcarrier.
//
// symbols_per_block must keep every subcarrier center on an integer DFT
// bin: symbols_per_block * (1+rolloff) * (i - (N+1)/2) integral for all i.
// With the default rolloff 1/64 any multiple of 128 works.
struct WaveformConfig {
    double rrc_rolloff = 1.0 / 64.0;
    int symbols_per_block = 1 << 15;
    int blocks = 8;
    std::uint64_t seed = 1;

    void validate(int subcarrier_count) const;
};

struct SubcarrierResult {
    double esnr_linear = 0.0;
    double ber = 0.0;
    std::int64_t bit_count = 0;
    std::int64_t error_count = 0;
};

struct SimResult {
    std::vector<SubcarrierResult> per_subcarrier;
    double measured_papr_db = 0.0;  // 1e-4 CCDF point of |x|^2 / mean, unclipped
    double clip_ratio_db = 0.0;
    bool low_confidence = false;  // set when a leaf counted fewer than 100 errors
};

// Conditioned clipping-noise samples, keyed by the transmitted PAM
// magnitude (negative amplitudes are sign-flipped onto the positive
// ones). Values are in normalized units: residual at the matched-filter
// output divided by alpha * beta * sqrt(P/N), i.e. loss-free and common
// to all subcarriers; one unit equals the alpha-scaled per-subcarrier
// rms amplitude.
struct ConditionedNoiseSamples {
    std::map<int, std::vector<double>> by_magnitude;  // keys 1,3,5,7
    double clip_ratio_db = 0.0;
    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& [k, v] : by_magnitude) n += v.size();
        return n;
    }
};

// One circular DSCM block: synthesis, clipping, per-leaf reception.
class DscmBlock {
  public:
    // ses[i] is the spectral efficiency (bits per 2-D symbol) of leaf i.
    DscmBlock(const LinkProfile& profile, const std::vector<double>& ses,
              const WaveformConfig& wf, int block_index);
    ~DscmBlock();
    DscmBlock(const DscmBlock&) = delete;
    DscmBlock& operator=(const DscmBlock&) = delete;

    // hard-limits I and Q at eta * sqrt(P/2); eta <= 0 disables clipping
    void clip(double eta);

    // matched-filter symbols of subcarrier i of the (possibly clipped)
    // waveform, before peak matching / loss / noise. The transmitted
    // reference is on the integer +-{1,3,5,7} grid.
    std::vector<std::complex<double>> receive(int i) const;

    const std::vector<std::complex<double>>& transmitted(int i) const { return symbols_[i]; }
    double amplitude_scale(int i) const { return scales_[i]; }  // rms of the integer grid
    const std::vector<std::complex<double>>& waveform() const { return wave_; }
    double waveform_power() const;
    double papr_ccdf_db(double ccdf = 1e-4) const;

  private:
    LinkProfile profile_;
    WaveformConfig wf_;
    int n_;
    std::size_t nsym_, nsamp_;
    int halfband_bins_;
    std::vector<int> center_bins_;
    std::vector<double> rrc_gain_;  // sqrt(RC) over the band
    std::vector<std::vector<std::complex<double>>> symbols_;
    std::vector<double> scales_;
    std::vector<std::complex<double>> wave_;
};

class DscmSimulator {
  public:
    DscmSimulator(LinkProfile profile, std::vector<double> ses, WaveformConfig wf);

    // full chain at the given clipping ratio; ratio_db >= no_clip_threshold
    // still clips, just never triggers (the chain is identical)
    SimResult measure(double ratio_db) const;

    // like measure() but with white noise and loss disabled, harvesting
    // residuals conditioned on the transmitted amplitude
    ConditionedNoiseSamples extract_clipping_noise(double ratio_db) const;

    const LinkProfile& profile() const { return profile_; }
    const std::vector<double>& ses() const { return ses_; }
    const WaveformConfig& waveform_config() const { return wf_; }

    // debug waveform dump: 64-byte header + interleaved little-endian
    // f64 re/im pairs of one unclipped block
    void dump_waveform(const std::string& path, int block_index = 0) const;

  private:
    LinkProfile profile_;
    std::vector<double> ses_;
    WaveformConfig wf_;
};

}  // namespace dscm

#endif

#include "dscm/simulator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <numeric>

#include "dscm/clipping.hpp"
#include "dscm/rng.hpp"

namespace dscm {

namespace {

std::mutex fftw_mutex;  // FFTW planning is not thread-safe

void fft_inplace(std::vector<std::complex<double>>& data, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(data.data()), sign,
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

// raised-cosine spectrum, frequency in symbol-rate units, unit height
double rc_spectrum(double f, double rolloff) {
    double a = std::abs(f);
    if (a <= (1.0 - rolloff) / 2.0) return 1.0;
    if (a >= (1.0 + rolloff) / 2.0) return 0.0;
    return 0.5 * (1.0 + std::cos(M_PI / rolloff * (a - (1.0 - rolloff) / 2.0)));
}

inline std::size_t mod(long long v, std::size_t m) {
    long long r = v % static_cast<long long>(m);
    if (r < 0) r += static_cast<long long>(m);
    return static_cast<std::size_t>(r);
}

}  // namespace

void WaveformConfig::validate(int subcarrier_count) const {
    if (!(rrc_rolloff > 0.0) || rrc_rolloff > 1.0)
        throw ConfigurationError("WaveformConfig: rolloff must be in (0, 1]");
    if (symbols_per_block < 64)
        throw ConfigurationError("WaveformConfig: symbols_per_block must be >= 64");
    if (blocks < 1) throw ConfigurationError("WaveformConfig: blocks must be >= 1");
    const double ns = symbols_per_block;
    // every subcarrier center and the band half-width must land on DFT bins
    double w2 = (1.0 + rrc_rolloff) / 2.0 * ns;
    if (std::abs(w2 - std::round(w2)) > 1e-9)
        throw ConfigurationError("WaveformConfig: (1+rolloff)*symbols_per_block must be even");
    for (int i = 1; i <= subcarrier_count; ++i) {
        double c = (i - (subcarrier_count + 1) / 2.0) * (1.0 + rrc_rolloff) * ns;
        if (std::abs(c - std::round(c)) > 1e-9)
            throw ConfigurationError(
                "WaveformConfig: subcarrier centers must fall on integer DFT bins; "
                "adjust symbols_per_block for this rolloff");
    }
}

DscmBlock::DscmBlock(const LinkProfile& profile, const std::vector<double>& ses,
                     const WaveformConfig& wf, int block_index)
    : profile_(profile), wf_(wf), n_(profile.subcarrier_count) {
    profile_.validate();
    wf_.validate(n_);
    if (static_cast<int>(ses.size()) != n_)
        throw ConfigurationError("DscmBlock: ses must have one entry per subcarrier");

    nsym_ = static_cast<std::size_t>(wf_.symbols_per_block);
    const double r = wf_.rrc_rolloff;
    nsamp_ = static_cast<std::size_t>(std::llround(nsym_ * n_ * (1.0 + r)));
    halfband_bins_ = static_cast<int>(std::llround((1.0 + r) / 2.0 * nsym_));

    center_bins_.resize(n_);
    for (int i = 0; i < n_; ++i)
        center_bins_[i] =
            static_cast<int>(std::llround((i + 1 - (n_ + 1) / 2.0) * (1.0 + r) * nsym_));

    rrc_gain_.resize(2 * halfband_bins_);
    for (int b = -halfband_bins_; b < halfband_bins_; ++b)
        rrc_gain_[b + halfband_bins_] = std::sqrt(rc_spectrum(static_cast<double>(b) / nsym_, r));

    // per-subcarrier symbols on the integer grid
    symbols_.resize(n_);
    scales_.resize(n_);
    std::vector<std::complex<double>> spec(nsamp_, 0.0);
    std::vector<std::complex<double>> symspec(nsym_);
    for (int i = 0; i < n_; ++i) {
        auto dist = mb_distribution_for_se(ses[i]);
        scales_[i] = std::sqrt(dist.mean_square_amplitude());
        std::uint64_t stream = (static_cast<std::uint64_t>(block_index) << 8) | i;
        symbols_[i] = sample_symbols(dist, nsym_, mix64(wf_.seed) ^ stream);

        const double unit = 1.0 / (scales_[i] * std::sqrt(2.0));  // unit-power complex symbols
        for (std::size_t m = 0; m < nsym_; ++m) symspec[m] = symbols_[i][m] * unit;
        fft_inplace(symspec, FFTW_FORWARD);
        for (int b = -halfband_bins_; b < halfband_bins_; ++b) {
            spec[mod(center_bins_[i] + b, nsamp_)] +=
                symspec[mod(b, nsym_)] * rrc_gain_[b + halfband_bins_];
        }
    }
    // FFTW's backward transform is unnormalized; this scale makes each
    // subcarrier's waveform power P/N and the TX->RX symbol cascade gain
    // sqrt(P/N) (the RC spectra fold to unity at the symbol rate)
    wave_ = std::move(spec);
    fft_inplace(wave_, FFTW_BACKWARD);
    const double g_tx = std::sqrt(profile_.dscm_power / n_) / static_cast<double>(nsym_);
    for (auto& v : wave_) v *= g_tx;
}

DscmBlock::~DscmBlock() = default;

void DscmBlock::clip(double eta) {
    if (!(eta > 0)) return;
    const double a = eta * std::sqrt(profile_.dscm_power / 2.0);
    for (auto& v : wave_) {
        double re = std::clamp(v.real(), -a, a);
        double im = std::clamp(v.imag(), -a, a);
        v = {re, im};
    }
}

std::vector<std::complex<double>> DscmBlock::receive(int i) const {
    if (i < 0 || i >= n_) throw InvalidParameter("DscmBlock::receive: index out of range");
    std::vector<std::complex<double>> spec(wave_);
    fft_inplace(spec, FFTW_FORWARD);
    std::vector<std::complex<double>> folded(nsym_, 0.0);
    for (int b = -halfband_bins_; b < halfband_bins_; ++b) {
        folded[mod(b, nsym_)] +=
            spec[mod(center_bins_[i] + b, nsamp_)] * rrc_gain_[b + halfband_bins_];
    }
    fft_inplace(folded, FFTW_BACKWARD);
    const double g_rx = 1.0 / static_cast<double>(nsamp_);  // 1/nsym IDFT * nsym/nsamp
    for (auto& v : folded) v *= g_rx;
    return folded;
}

double DscmBlock::waveform_power() const {
    double s = 0.0;
    for (const auto& v : wave_) s += std::norm(v);
    return s / static_cast<double>(wave_.size());
}

double DscmBlock::papr_ccdf_db(double ccdf) const {
    std::vector<double> pw(wave_.size());
    for (std::size_t k = 0; k < wave_.size(); ++k) pw[k] = std::norm(wave_[k]);
    double mean = std::accumulate(pw.begin(), pw.end(), 0.0) / pw.size();
    std::size_t rank = static_cast<std::size_t>(ccdf * pw.size());
    if (rank < 1) rank = 1;
    std::nth_element(pw.begin(), pw.begin() + (rank - 1), pw.end(), std::greater<double>());
    return 10.0 * std::log10(pw[rank - 1] / mean);
}

DscmSimulator::DscmSimulator(LinkProfile profile, std::vector<double> ses, WaveformConfig wf)
    : profile_(std::move(profile)), ses_(std::move(ses)), wf_(wf) {
    profile_.validate();
    wf_.validate(profile_.subcarrier_count);
    if (static_cast<int>(ses_.size()) != profile_.subcarrier_count)
        throw ConfigurationError("DscmSimulator: ses must have one entry per subcarrier");
    for (double s : ses_)
        (void)mb_distribution_for_se(s);  // validates range early
}

SimResult DscmSimulator::measure(double ratio_db) const {
    const int n = profile_.subcarrier_count;
    const double p = profile_.dscm_power;
    const double eta = db_to_eta(ratio_db);
    const double alpha = clipping_attenuation(eta);
    const double beta = profile_.peak_amplitude / (eta * std::sqrt(p / 2.0));

    SimResult out;
    out.clip_ratio_db = ratio_db;
    out.per_subcarrier.assign(n, {});
    std::vector<double> sig_pow(n, 0.0), err_pow(n, 0.0);
    double papr_sum = 0.0;

    for (int blk = 0; blk < wf_.blocks; ++blk) {
        DscmBlock block(profile_, ses_, wf_, blk);
        papr_sum += block.papr_ccdf_db();
        block.clip(eta);
        for (int i = 0; i < n; ++i) {
            const double loss = profile_.losses[i];
            const double chan = beta / std::sqrt(loss);
            const double gref = alpha * chan * std::sqrt(p / n) /
                                (block.amplitude_scale(i) * std::sqrt(2.0));
            auto rx = block.receive(i);
            const auto& tx = block.transmitted(i);
            StreamRng noise(wf_.seed, 0xBEEF0000ULL + (static_cast<std::uint64_t>(blk) << 8) + i);
            const double nsd = std::sqrt(profile_.noise_variance / 2.0);
            std::int64_t errs = 0;
            for (std::size_t m = 0; m < rx.size(); ++m) {
                std::complex<double> y = rx[m] * chan +
                                         std::complex<double>(noise.normal(), noise.normal()) * nsd;
                std::complex<double> ref = gref * tx[m];
                sig_pow[i] += std::norm(ref);
                err_pow[i] += std::norm(y - ref);
                // Gray bit errors on both dimensions
                int ti = static_cast<int>(tx[m].real());
                int tq = static_cast<int>(tx[m].imag());
                int ri = slice_pam8(y.real() / gref);
                int rq = slice_pam8(y.imag() / gref);
                errs += __builtin_popcount(gray_bits(ti) ^ gray_bits(ri));
                errs += __builtin_popcount(gray_bits(tq) ^ gray_bits(rq));
            }
            out.per_subcarrier[i].error_count += errs;
            out.per_subcarrier[i].bit_count += static_cast<std::int64_t>(rx.size()) * 6;
        }
    }
    for (int i = 0; i < n; ++i) {
        auto& r = out.per_subcarrier[i];
        r.esnr_linear = sig_pow[i] / err_pow[i];
        r.ber = static_cast<double>(r.error_count) / static_cast<double>(r.bit_count);
        if (r.error_count < 100) out.low_confidence = true;
    }
    out.measured_papr_db = papr_sum / wf_.blocks;
    return out;
}

ConditionedNoiseSamples DscmSimulator::extract_clipping_noise(double ratio_db) const {
    const int n = profile_.subcarrier_count;
    const double p = profile_.dscm_power;
    const double eta = db_to_eta(ratio_db);
    const double alpha = clipping_attenuation(eta);

    ConditionedNoiseSamples out;
    out.clip_ratio_db = ratio_db;
    for (int k : kPamMagnitudes) out.by_magnitude[k] = {};

    for (int blk = 0; blk < wf_.blocks; ++blk) {
        DscmBlock block(profile_, ses_, wf_, blk);
        block.clip(eta);
        for (int i = 0; i < n; ++i) {
            // loss-free, noise-free reception; normalize by the
            // alpha-scaled per-subcarrier rms so samples pool across leaves
            const double gref =
                alpha * std::sqrt(p / n) / (block.amplitude_scale(i) * std::sqrt(2.0));
            const double unit = block.amplitude_scale(i) * std::sqrt(2.0);
            auto rx = block.receive(i);
            const auto& tx = block.transmitted(i);
            for (std::size_t m = 0; m < rx.size(); ++m) {
                double ui = rx[m].real() / gref;
                double uq = rx[m].imag() / gref;
                int ti = static_cast<int>(tx[m].real());
                int tq = static_cast<int>(tx[m].imag());
                double ei = (ui - ti) / unit;
                double eq = (uq - tq) / unit;
                out.by_magnitude[std::abs(ti)].push_back(ti > 0 ? ei : -ei);
                out.by_magnitude[std::abs(tq)].push_back(tq > 0 ? eq : -eq);
            }
        }
    }
    return out;
}

void DscmSimulator::dump_waveform(const std::string& path, int block_index) const {
    DscmBlock block(profile_, ses_, wf_, block_index);
    const auto& w = block.waveform();
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("dump_waveform: cannot open " + path);
    unsigned char header[64] = {0};
    std::memcpy(header, "DSCM", 4);
    std::uint32_t version = 1, n = profile_.subcarrier_count;
    double sps = profile_.subcarrier_count * (1.0 + wf_.rrc_rolloff);
    std::uint64_t count = w.size();
    std::memcpy(header + 4, &version, 4);
    std::memcpy(header + 8, &n, 4);
    std::memcpy(header + 16, &sps, 8);
    std::memcpy(header + 24, &count, 8);
    std::fwrite(header, 1, 64, fp);
    for (const auto& v : w) {
        double re = v.real(), im = v.imag();
        std::fwrite(&re, 8, 1, fp);
        std::fwrite(&im, 8, 1, fp);
    }
    std::fclose(fp);
}

}  // namespace dscm

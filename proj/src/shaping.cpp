#include "dscm/shaping.hpp"

#include <cmath>

namespace dscm {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// amplitude-magnitude probabilities q_k ~ exp(-lambda (k^2 - 1)), sum 1
std::array<double, 4> mb_magnitudes(double lambda) {
    std::array<double, 4> w;
    double s = 0.0;
    for (int j = 0; j < 4; ++j) {
        double k = kPamMagnitudes[j];
        w[j] = std::exp(-lambda * (k * k - 1.0));
        s += w[j];
    }
    for (auto& v : w) v /= s;
    return w;
}

double entropy_per_dim(double lambda) {
    auto q = mb_magnitudes(lambda);
    double h = 0.0;
    for (double v : q) h -= xlog2x(v);
    return h + 1.0;  // uniform sign bit
}

}  // namespace

void AmplitudeDistribution::validate() const {
    double s = 0.0;
    for (double v : pr) {
        if (!(v >= 0.0)) throw InvalidParameter("AmplitudeDistribution: negative probability");
        s += 2.0 * v;
    }
    if (std::abs(s - 1.0) > 1e-9)
        throw InvalidParameter("AmplitudeDistribution: probabilities must sum to 1");
    for (int j = 0; j + 1 < 4; ++j)
        if (pr[j] + 1e-12 < pr[j + 1])
            throw InvalidParameter("AmplitudeDistribution: probabilities must be nonincreasing in |k|");
}

AmplitudeDistribution mb_distribution_for_se(double target_se) {
    if (!(target_se > 0.0)) throw InvalidParameter("mb_distribution_for_se: target_se must be > 0");
    if (target_se > 6.0 + 1e-12)
        throw InvalidParameter("mb_distribution_for_se: target_se above 6 is infeasible for 64QAM");
    if (target_se < 2.0 - 1e-12)
        throw InvalidParameter(
            "mb_distribution_for_se: target_se below 2 is infeasible (the uniform sign bit "
            "already carries 1 bit per dimension)");

    const double h_target = target_se / 2.0;
    AmplitudeDistribution out;
    out.target_se = target_se;

    if (std::abs(h_target - 1.0) <= 1e-13) {
        out.pr = {0.5, 0.0, 0.0, 0.0};
        out.entropy_per_dimension = 1.0;
        return out;
    }
    if (std::abs(h_target - 3.0) <= 1e-13) {
        out.pr = {0.125, 0.125, 0.125, 0.125};
        out.entropy_per_dimension = 3.0;
        return out;
    }

    // entropy is strictly decreasing in lambda; lambda=30 is far past
    // the point where everything but +-1 has vanished
    double lambda = bisect([h_target](double l) { return entropy_per_dim(l) - h_target; }, 0.0,
                           30.0, 1e-14);
    auto q = mb_magnitudes(lambda);
    for (int j = 0; j < 4; ++j) out.pr[j] = q[j] / 2.0;
    out.entropy_per_dimension = entropy_per_dim(lambda);
    return out;
}

double entropy(const AmplitudeDistribution& dist) {
    double h = 0.0;
    for (double v : dist.pr) h -= 2.0 * xlog2x(v);
    return h;
}

double euclidean_distance(double p_sym, const AmplitudeDistribution& dist) {
    if (!(p_sym > 0)) throw InvalidParameter("euclidean_distance: p_sym must be > 0");
    dist.validate();
    double denom = 0.0;  // 4 * sum k^2 Pr_k = 2 E[k^2] per dimension
    for (int j = 0; j < 4; ++j) {
        double k = kPamMagnitudes[j];
        denom += 4.0 * k * k * dist.pr[j];
    }
    return std::sqrt(p_sym / denom);
}

std::uint8_t gray_bits(int amplitude) {
    switch (amplitude) {
        case -7: return 0b000;
        case -5: return 0b001;
        case -3: return 0b011;
        case -1: return 0b010;
        case +1: return 0b110;
        case +3: return 0b111;
        case +5: return 0b101;
        case +7: return 0b100;
        default: throw InvalidParameter("gray_bits: amplitude must be an odd integer in [-7,7]");
    }
}

int slice_pam8(double x) {
    int level = static_cast<int>(std::lround((x + 7.0) / 2.0)) * 2 - 7;
    if (level < -7) level = -7;
    if (level > 7) level = 7;
    return level;
}

std::vector<std::complex<double>> sample_symbols(const AmplitudeDistribution& dist,
                                                 std::size_t count, std::uint64_t seed) {
    dist.validate();
    if (count < 1) throw InvalidParameter("sample_symbols: count must be >= 1");
    // signed-amplitude cdf over -7,-5,...,+7
    std::array<double, 8> cdf;
    double acc = 0.0;
    for (int idx = 0; idx < 8; ++idx) {
        int mag_idx = idx < 4 ? 3 - idx : idx - 4;
        acc += dist.pr[mag_idx];
        cdf[idx] = acc;
    }
    cdf[7] = 1.0;
    auto draw = [&cdf](double u) {
        int idx = 0;
        while (idx < 7 && u >= cdf[idx]) ++idx;
        return idx < 4 ? -(7 - 2 * idx) : 2 * idx - 7;
    };
    StreamRng rng(seed, 0xA17E5);
    std::vector<std::complex<double>> out(count);
    for (auto& s : out) {
        double i = draw(rng.uniform());
        double q = draw(rng.uniform());
        s = {i, q};
    }
    return out;
}

}  // namespace dscm

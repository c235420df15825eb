#include "ldpcq/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ldpcq {

namespace {

double gauss_cdf(double x, double mean, double sigma) {
    return 0.5 * std::erfc(-(x - mean) / (sigma * std::sqrt(2.0)));
}

}  // namespace

double sigma_from_ebn0(double ebn0_db, double rate) {
    if (rate <= 0 || rate >= 1) throw std::invalid_argument("code rate must be in (0,1)");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

JointPmf awgn_fine_pmf(double sigma, int grid) {
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    if (grid < 2 || grid % 2 != 0) throw std::invalid_argument("grid must be even and >= 2");
    double span = 1.0 + 8.0 * sigma;
    JointPmf pmf;
    for (int k = 0; k < grid; ++k) {
        double lo = -span + 2.0 * span * k / grid;
        double hi = -span + 2.0 * span * (k + 1) / grid;
        double a = k == 0 ? -1e30 : lo;
        double b = k == grid - 1 ? 1e30 : hi;
        // bit 0 transmitted as +1, bit 1 as -1, equiprobable
        double q0 = 0.5 * (gauss_cdf(b, +1.0, sigma) - gauss_cdf(a, +1.0, sigma));
        double q1 = 0.5 * (gauss_cdf(b, -1.0, sigma) - gauss_cdf(a, -1.0, sigma));
        pmf.push(0.5 * (lo + hi), q0, q1);
    }
    return pmf;
}

ChannelModel design_channel_quantizer(double sigma, int w_ch, int grid) {
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    if (grid < (1 << (w_ch + 4))) grid = 1 << (w_ch + 4);
    if (grid % 2 != 0) ++grid;
    JointPmf fine = awgn_fine_pmf(sigma, grid);
    auto res = design_mim_quantizer(fine, w_ch, /*symmetric=*/true);
    ChannelModel ch;
    ch.sigma = sigma;
    ch.w_ch = w_ch;
    ch.quantizer = res.quantizer;
    ch.msg_pmf = res.compressed;
    ch.mi = res.mi;
    return ch;
}

ChannelModel design_uniform_channel(double sigma, int w, int grid) {
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    JointPmf fine = awgn_fine_pmf(sigma, grid);
    int half = max_magnitude(w);
    double best_mi = -1, best_delta = 0;
    JointPmf best_pmf;
    // Step delta in the received-value domain; thresholds at 0, ±delta, ...
    for (int s = 1; s <= 400; ++s) {
        double delta = s * (2.0 / 400.0) * (1.0 + 2.0 * sigma) / half;
        ThresholdQuantizer q;
        q.wbits = w;
        for (int k = half - 1; k >= 1; --k) q.boundaries.push_back(-k * delta);
        q.boundaries.push_back(0.0);
        for (int k = 1; k <= half - 1; ++k) q.boundaries.push_back(k * delta);
        JointPmf msg = apply_threshold_quantizer(q, fine);
        double mi = mutual_information(msg);
        if (mi > best_mi + 1e-15) {
            best_mi = mi;
            best_delta = delta;
            best_pmf = msg;
        }
    }
    ChannelModel ch;
    ch.sigma = sigma;
    ch.w_ch = w;
    ch.quantizer.wbits = w;
    for (int k = half - 1; k >= 1; --k) ch.quantizer.boundaries.push_back(-k * best_delta);
    ch.quantizer.boundaries.push_back(0.0);
    for (int k = 1; k <= half - 1; ++k) ch.quantizer.boundaries.push_back(k * best_delta);
    ch.msg_pmf = best_pmf;
    ch.mi = best_mi;
    return ch;
}

}  // namespace ldpcq

#pragma once

#include "ldpcq/pmf.hpp"
#include "ldpcq/quantizer.hpp"

namespace ldpcq {

// sigma = sqrt(1 / (2 R 10^{EbN0/10})) for BPSK with unit symbol energy.
double sigma_from_ebn0(double ebn0_db, double rate);

struct ChannelModel {
    double sigma = 0;
    int w_ch = 0;
    ThresholdQuantizer quantizer;  // thresholds on the received value y
    JointPmf msg_pmf;              // p(b, t^ch) over T_{w_ch}
    double mi = 0;

    int quantize(double y) const { return quantizer.apply(y); }
};

// Bin-integrated BPSK/AWGN joint pmf p(b, y) on a symmetric grid (tails folded
// into the end bins). grid must be even so that 0 is a bin edge.
JointPmf awgn_fine_pmf(double sigma, int grid);

// Mutual-information-maximizing symmetric threshold quantizer for the channel.
ChannelModel design_channel_quantizer(double sigma, int w_ch, int grid = 2048);

// Uniform-level channel quantizer for offset-min-sum decoders: thresholds at
// multiples of a step delta, delta chosen by scanning for maximum I(B;T).
ChannelModel design_uniform_channel(double sigma, int w, int grid = 4096);

}  // namespace ldpcq

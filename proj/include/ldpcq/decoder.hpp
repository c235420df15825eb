#pragma once

#include <cstdint>
#include <vector>

#include "ldpcq/program.hpp"
#include "ldpcq/qc_code.hpp"

namespace ldpcq {

struct DecodeResult {
    std::vector<uint8_t> bits;
    int iterations_used = 0;
    bool converged = false;
    std::vector<int> syndrome_weight_trace;
    long long saturation_events = 0;
    long long threemin_rescans = 0;
};

struct DecodeOptions {
    // Horizontal partial VN update: recompute the full sum of stored
    // reconstruction values instead of the running accumulator. Both paths
    // must agree exactly when the accumulator never saturates.
    bool iterative_vn = false;
};

// --- standalone node updates (the building blocks, unit-testable) ---

// Extrinsic min approximation: out[n] = prod-of-signs-excl-n * min-mag-excl-n.
void cn_full_min(const int8_t* in, int d, int8_t* out, int offset = 0);

// Extrinsic box-plus: sign product and total-sum-minus-own of |phi_c|,
// compressed back to T_w by the magnitude quantizer.
void cn_full_boxplus(const int8_t* in, int d, const ReconTable& phi_c, const CnMagQuantizer& cq,
                     int8_t* out);

// Extrinsic full variable-node update (total sum minus own term).
void vn_full(const int8_t* cn_msgs, int d, int8_t t_ch, const ReconTable& phi_v,
             const ReconTable& phi_ch, const VnQuantizer& vq, int acc_cap, int8_t* out,
             long long* saturations = nullptr);

// Three-minimum tracker for partial check-node updates: keeps up to three
// exact smallest magnitudes with their layer indices plus the running sign
// product; falls back to a full rescan of the stored per-layer messages when
// the tracked set can no longer serve exact extrinsic minima.
struct ThreeMinTracker {
    uint8_t mags[3] = {0, 0, 0};
    int16_t idx[3] = {-1, -1, -1};
    int nvalid = 0;
    int8_t sign_product = 1;

    void rebuild(const int8_t* msgs, int stride, int d);
    // extrinsic magnitude excluding layer l (requires nvalid >= 2)
    int extrinsic_mag(int l) const { return idx[0] != l ? mags[0] : mags[1]; }
    // replace layer l's message; msgs/stride give the stored per-layer
    // messages (with the new value already written) for rescans.
    // Returns true when a rescan was needed.
    bool replace(int l, int8_t old_msg, int8_t new_msg, const int8_t* msgs, int stride, int d);
};

// --- full decoders ---

DecodeResult decode(const DecoderProgram& program, const QcCode& code,
                    const std::vector<int8_t>& channel_msgs, const DecodeOptions& opt = {});

// Floating-point sum-product baseline, flooding schedule.
DecodeResult decode_bp(const QcCode& code, const std::vector<double>& channel_llrs, int max_iter);

// Fixed-level offset-min-sum decoder (builds the implicit program).
DecodeResult decode_omsq(const QcCode& code, double sigma, int w, int offset, Schedule schedule,
                         int max_iter, const std::vector<int8_t>& channel_msgs);

// Quantize a received vector with the program's channel quantizer.
std::vector<int8_t> quantize_channel(const DecoderProgram& program, const std::vector<double>& y);

}  // namespace ldpcq

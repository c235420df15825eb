#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "ldpcq/pmf.hpp"

namespace ldpcq {

// Messages live on the sign-magnitude alphabet
// T_w = {-2^{w-1}, ..., -1, +1, ..., +2^{w-1}}; zero is excluded.
inline int alphabet_size(int wbits) { return 1 << wbits; }
inline int max_magnitude(int wbits) { return 1 << (wbits - 1); }

// Non-uniform quantizer: K-1 strictly increasing thresholds on the ordered
// value axis. Cell k covers [boundary[k-1], boundary[k]), so a value equal to
// a boundary falls into the upper cell (sign(0) := +1 at the middle boundary).
struct ThresholdQuantizer {
    int wbits = 0;
    std::vector<double> boundaries;

    int levels() const { return alphabet_size(wbits); }
    static int label_of_cell(int cell, int levels) {
        int half = levels / 2;
        return cell < half ? cell - half : cell - half + 1;
    }
    int apply(double y) const;
};

// Symmetric magnitude-threshold quantizer for accumulated integer soft
// values: bounds holds the 2^{w-1}-1 ascending positive magnitude boundaries;
// the output magnitude is 1 plus the number of boundaries at or below |y|.
// sign(0) := +1, saturation at 2^{w-1} is implicit.
struct VnQuantizer {
    int wbits = 0;
    std::vector<int> bounds;

    int apply(long long y) const {
        long long mag = y < 0 ? -y : y;
        int m = 1;
        for (int b : bounds) m += (mag >= b);
        return y < 0 ? -m : m;
    }
    // maps |y| = m to label m (zero promoted to 1): bounds {2, 3, ..., 2^{w-1}}
    static VnQuantizer identity(int wbits);
};

// Odd-symmetric lookup translating a w-bit label to a w'-bit representation
// value; mag[k] is the magnitude for |t| = k+1.
struct ReconTable {
    int wbits = 0;
    int wp_bits = 0;
    std::vector<int> mag;

    int apply(int t) const {
        int m = mag[static_cast<size_t>(std::abs(t)) - 1];
        return t < 0 ? -m : m;
    }
    bool odd_symmetric_monotone() const;
};

struct MimQuantizerResult {
    ThresholdQuantizer quantizer;
    JointPmf compressed;
    double mi = 0;
};

// Exact DP search over contiguous cells of the pmf's point order (which must
// be the LLR order) maximizing I(B;T). With the symmetric flag the boundaries
// come in mirror pairs around a central boundary at the sign change.
MimQuantizerResult design_mim_quantizer(const JointPmf& pmf, int wbits, bool symmetric);

JointPmf apply_threshold_quantizer(const ThresholdQuantizer& q, const JointPmf& pmf);
JointPmf apply_vn_quantizer(const VnQuantizer& q, const JointPmf& pmf);

// LLR-proportional reconstruction: mag = round(scale * min(|LLR|, cap)),
// clamped to w'-1 magnitude bits. min_mag lifts the weakest level (used for
// box-plus reliability tables where magnitude 0 is reserved).
ReconTable make_recon_table(const JointPmf& msg_pmf, int wbits, int wp_bits, double llr_scale,
                            double llr_cap, int min_mag = 0);

// Image of a message pmf under a reconstruction table.
JointPmf recon_pmf(const JointPmf& msg_pmf, const ReconTable& table);

}  // namespace ldpcq

#pragma once

#include <stdexcept>

#include "ldpcq/program.hpp"

namespace ldpcq {

struct DesignOptions {
    int w = 3;
    int wp = 6;
    int w_ch = 0;  // 0 -> same as w
    int iterations = 10;
    CnKind kernel = CnKind::Min;
    // All reconstruction tables of one program share a global LLR scale so
    // that stored reconstruction values stay commensurable across stages.
    // LLRs are clamped at cap_factor times the strongest channel-label LLR;
    // 0 selects the factor by scanning a small candidate set for the best
    // final predicted mutual information.
    double llr_cap_factor = 0;
    int grid = 2048;
};

// Raised when density evolution degenerates (zero-information channel).
struct DegenerateDesign : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DecoderProgram evolve_horizontal(const ChannelModel& channel, int dv, int dc,
                                 const DesignOptions& opt);
DecoderProgram evolve_vertical(const ChannelModel& channel, int dv, int dc,
                               const DesignOptions& opt);
DecoderProgram evolve_flooding(const ChannelModel& channel, int dv, int dc,
                               const DesignOptions& opt);

// Convenience wrapper: designs the channel quantizer at sigma, then runs the
// schedule-specific evolution. schedule HorizontalApp shares the horizontal
// design.
DecoderProgram design_program(double sigma, int dv, int dc, Schedule schedule,
                              const DesignOptions& opt);

// Fixed-level offset-min-sum configuration (no density evolution; identity
// reconstructions, uniform channel levels).
DecoderProgram make_omsq_program(double sigma, int dv, int dc, Schedule schedule, int w,
                                 int offset, int iterations);

// Fold of d-1 i.i.d. message inputs through the two-input check-node kernel.
JointPmf fold_cn_min(const JointPmf& msg, int degree_minus_one);

}  // namespace ldpcq

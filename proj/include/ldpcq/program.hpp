#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldpcq/channel.hpp"
#include "ldpcq/quantizer.hpp"

namespace ldpcq {

enum class Schedule : uint8_t {
    Flooding = 0,
    Horizontal = 1,
    HorizontalApp = 2,
    Vertical = 3,
};

enum class CnKind : uint8_t {
    Min = 0,
    ThreeMin = 1,
    BoxplusNonUniform = 2,
    BoxplusUniform = 3,
    Omsq = 4,
};

const char* to_string(Schedule s);
const char* to_string(CnKind k);
Schedule schedule_from_string(const std::string& s);
CnKind cn_kind_from_string(const std::string& s);

// Box-plus output quantizer in the summed-reliability domain. Small summed
// magnitude means high reliability; cell_max is ascending, cell j covering
// magnitudes up to cell_max[j] maps to output magnitude 2^{w-1} - j.
struct CnMagQuantizer {
    int wbits = 0;
    std::vector<long long> cell_max;

    int apply_mag(long long m) const {
        int half = 1 << (wbits - 1);
        for (size_t j = 0; j < cell_max.size(); ++j)
            if (m <= cell_max[j]) return half - static_cast<int>(j);
        return 1;
    }
};

// Tables for one (iteration, layer) design stage.
struct StageTables {
    VnQuantizer vq;             // quantizer producing the VN messages consumed here
    ReconTable phi_v;           // reconstruction of CN outputs produced here
    ReconTable phi_c;           // box-plus reliability table (box-plus kernels)
    CnMagQuantizer cq;          // box-plus output quantizer
    double mi_msg = 0;          // predicted I(B; t^v) entering the stage
    double mi_cn = 0;           // predicted I(B; t^c) leaving the stage
};

// Complete serialized design artifact for one decoder configuration.
struct DecoderProgram {
    Schedule schedule = Schedule::Flooding;
    CnKind cn_kernel = CnKind::Min;
    int w = 0;
    int wp = 0;
    int w_ch = 0;
    int max_iterations = 0;
    int d_v = 0;
    int d_c = 0;
    int omsq_offset = 0;
    int acc_mag_cap = 0;  // saturation magnitude of the VN accumulator
    double sigma = 0;
    ChannelModel channel;
    ReconTable phi_ch;
    VnQuantizer ch_vq;  // maps phi_ch(t_ch) to the initial w-bit VN message
    std::vector<StageTables> stages;

    int stages_per_iteration() const {
        switch (schedule) {
            case Schedule::Horizontal:
            case Schedule::HorizontalApp: return d_v;
            case Schedule::Vertical: return d_c;
            default: return 1;
        }
    }
    // Iteration is 0-based. Vertical iteration 0 is the single flooding stage.
    const StageTables& stage(int iteration, int layer) const;
    size_t expected_stage_count() const;
    void validate() const;
};

void serialize_program(const DecoderProgram& p, std::ostream& out);
DecoderProgram deserialize_program(std::istream& in);
void save_program(const DecoderProgram& p, const std::string& path);
DecoderProgram load_program(const std::string& path);

// Human-readable table dump.
void dump_program(const DecoderProgram& p, std::ostream& out);

}  // namespace ldpcq

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ldpcq/decoder.hpp"

namespace ldpcq {

// Counter-based normal source: each codeword index yields its own stream, so
// results do not depend on how codewords are distributed over workers. Stream
// origins sit 2^20 counter steps apart, so streams drawing fewer than 2^20
// values never overlap (overlapping origins would correlate codewords).
struct NoiseStream {
    uint64_t state;

    NoiseStream(uint64_t seed, uint64_t index)
        : state(seed ^ (0x9E3779B97F4A7C15ULL * ((index + 1) << 20))) {}

    uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double next_unit();    // uniform in (0, 1)
    double next_normal();  // standard normal (Box-Muller, one value per pair)

  private:
    bool have_spare_ = false;
    double spare_ = 0;
};

struct SimOptions {
    uint64_t seed = 1;
    long long min_frame_errors = 200;
    long long max_codewords = 10'000'000;
    long long block_codewords = 4096;  // stopping is checked on block edges
    int threads = 1;
    DecodeOptions decode;
};

struct SimRecord {
    std::string label;
    double ebn0_db = 0;
    double sigma = 0;
    long long codewords = 0;
    long long bit_errors = 0;
    long long frame_errors = 0;
    double avg_iterations = 0;
    double seconds = 0;
    long long saturation_events = 0;
    long long threemin_rescans = 0;

    double ber() const { return codewords ? static_cast<double>(bit_errors) / (codewords * bits_per_codeword) : 0; }
    double fer() const { return codewords ? static_cast<double>(frame_errors) / codewords : 0; }
    long long bits_per_codeword = 0;
};

// Monte Carlo over the all-zero codeword with BPSK on an AWGN channel whose
// noise level follows ebn0_db at the code rate; the channel quantizer comes
// from the program. Stops after min_frame_errors (checked per block) or
// max_codewords.
SimRecord simulate_point(const DecoderProgram& program, const QcCode& code, double ebn0_db,
                         const SimOptions& opt);

// Same experiment with the floating-point sum-product baseline.
SimRecord simulate_bp_point(const QcCode& code, double ebn0_db, int max_iter,
                            const SimOptions& opt);

// Uncoded BPSK bit error rate at the given Eb/N0 (rate 1).
SimRecord simulate_uncoded_point(double ebn0_db, long long bits, uint64_t seed);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SimRecord& r);

}  // namespace ldpcq

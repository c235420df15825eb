#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ldpcq/de_designer.hpp"
#include "ldpcq/simulate.hpp"

using namespace ldpcq;

namespace {

QcCode small_code() {
    std::istringstream in("Z 7\n0 1 2 3\n0 2 4 6\n");
    return QcCode(BaseMatrix::parse(in));
}

}  // namespace

TEST_CASE("noise streams are deterministic and index-keyed") {
    NoiseStream a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 100; ++i) {
        double x = a.next_normal();
        CHECK(x == b.next_normal());
    }
    // different codeword indices give different streams
    NoiseStream a2(42, 7);
    bool differs = false;
    for (int i = 0; i < 10; ++i) differs |= (a2.next_normal() != c.next_normal());
    CHECK(differs);
}

TEST_CASE("normal source moments") {
    NoiseStream s(2024, 0);
    const int n = 1'000'000;
    double sum = 0, sum2 = 0, sum3 = 0, sum4 = 0;
    for (int i = 0; i < n; ++i) {
        double x = s.next_normal();
        sum += x;
        sum2 += x * x;
        sum3 += x * x * x;
        sum4 += x * x * x * x;
    }
    // 5-sigma bounds on the empirical moments of a standard normal
    CHECK(std::abs(sum / n) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(sum3 / n) < 5.0 * std::sqrt(15.0 / n));
    CHECK(sum4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("uniform source stays in the open unit interval") {
    NoiseStream s(7, 3);
    for (int i = 0; i < 10000; ++i) {
        double u = s.next_unit();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uncoded error rate matches the Q function") {
    // Q(1/sigma) at 4 dB, rate 1: sigma = sqrt(1/(2*10^0.4)) = 0.446...
    double expect = 0.0125008180407376;
    long long bits = 4'000'000;
    SimRecord r = simulate_uncoded_point(4.0, bits, 99);
    double p = r.ber();
    double se = std::sqrt(expect * (1 - expect) / bits);
    CHECK(std::abs(p - expect) < 4.0 * se);
}

TEST_CASE("simulation counts do not depend on the worker count") {
    QcCode code = small_code();
    DecoderProgram p = make_omsq_program(sigma_from_ebn0(3.0, code.rate()), code.dv(), code.dc(),
                                         Schedule::Horizontal, 4, 1, 8);
    SimOptions o;
    o.seed = 5;
    o.min_frame_errors = 50;
    o.max_codewords = 4096;
    o.block_codewords = 256;
    o.threads = 1;
    SimRecord one = simulate_point(p, code, 3.0, o);
    o.threads = 3;
    SimRecord three = simulate_point(p, code, 3.0, o);
    CHECK(one.codewords == three.codewords);
    CHECK(one.bit_errors == three.bit_errors);
    CHECK(one.frame_errors == three.frame_errors);
    CHECK(one.avg_iterations == doctest::Approx(three.avg_iterations).epsilon(1e-12));
}

TEST_CASE("stopping rules") {
    QcCode code = small_code();
    DecoderProgram p = make_omsq_program(sigma_from_ebn0(2.0, code.rate()), code.dv(), code.dc(),
                                         Schedule::Horizontal, 4, 1, 8);
    SimOptions o;
    o.seed = 11;
    o.block_codewords = 128;

    SUBCASE("frame error target") {
        o.min_frame_errors = 20;
        o.max_codewords = 1'000'000;
        SimRecord r = simulate_point(p, code, 2.0, o);
        CHECK(r.frame_errors >= 20);
        CHECK(r.codewords % o.block_codewords == 0);
    }
    SUBCASE("codeword budget") {
        o.min_frame_errors = 1'000'000'000;
        o.max_codewords = 512;
        SimRecord r = simulate_point(p, code, 2.0, o);
        CHECK(r.codewords == 512);
    }
}

TEST_CASE("record bookkeeping") {
    QcCode code = small_code();
    DecoderProgram p = make_omsq_program(sigma_from_ebn0(3.0, code.rate()), code.dv(), code.dc(),
                                         Schedule::Horizontal, 4, 1, 8);
    SimOptions o;
    o.seed = 3;
    o.min_frame_errors = 10;
    o.max_codewords = 2048;
    o.block_codewords = 256;
    SimRecord r = simulate_point(p, code, 3.0, o);
    CHECK(r.bits_per_codeword == code.n());
    CHECK(r.sigma == doctest::Approx(sigma_from_ebn0(3.0, code.rate())));
    CHECK(r.avg_iterations >= 1.0);
    CHECK(r.avg_iterations <= p.max_iterations);
    CHECK(r.ber() <= r.fer());
    CHECK(r.label.find("horizontal") != std::string::npos);
}

TEST_CASE("baseline sum-product outperforms quantized decoding") {
    QcCode code(BaseMatrix::load(std::string(CODES_DIR) + "/r56_z512.txt"));
    double ebn0 = 3.1;
    DecoderProgram p = make_omsq_program(sigma_from_ebn0(ebn0, code.rate()), code.dv(), code.dc(),
                                         Schedule::Horizontal, 4, 1, 10);
    SimOptions o;
    o.seed = 17;
    o.min_frame_errors = 30;
    o.max_codewords = 512;
    o.block_codewords = 256;
    SimRecord q = simulate_point(p, code, ebn0, o);
    SimRecord bp = simulate_bp_point(code, ebn0, 30, o);
    CHECK(q.bit_errors > 0);
    CHECK(bp.ber() < q.ber());
}

TEST_CASE("csv output") {
    std::ostringstream out;
    write_csv_header(out);
    SimRecord r;
    r.label = "horizontal/min/w3";
    r.ebn0_db = 4.0;
    r.sigma = 0.5;
    r.codewords = 1000;
    r.bit_errors = 50;
    r.frame_errors = 5;
    r.avg_iterations = 3.25;
    r.seconds = 1.5;
    r.bits_per_codeword = 100;
    write_csv_row(out, r);
    std::istringstream in(out.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "label,ebn0_db,codewords,bit_errors,frame_errors,ber,fer,avg_iters,seconds");
    CHECK(row.find("horizontal/min/w3,4") == 0);
    CHECK(row.find(",0.005,") != std::string::npos);  // fer
    CHECK(row.find("0.0005,") != std::string::npos);  // ber
    CHECK(row.find("3.25") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ldpcq/channel.hpp"

using namespace ldpcq;

TEST_CASE("noise level from Eb/N0") {
    // closed form: sigma = sqrt(1 / (2 R 10^{EbN0/10}))
    CHECK(sigma_from_ebn0(4.0, 5.0 / 6.0) == doctest::Approx(0.48873745746780894).epsilon(1e-14));
    CHECK(sigma_from_ebn0(0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(sigma_from_ebn0(4.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma_from_ebn0(4.0, 1.0), std::invalid_argument);
}

TEST_CASE("fine channel pmf is a normalized symmetric distribution") {
    JointPmf p = awgn_fine_pmf(0.48873745746780894, 2048);
    CHECK(p.size() == 2048);
    CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.pb0() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.is_symmetric(1e-9));
    // mass concentrated near +1 for bit 0
    double mean0 = 0;
    for (size_t i = 0; i < p.size(); ++i) mean0 += p.value[i] * p.p0[i] * 2.0;
    CHECK(mean0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("fine pmf approaches the analytic channel information") {
    // I(B;Y) for BPSK over AWGN at sigma = 0.4887374..., quadrature value
    double analytic = 0.9215645050846736;
    JointPmf p = awgn_fine_pmf(0.48873745746780894, 4096);
    CHECK(mutual_information(p) == doctest::Approx(analytic).epsilon(1e-6));
}

TEST_CASE("fine pmf input validation") {
    CHECK_THROWS_AS(awgn_fine_pmf(0.0, 2048), std::invalid_argument);
    CHECK_THROWS_AS(awgn_fine_pmf(0.5, 7), std::invalid_argument);
}

TEST_CASE("designed channel quantizer") {
    double sigma = 0.48873745746780894;
    ChannelModel ch = design_channel_quantizer(sigma, 3);
    CHECK(ch.w_ch == 3);
    CHECK(ch.quantizer.boundaries.size() == 7);
    // symmetric thresholds with the central one at zero
    CHECK(ch.quantizer.boundaries[3] == doctest::Approx(0.0));
    for (int k = 0; k < 3; ++k)
        CHECK(ch.quantizer.boundaries[k] == doctest::Approx(-ch.quantizer.boundaries[6 - k]));
    // compression can only lose information
    CHECK(ch.mi < 0.9215645050846736);
    CHECK(ch.mi > 0.9);
    CHECK(ch.msg_pmf.total() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ch.msg_pmf.size() == 8);
    // label of a strong positive observation
    CHECK(ch.quantize(10.0) == 4);
    CHECK(ch.quantize(-10.0) == -4);
    CHECK(ch.quantize(0.0) == 1);  // sign(0) := +1
}

TEST_CASE("optimal thresholds beat the best uniform ones") {
    double sigma = 0.48873745746780894;
    for (int w : {2, 3, 4}) {
        ChannelModel mim = design_channel_quantizer(sigma, w);
        ChannelModel uni = design_uniform_channel(sigma, w);
        CHECK(mim.mi >= uni.mi - 1e-9);
        // and the uniform design is not far off
        CHECK(uni.mi > 0.95 * mim.mi);
    }
}

TEST_CASE("more channel bits preserve more information") {
    double sigma = 0.48873745746780894;
    double prev = 0;
    for (int w : {2, 3, 4}) {
        ChannelModel ch = design_channel_quantizer(sigma, w);
        CHECK(ch.mi > prev);
        prev = ch.mi;
    }
}

TEST_CASE("uniform channel levels are equally spaced") {
    ChannelModel ch = design_uniform_channel(0.5, 4);
    REQUIRE(ch.quantizer.boundaries.size() == 15);
    double delta = ch.quantizer.boundaries[8] - ch.quantizer.boundaries[7];
    CHECK(delta > 0);
    for (size_t k = 1; k < ch.quantizer.boundaries.size(); ++k)
        CHECK(ch.quantizer.boundaries[k] - ch.quantizer.boundaries[k - 1] ==
              doctest::Approx(delta).epsilon(1e-9));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "ldpcq/complexity.hpp"

using namespace ldpcq;

namespace {

CostBreakdown cost_of(const std::string& label) {
    for (const auto& cfg : reference_configurations())
        if (cfg.label == label) return decoder_cost(cfg);
    throw std::runtime_error("unknown configuration " + label);
}

}  // namespace

TEST_CASE("barrel shifter gate table") {
    // gates per shifted bit = 3 n_mux / Z for the tabulated lifting sizes
    std::map<int, int> n_mux = {{48, 336},   {64, 448},   {128, 1024},
                                {256, 2304}, {384, 3840}, {512, 5120}};
    for (auto [z, n] : n_mux)
        CHECK(shifter_gates_per_bit(z) == doctest::Approx(3.0 * n / z).epsilon(1e-14));
    CHECK(shifter_gates_per_bit(512) == doctest::Approx(30.0));
    CHECK(shifter_gates_per_bit(48) == doctest::Approx(21.0));
    CHECK_THROWS_AS(shifter_gates_per_bit(100), std::invalid_argument);
    CHECK_THROWS_AS(shifter_gates_per_bit(0), std::invalid_argument);
}

TEST_CASE("adder gate model") {
    for (int b = 1; b <= 9; ++b) CHECK(arith_gates(b) == 5 * b);
    CHECK_THROWS_AS(arith_gates(0), std::invalid_argument);
    CHECK_THROWS_AS(arith_gates(10), std::invalid_argument);
}

TEST_CASE("node operation counts") {
    // full check node, min approximation: d + log2(d) - 2 comparisons
    NodeCost c = node_cost(NodeType::Cn, UpdateType::Full, NodeKernel::Min, 18, 3);
    CHECK(c.comparisons == doctest::Approx(18 + std::log2(18.0) - 2));
    CHECK(c.additions == 0);

    c = node_cost(NodeType::Cn, UpdateType::Full, NodeKernel::NonUniform, 18, 3);
    CHECK(c.additions == 34);
    CHECK(c.comparisons == 36);
    CHECK(c.translations == 18);

    c = node_cost(NodeType::Cn, UpdateType::Full, NodeKernel::Uniform, 18, 3);
    CHECK(c.additions == 34);
    CHECK(c.translations == 16);

    c = node_cost(NodeType::Cn, UpdateType::Partial, NodeKernel::ThreeMin, 18, 3);
    CHECK(c.comparisons == 3);

    c = node_cost(NodeType::Cn, UpdateType::Partial, NodeKernel::NonUniform, 18, 3);
    CHECK(c.additions == 2);
    CHECK(c.comparisons == 2);

    c = node_cost(NodeType::Vn, UpdateType::Full, NodeKernel::Uniform, 3, 3);
    CHECK(c.additions == 5);
    CHECK(c.translations == 4);

    c = node_cost(NodeType::Vn, UpdateType::Partial, NodeKernel::Uniform, 3, 3);
    CHECK(c.additions == 2);
    CHECK(c.translations == 3);

    CHECK_THROWS_AS(node_cost(NodeType::Cn, UpdateType::Full, NodeKernel::ThreeMin, 18, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(node_cost(NodeType::Vn, UpdateType::Full, NodeKernel::Min, 3, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(node_cost(NodeType::Cn, UpdateType::Full, NodeKernel::Min, 1, 3),
                    std::invalid_argument);
}

TEST_CASE("reference configuration totals") {
    // designed 3-bit decoders with 6-bit reconstruction
    CostBreakdown h = cost_of("MIM-H");
    CHECK(h.cn_gates_per_edge == doctest::Approx(11.2055).epsilon(1e-4));
    CHECK(h.vn_gates_per_edge == doctest::Approx(70.0));
    CHECK(h.network_gates_per_edge == doctest::Approx(180.0));
    CHECK(h.total_gates_per_edge == doctest::Approx(261.0).epsilon(0.005));
    CHECK(h.memory_bits_per_edge == doctest::Approx(2.0));

    CostBreakdown ha = cost_of("MIM-HA");
    CHECK(ha.network_gates_per_edge == doctest::Approx(240.0));
    CHECK(ha.memory_bits_per_edge == doctest::Approx(1.5).epsilon(0.01));
    CHECK(ha.lower_bound);

    CostBreakdown v = cost_of("MIM-V");
    CHECK(v.cn_gates_per_edge == doctest::Approx(30.0));
    CHECK(v.vn_gates_per_edge == doctest::Approx(58.33).epsilon(1e-3));
    CHECK(v.total_gates_per_edge == doctest::Approx(268.0).epsilon(0.005));
    CHECK(v.memory_bits_per_edge == doctest::Approx(2.111).epsilon(1e-3));

    CostBreakdown f = cost_of("MIM-F");
    CHECK(f.total_gates_per_edge == doctest::Approx(250.0).epsilon(0.005));
    CHECK(f.memory_bits_per_edge == 0);

    // fixed-level 4-bit offset-min-sum decoders
    CostBreakdown oh = cost_of("OMSQ-H");
    CHECK(oh.cn_gates_per_edge == doctest::Approx(18.475).epsilon(1e-4));
    CHECK(oh.vn_gates_per_edge == doctest::Approx(60.0));
    CHECK(oh.network_gates_per_edge == doctest::Approx(240.0));
    CHECK(oh.memory_bits_per_edge == doctest::Approx(8.0 / 3.0).epsilon(1e-6));

    CostBreakdown oha = cost_of("OMSQ-HA");
    CHECK(oha.network_gates_per_edge == doctest::Approx(180.0));
    CHECK(oha.memory_bits_per_edge == doctest::Approx(1.61).epsilon(0.01));

    CostBreakdown ov = cost_of("OMSQ-V");
    CHECK(ov.cn_gates_per_edge == doctest::Approx(45.0));
    CHECK(ov.vn_gates_per_edge == doctest::Approx(50.0));
    CHECK(ov.total_gates_per_edge == doctest::Approx(335.0).epsilon(0.005));

    CostBreakdown of = cost_of("OMSQ-F");
    CHECK(of.total_gates_per_edge == doctest::Approx(309.0).epsilon(0.005));
    CHECK(of.memory_bits_per_edge == 0);
}

TEST_CASE("totals are the sum of their parts") {
    for (const auto& cfg : reference_configurations()) {
        CostBreakdown c = decoder_cost(cfg);
        CHECK(c.total_gates_per_edge ==
              doctest::Approx(c.cn_gates_per_edge + c.vn_gates_per_edge +
                              c.network_gates_per_edge));
    }
}

TEST_CASE("cost grows with the message resolution") {
    for (Schedule s : {Schedule::Horizontal, Schedule::Vertical, Schedule::Flooding}) {
        double prev = 0;
        for (int w : {2, 3, 4}) {
            DecoderConfig cfg{"scan", s, s == Schedule::Vertical ? CnKind::ThreeMin : CnKind::Min,
                              512, 3, 18, w, w + 3};
            CostBreakdown c = decoder_cost(cfg);
            CHECK(c.total_gates_per_edge > prev);
            prev = c.total_gates_per_edge;
        }
    }
}

TEST_CASE("box-plus kernels cost more than the min approximation") {
    DecoderConfig min_cfg{"min", Schedule::Horizontal, CnKind::Min, 512, 3, 18, 3, 6};
    DecoderConfig bp_cfg{"bp", Schedule::Horizontal, CnKind::BoxplusNonUniform, 512, 3, 18, 3, 6};
    CHECK(decoder_cost(bp_cfg).cn_gates_per_edge > decoder_cost(min_cfg).cn_gates_per_edge);
}

TEST_CASE("unsupported lifting size propagates") {
    DecoderConfig cfg{"bad", Schedule::Horizontal, CnKind::Min, 100, 3, 18, 3, 6};
    CHECK_THROWS_AS(decoder_cost(cfg), std::invalid_argument);
}

#pragma once

#include <string>
#include <vector>

#include "ldpcq/program.hpp"

namespace ldpcq {

// Gates per shifted bit of a Z-cyclic barrel shifter (3 gates per 2:1 mux).
// Throws std::invalid_argument for an untabulated lifting size.
double shifter_gates_per_bit(int z);

// Ripple-carry adder/comparator gate count, 5 gates per full-adder bit.
int arith_gates(int bits);

enum class NodeType { Cn, Vn };
enum class UpdateType { Full, Partial };
enum class NodeKernel { NonUniform, Uniform, Min, ThreeMin };

struct NodeCost {
    double additions = 0;
    double comparisons = 0;
    double translations = 0;
};

// Operation counts for one node update (per node, not per edge).
// Throws std::invalid_argument for combinations without an implementation.
NodeCost node_cost(NodeType node, UpdateType update, NodeKernel kernel, int d, int w);

struct DecoderConfig {
    std::string label;
    Schedule schedule = Schedule::Horizontal;
    CnKind kernel = CnKind::Min;
    int z = 512;
    int d_v = 3;
    int d_c = 18;
    int w = 3;
    int wp = 6;  // reconstruction resolution (ignored for offset-min-sum)
};

struct CostBreakdown {
    double cn_gates_per_edge = 0;
    double vn_gates_per_edge = 0;
    double network_gates_per_edge = 0;
    double total_gates_per_edge = 0;
    double memory_bits_per_edge = 0;
    bool lower_bound = false;  // VN figure excludes an extra rescaling step
    std::vector<std::string> notes;
};

CostBreakdown decoder_cost(const DecoderConfig& cfg);

// The eight standard configurations of the per-edge cost comparison.
std::vector<DecoderConfig> reference_configurations();

}  // namespace ldpcq

#pragma once

#include <cstddef>
#include <vector>

namespace ldpcq {

// Discrete joint distribution p(b, y) of a binary variable b and a scalar
// observation y. Points are kept sorted ascending by value; for the families
// handled here (channel outputs, LLR-proportional integer sums, reliability
// axes) that order coincides with the LLR order.
struct JointPmf {
    std::vector<double> value;
    std::vector<double> p0;  // p(b = 0, y)
    std::vector<double> p1;  // p(b = 1, y)

    size_t size() const { return value.size(); }
    double total() const;
    double pb0() const;
    double pb1() const;
    double llr(size_t i) const;  // log p0/p1, +-inf on zero mass

    void push(double v, double q0, double q1) {
        value.push_back(v);
        p0.push_back(q0);
        p1.push_back(q1);
    }

    // Sorts by value and merges coincident points.
    void canonicalize(double value_tol = 1e-9);
    // Rescales the mass to sum to exactly 1 (pure float-drift correction).
    void normalize();
    // Throws std::invalid_argument if total mass deviates from 1 beyond tol.
    void check_normalized(double tol = 1e-12) const;
    // p(0, y) == p(1, -y) point-wise.
    bool is_symmetric(double tol = 1e-9) const;

    static JointPmf point_mass(double v, double q0 = 0.5, double q1 = 0.5);
};

double mutual_information(const JointPmf& pmf);

// Distribution of y_a + y_b for conditionally independent summands on integer
// grids. Both inputs must share the same bit marginals.
JointPmf pmf_of_sum(const JointPmf& a, const JointPmf& b);

enum class PairKernel {
    MinMagnitude,  // min of magnitudes (min approximation)
    SumMagnitude,  // sum of magnitudes (box-plus reliability domain)
};

// Two-input check-node kernel: output bit is b_a xor b_b, output sign the
// sign product, magnitude combined per kernel. Inputs are sign-magnitude
// integer grids with uniform bit marginals.
JointPmf pmf_of_cn_pair(const JointPmf& a, const JointPmf& b, PairKernel kernel);

}  // namespace ldpcq

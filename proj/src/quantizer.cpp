#include "ldpcq/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldpcq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double xlog2x_over(double x, double denom) {
    if (x <= 0 || denom <= 0) return 0;
    return x * std::log2(x / denom);
}

// MI contribution of one cell with joint masses (q0, q1) given bit marginals.
double cell_score(double q0, double q1, double b0, double b1) {
    double qc = q0 + q1;
    if (qc <= 0) return 0;
    return xlog2x_over(q0, b0 * qc) + xlog2x_over(q1, b1 * qc);
}

struct Prefix {
    std::vector<double> c0, c1;
    explicit Prefix(const JointPmf& p) : c0(p.size() + 1, 0), c1(p.size() + 1, 0) {
        for (size_t i = 0; i < p.size(); ++i) {
            c0[i + 1] = c0[i] + p.p0[i];
            c1[i + 1] = c1[i] + p.p1[i];
        }
    }
    double q0(size_t i, size_t j) const { return c0[j + 1] - c0[i]; }  // inclusive [i, j]
    double q1(size_t i, size_t j) const { return c1[j + 1] - c1[i]; }
};

// dp over `n` points into `cells` contiguous groups maximizing the summed
// score(i, j) of groups [i, j]. Returns the optimal last-point-of-group list.
template <typename Score>
double partition_dp(size_t n, int cells, Score score, std::vector<size_t>& ends) {
    std::vector<std::vector<double>> best(cells + 1, std::vector<double>(n + 1, kNegInf));
    std::vector<std::vector<size_t>> from(cells + 1, std::vector<size_t>(n + 1, 0));
    best[0][0] = 0;
    for (int k = 1; k <= cells; ++k) {
        for (size_t j = k; j + static_cast<size_t>(cells - k) <= n; ++j) {
            for (size_t i = k - 1; i < j; ++i) {
                if (best[k - 1][i] == kNegInf) continue;
                double v = best[k - 1][i] + score(i, j - 1);
                if (v > best[k][j]) {
                    best[k][j] = v;
                    from[k][j] = i;
                }
            }
        }
    }
    ends.clear();
    size_t j = n;
    for (int k = cells; k >= 1; --k) {
        ends.push_back(j - 1);
        j = from[k][j];
    }
    std::reverse(ends.begin(), ends.end());
    return best[cells][n];
}

}  // namespace

int ThresholdQuantizer::apply(double y) const {
    // cell index = number of boundaries <= y, so a value sitting exactly on a
    // boundary lands in the upper cell (sign(0) := +1 at the middle boundary).
    int cell = static_cast<int>(std::upper_bound(boundaries.begin(), boundaries.end(), y) -
                                boundaries.begin());
    return label_of_cell(cell, levels());
}

bool ReconTable::odd_symmetric_monotone() const {
    for (size_t k = 1; k < mag.size(); ++k)
        if (mag[k] < mag[k - 1]) return false;
    return mag.empty() ? false : mag.back() < (1 << (wp_bits - 1));
}

JointPmf apply_threshold_quantizer(const ThresholdQuantizer& q, const JointPmf& pmf) {
    JointPmf out;
    int levels = q.levels();
    std::vector<double> a0(levels, 0), a1(levels, 0);
    for (size_t i = 0; i < pmf.size(); ++i) {
        int label = q.apply(pmf.value[i]);
        int cell = label < 0 ? label + levels / 2 : label + levels / 2 - 1;
        a0[cell] += pmf.p0[i];
        a1[cell] += pmf.p1[i];
    }
    for (int c = 0; c < levels; ++c)
        out.push(ThresholdQuantizer::label_of_cell(c, levels), a0[c], a1[c]);
    return out;
}

VnQuantizer VnQuantizer::identity(int wbits) {
    VnQuantizer q;
    q.wbits = wbits;
    for (int m = 2; m <= max_magnitude(wbits); ++m) q.bounds.push_back(m);
    return q;
}

JointPmf apply_vn_quantizer(const VnQuantizer& q, const JointPmf& pmf) {
    JointPmf out;
    int half = max_magnitude(q.wbits);
    std::vector<double> a0(2 * half, 0), a1(2 * half, 0);
    for (size_t i = 0; i < pmf.size(); ++i) {
        long long v = static_cast<long long>(std::llround(pmf.value[i]));
        int label = q.apply(v);
        int idx = label < 0 ? label + half : label + half - 1;
        a0[idx] += pmf.p0[i];
        a1[idx] += pmf.p1[i];
    }
    for (int idx = 0; idx < 2 * half; ++idx)
        out.push(idx < half ? idx - half : idx - half + 1, a0[idx], a1[idx]);
    return out;
}

MimQuantizerResult design_mim_quantizer(const JointPmf& pmf, int wbits, bool symmetric) {
    pmf.check_normalized(1e-9);
    int levels = alphabet_size(wbits);
    if (pmf.size() < static_cast<size_t>(levels))
        throw std::invalid_argument("design_mim_quantizer: alphabet smaller than 2^w");
    {
        size_t carriers = 0;
        for (size_t i = 0; i < pmf.size(); ++i)
            if (pmf.p0[i] + pmf.p1[i] > 0) ++carriers;
        if (carriers < 2) throw std::invalid_argument("design_mim_quantizer: degenerate point-mass input");
    }

    double b0 = pmf.pb0(), b1 = pmf.pb1();
    ThresholdQuantizer q;
    q.wbits = wbits;

    if (!symmetric) {
        Prefix pre(pmf);
        std::vector<size_t> ends;
        partition_dp(pmf.size(), levels,
                     [&](size_t i, size_t j) { return cell_score(pre.q0(i, j), pre.q1(i, j), b0, b1); },
                     ends);
        for (size_t c = 0; c + 1 < ends.size(); ++c) {
            size_t j = ends[c];
            q.boundaries.push_back(0.5 * (pmf.value[j] + pmf.value[j + 1]));
        }
    } else {
        if (!pmf.is_symmetric(1e-6))
            throw std::invalid_argument("design_mim_quantizer: symmetric design on asymmetric pmf");
        // Fold onto the nonnegative half; a point at 0 (its own mirror) is
        // assigned to the lowest positive cell per the sign(0) := +1 rule.
        JointPmf half;
        double z0 = 0, z1 = 0;
        for (size_t i = 0; i < pmf.size(); ++i) {
            if (std::abs(pmf.value[i]) < 1e-12) {
                z0 = pmf.p0[i];
                z1 = pmf.p1[i];
                half.push(0.0, z0, z1);
            } else if (pmf.value[i] > 0) {
                half.push(pmf.value[i], pmf.p0[i], pmf.p1[i]);
            }
        }
        int hcells = levels / 2;
        if (half.size() < static_cast<size_t>(hcells))
            throw std::invalid_argument("design_mim_quantizer: alphabet smaller than 2^w (symmetric)");
        Prefix pre(half);
        bool has_zero = !half.value.empty() && half.value.front() == 0.0;
        std::vector<size_t> ends;
        partition_dp(half.size(), hcells,
                     [&](size_t i, size_t j) {
                         double a0 = pre.q0(i, j), a1 = pre.q1(i, j);
                         double m0 = a1, m1 = a0;
                         if (has_zero && i == 0) {
                             m0 -= z1;
                             m1 -= z0;
                         }
                         return cell_score(a0, a1, b0, b1) + cell_score(m0, m1, b0, b1);
                     },
                     ends);
        std::vector<double> pos;
        for (size_t c = 0; c + 1 < ends.size(); ++c) {
            size_t j = ends[c];
            pos.push_back(0.5 * (half.value[j] + half.value[j + 1]));
        }
        for (auto it = pos.rbegin(); it != pos.rend(); ++it) q.boundaries.push_back(-*it);
        q.boundaries.push_back(0.0);
        for (double v : pos) q.boundaries.push_back(v);
    }

    MimQuantizerResult res;
    res.quantizer = q;
    res.compressed = apply_threshold_quantizer(q, pmf);
    res.mi = mutual_information(res.compressed);
    return res;
}

ReconTable make_recon_table(const JointPmf& msg_pmf, int wbits, int wp_bits, double llr_scale,
                            double llr_cap, int min_mag) {
    int half = max_magnitude(wbits);
    int mag_cap = (1 << (wp_bits - 1)) - 1;
    ReconTable t;
    t.wbits = wbits;
    t.wp_bits = wp_bits;
    t.mag.assign(half, 0);
    auto find = [&](int label) -> std::pair<double, double> {
        for (size_t i = 0; i < msg_pmf.size(); ++i)
            if (std::llround(msg_pmf.value[i]) == label) return {msg_pmf.p0[i], msg_pmf.p1[i]};
        return {0, 0};
    };
    for (int m = 1; m <= half; ++m) {
        auto [pp0, pp1] = find(m);
        auto [np0, np1] = find(-m);
        // symmetrized LLR of the level
        double num = pp0 + np1, den = pp1 + np0;
        double llr;
        if (den <= 0 && num <= 0)
            llr = llr_cap;  // unused level, saturate
        else if (den <= 0)
            llr = llr_cap;
        else if (num <= 0)
            llr = 0;  // pathological level; weakest weight
        else
            llr = std::log(num / den);
        if (llr < 0) llr = 0;
        if (llr > llr_cap) llr = llr_cap;
        int mag = static_cast<int>(std::lround(llr_scale * llr));
        if (mag < min_mag) mag = min_mag;
        if (mag > mag_cap) mag = mag_cap;
        t.mag[m - 1] = mag;
    }
    for (int m = 1; m < half; ++m)
        if (t.mag[m] < t.mag[m - 1]) t.mag[m] = t.mag[m - 1];
    return t;
}

JointPmf recon_pmf(const JointPmf& msg_pmf, const ReconTable& table) {
    JointPmf out;
    for (size_t i = 0; i < msg_pmf.size(); ++i) {
        int label = static_cast<int>(std::llround(msg_pmf.value[i]));
        out.push(table.apply(label), msg_pmf.p0[i], msg_pmf.p1[i]);
    }
    out.canonicalize();
    return out;
}

}  // namespace ldpcq

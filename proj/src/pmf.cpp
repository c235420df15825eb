#include "ldpcq/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ldpcq {

namespace {

long long int_value(double v, const char* what) {
    double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw std::invalid_argument(std::string(what) + ": non-integer grid value");
    return static_cast<long long>(r);
}

}  // namespace

double JointPmf::total() const {
    double t = 0;
    for (size_t i = 0; i < size(); ++i) t += p0[i] + p1[i];
    return t;
}

double JointPmf::pb0() const { return std::accumulate(p0.begin(), p0.end(), 0.0); }
double JointPmf::pb1() const { return std::accumulate(p1.begin(), p1.end(), 0.0); }

double JointPmf::llr(size_t i) const {
    if (p1[i] <= 0) return std::numeric_limits<double>::infinity();
    if (p0[i] <= 0) return -std::numeric_limits<double>::infinity();
    return std::log(p0[i] / p1[i]);
}

void JointPmf::canonicalize(double value_tol) {
    std::vector<size_t> idx(size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return value[a] < value[b]; });
    JointPmf out;
    for (size_t k : idx) {
        if (!out.value.empty() && std::abs(out.value.back() - value[k]) <= value_tol) {
            out.p0.back() += p0[k];
            out.p1.back() += p1[k];
        } else {
            out.push(value[k], p0[k], p1[k]);
        }
    }
    *this = std::move(out);
}

void JointPmf::normalize() {
    double t = total();
    if (t <= 0) throw std::invalid_argument("cannot normalize an empty pmf");
    for (size_t i = 0; i < size(); ++i) {
        p0[i] /= t;
        p1[i] /= t;
    }
}

void JointPmf::check_normalized(double tol) const {
    for (size_t i = 0; i < size(); ++i)
        if (p0[i] < -tol || p1[i] < -tol) throw std::invalid_argument("negative probability mass");
    if (std::abs(total() - 1.0) > tol) throw std::invalid_argument("pmf not normalized");
}

bool JointPmf::is_symmetric(double tol) const {
    for (size_t i = 0; i < size(); ++i) {
        double neg = -value[i];
        auto it = std::lower_bound(value.begin(), value.end(), neg - 1e-9);
        if (it == value.end() || std::abs(*it - neg) > 1e-9) return false;
        size_t j = static_cast<size_t>(it - value.begin());
        if (std::abs(p0[i] - p1[j]) > tol) return false;
    }
    return true;
}

JointPmf JointPmf::point_mass(double v, double q0, double q1) {
    JointPmf p;
    p.push(v, q0, q1);
    return p;
}

double mutual_information(const JointPmf& pmf) {
    pmf.check_normalized(1e-6);
    double b0 = pmf.pb0(), b1 = pmf.pb1();
    double mi = 0;
    for (size_t i = 0; i < pmf.size(); ++i) {
        double py = pmf.p0[i] + pmf.p1[i];
        if (py <= 0) continue;
        if (pmf.p0[i] > 0) mi += pmf.p0[i] * std::log2(pmf.p0[i] / (b0 * py));
        if (pmf.p1[i] > 0) mi += pmf.p1[i] * std::log2(pmf.p1[i] / (b1 * py));
    }
    return mi;
}

JointPmf pmf_of_sum(const JointPmf& a, const JointPmf& b) {
    if (std::abs(a.pb0() - b.pb0()) > 1e-9 || std::abs(a.pb1() - b.pb1()) > 1e-9)
        throw std::invalid_argument("pmf_of_sum: bit-marginal mismatch");
    double b0 = a.pb0(), b1 = a.pb1();
    std::unordered_map<long long, std::pair<double, double>> acc;
    acc.reserve(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        long long va = int_value(a.value[i], "pmf_of_sum");
        for (size_t j = 0; j < b.size(); ++j) {
            long long v = va + int_value(b.value[j], "pmf_of_sum");
            auto& slot = acc[v];
            if (b0 > 0) slot.first += a.p0[i] * b.p0[j] / b0;
            if (b1 > 0) slot.second += a.p1[i] * b.p1[j] / b1;
        }
    }
    JointPmf out;
    for (auto& [v, q] : acc) out.push(static_cast<double>(v), q.first, q.second);
    out.canonicalize();
    return out;
}

JointPmf pmf_of_cn_pair(const JointPmf& a, const JointPmf& b, PairKernel kernel) {
    // Check-node combination assumes equiprobable code bits.
    if (std::abs(a.pb0() - 0.5) > 1e-6 || std::abs(b.pb0() - 0.5) > 1e-6)
        throw std::invalid_argument("pmf_of_cn_pair: bit marginals must be uniform");
    std::unordered_map<long long, std::pair<double, double>> acc;
    acc.reserve(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        long long va = int_value(a.value[i], "pmf_of_cn_pair");
        if (va == 0) throw std::invalid_argument("pmf_of_cn_pair: zero-magnitude input value");
        for (size_t j = 0; j < b.size(); ++j) {
            long long vb = int_value(b.value[j], "pmf_of_cn_pair");
            if (vb == 0) throw std::invalid_argument("pmf_of_cn_pair: zero-magnitude input value");
            long long ma = std::llabs(va), mb = std::llabs(vb);
            long long mag = kernel == PairKernel::MinMagnitude ? std::min(ma, mb) : ma + mb;
            long long sgn = (va < 0) == (vb < 0) ? 1 : -1;
            auto& slot = acc[sgn * mag];
            // b_out = b_a xor b_b
            slot.first += a.p0[i] * b.p0[j] + a.p1[i] * b.p1[j];
            slot.second += a.p0[i] * b.p1[j] + a.p1[i] * b.p0[j];
        }
    }
    JointPmf out;
    for (auto& [v, q] : acc) out.push(static_cast<double>(v), q.first, q.second);
    out.canonicalize();
    return out;
}

}  // namespace ldpcq

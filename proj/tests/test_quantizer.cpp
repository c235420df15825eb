#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "ldpcq/pmf.hpp"
#include "ldpcq/quantizer.hpp"

using namespace ldpcq;

namespace {

JointPmf random_symmetric_pmf(std::mt19937& rng, int half_points) {
    std::uniform_real_distribution<double> u(0.001, 1.0);
    JointPmf p;
    for (int k = 1; k <= half_points; ++k) {
        double a = u(rng), b = u(rng);
        p.push(k, a, b);
        p.push(-k, b, a);
    }
    p.canonicalize();
    double t = p.total();
    for (size_t i = 0; i < p.size(); ++i) {
        p.p0[i] /= t;
        p.p1[i] /= t;
    }
    return p;
}

JointPmf random_pmf(std::mt19937& rng, int points) {
    std::uniform_real_distribution<double> u(0.001, 1.0);
    JointPmf p;
    for (int k = 0; k < points; ++k) p.push(k, u(rng), u(rng));
    double t = p.total();
    for (size_t i = 0; i < p.size(); ++i) {
        p.p0[i] /= t;
        p.p1[i] /= t;
    }
    return p;
}

double partition_mi(const JointPmf& p, const std::vector<size_t>& ends) {
    JointPmf cells;
    size_t start = 0;
    for (size_t c = 0; c < ends.size(); ++c) {
        double q0 = 0, q1 = 0;
        for (size_t i = start; i <= ends[c]; ++i) {
            q0 += p.p0[i];
            q1 += p.p1[i];
        }
        cells.push(static_cast<double>(c), q0, q1);
        start = ends[c] + 1;
    }
    return mutual_information(cells);
}

// Exhaustive maximum over all contiguous partitions into `cells` groups.
double exhaustive_best_mi(const JointPmf& p, int cells) {
    size_t n = p.size();
    std::vector<size_t> ends(cells);
    double best = -1;
    // iterate over combinations of cell end positions
    std::vector<size_t> cut(cells - 1);
    std::function<void(int, size_t)> rec = [&](int k, size_t from) {
        if (k == cells - 1) {
            for (int c = 0; c < cells - 1; ++c) ends[c] = cut[c];
            ends[cells - 1] = n - 1;
            best = std::max(best, partition_mi(p, ends));
            return;
        }
        for (size_t e = from; e + static_cast<size_t>(cells - 1 - k) < n; ++e) {
            cut[k] = e;
            rec(k + 1, e + 1);
        }
    };
    rec(0, 0);
    return best;
}

// Exhaustive maximum over symmetric partitions (mirror-paired boundaries).
double exhaustive_best_mi_symmetric(const JointPmf& p, int wbits) {
    int hcells = alphabet_size(wbits) / 2;
    // fold to positive half (values are +-1..+-K, no zero)
    JointPmf half;
    for (size_t i = 0; i < p.size(); ++i)
        if (p.value[i] > 0) half.push(p.value[i], p.p0[i], p.p1[i]);
    size_t m = half.size();
    double best = -1;
    std::vector<size_t> cut(hcells - 1);
    std::function<void(int, size_t)> rec = [&](int k, size_t from) {
        if (k == hcells - 1) {
            // build the mirrored label pmf and score it
            JointPmf lab;
            size_t start = 0;
            for (int c = 0; c < hcells; ++c) {
                size_t end = c == hcells - 1 ? m - 1 : cut[c];
                double q0 = 0, q1 = 0;
                for (size_t i = start; i <= end; ++i) {
                    q0 += half.p0[i];
                    q1 += half.p1[i];
                }
                lab.push(c + 1, q0, q1);
                lab.push(-(c + 1), q1, q0);
                start = end + 1;
            }
            lab.canonicalize();
            best = std::max(best, mutual_information(lab));
            return;
        }
        for (size_t e = from; e + static_cast<size_t>(hcells - 1 - k) < m; ++e) {
            cut[k] = e;
            rec(k + 1, e + 1);
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace

TEST_CASE("threshold quantizer boundary semantics") {
    ThresholdQuantizer q;
    q.wbits = 2;
    q.boundaries = {-1.0, 0.0, 1.0};
    CHECK(q.apply(-5.0) == -2);
    CHECK(q.apply(-1.0) == -1);  // on a boundary -> upper cell
    CHECK(q.apply(-0.5) == -1);
    CHECK(q.apply(0.0) == 1);  // sign(0) := +1
    CHECK(q.apply(0.99) == 1);
    CHECK(q.apply(1.0) == 2);
    CHECK(q.apply(7.0) == 2);
}

TEST_CASE("label_of_cell skips zero") {
    CHECK(ThresholdQuantizer::label_of_cell(0, 4) == -2);
    CHECK(ThresholdQuantizer::label_of_cell(1, 4) == -1);
    CHECK(ThresholdQuantizer::label_of_cell(2, 4) == 1);
    CHECK(ThresholdQuantizer::label_of_cell(3, 4) == 2);
}

TEST_CASE("variable-node quantizer thresholds, clip and zero promotion") {
    VnQuantizer q{3, {4, 9, 20}};
    CHECK(q.apply(0) == 1);    // zero promoted, sign(0) := +1
    CHECK(q.apply(3) == 1);
    CHECK(q.apply(4) == 2);    // boundary value belongs to the upper cell
    CHECK(q.apply(8) == 2);
    CHECK(q.apply(-9) == -3);
    CHECK(q.apply(100) == 4);  // saturation at 2^{w-1}
    CHECK(q.apply(-100) == -4);
    VnQuantizer id = VnQuantizer::identity(4);
    CHECK(id.bounds == std::vector<int>({2, 3, 4, 5, 6, 7, 8}));
    CHECK(id.apply(-3) == -3);
    CHECK(id.apply(8) == 8);
    CHECK(id.apply(9) == 8);
}

TEST_CASE("reconstruction table is odd-symmetric") {
    ReconTable t;
    t.wbits = 3;
    t.wp_bits = 6;
    t.mag = {3, 9, 16, 31};
    for (int m = 1; m <= 4; ++m) CHECK(t.apply(-m) == -t.apply(m));
    CHECK(t.apply(2) == 9);
    CHECK(t.odd_symmetric_monotone());
    t.mag = {3, 2, 16, 31};
    CHECK(!t.odd_symmetric_monotone());
}

TEST_CASE("dp quantizer equals exhaustive search, asymmetric") {
    std::mt19937 rng(23);
    for (int t = 0; t < 25; ++t) {
        JointPmf p = random_pmf(rng, 12);
        for (int w : {2}) {
            auto res = design_mim_quantizer(p, w, /*symmetric=*/false);
            double ref = exhaustive_best_mi(p, alphabet_size(w));
            CHECK(res.mi == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("dp quantizer equals exhaustive search, symmetric") {
    std::mt19937 rng(29);
    for (int t = 0; t < 25; ++t) {
        JointPmf p = random_symmetric_pmf(rng, 16);
        for (int w : {2, 3}) {
            auto res = design_mim_quantizer(p, w, /*symmetric=*/true);
            double ref = exhaustive_best_mi_symmetric(p, w);
            CHECK(res.mi == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantizer output matches the compressed pmf") {
    std::mt19937 rng(31);
    JointPmf p = random_symmetric_pmf(rng, 12);
    auto res = design_mim_quantizer(p, 3, true);
    JointPmf again = apply_threshold_quantizer(res.quantizer, p);
    REQUIRE(again.size() == res.compressed.size());
    for (size_t i = 0; i < again.size(); ++i) {
        CHECK(again.value[i] == res.compressed.value[i]);
        CHECK(again.p0[i] == doctest::Approx(res.compressed.p0[i]));
    }
}

TEST_CASE("quantizer design error cases") {
    JointPmf tiny = JointPmf::point_mass(1.0);
    CHECK_THROWS_AS(design_mim_quantizer(tiny, 2, false), std::invalid_argument);
    JointPmf conc;
    conc.push(-1, 0, 0);
    conc.push(1, 0.5, 0.5);
    conc.push(2, 0, 0);
    conc.push(3, 0, 0);
    CHECK_THROWS_AS(design_mim_quantizer(conc, 2, false), std::invalid_argument);
    std::mt19937 rng(5);
    JointPmf asym = random_pmf(rng, 8);
    CHECK_THROWS_AS(design_mim_quantizer(asym, 2, true), std::invalid_argument);
}

TEST_CASE("recon table scaling, cap and monotonicity") {
    JointPmf msg;
    // strongly informative outer level, weak inner level
    msg.push(-2, 0.01, 0.24);
    msg.push(-1, 0.10, 0.15);
    msg.push(1, 0.15, 0.10);
    msg.push(2, 0.24, 0.01);
    double l1 = std::log(0.25 / 0.25 * (0.15 + 0.15) / (0.10 + 0.10));
    double l2 = std::log((0.24 + 0.24) / (0.01 + 0.01));
    ReconTable t = make_recon_table(msg, 2, 6, 31.0 / l2, l2);
    CHECK(t.mag.size() == 2);
    CHECK(t.mag[1] == 31);
    CHECK(t.mag[0] == static_cast<int>(std::lround(31.0 / l2 * l1)));
    CHECK(t.mag[0] <= t.mag[1]);
    // min_mag lifts the weakest level
    ReconTable t2 = make_recon_table(msg, 2, 6, 1e-6, l2, 1);
    CHECK(t2.mag[0] == 1);
}


TEST_CASE("recon_pmf maps labels through the table") {
    JointPmf msg;
    msg.push(-2, 0.1, 0.4);
    msg.push(-1, 0.2, 0.3);
    msg.push(1, 0.3, 0.2);
    msg.push(2, 0.4, 0.1);
    msg.normalize();
    ReconTable t;
    t.wbits = 2;
    t.wp_bits = 6;
    t.mag = {5, 20};
    JointPmf out = recon_pmf(msg, t);
    CHECK(out.value[0] == -20.0);
    CHECK(out.value[3] == 20.0);
    CHECK(mutual_information(out) == doctest::Approx(mutual_information(msg)).epsilon(1e-12));
}

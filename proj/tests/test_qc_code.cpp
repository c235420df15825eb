#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ldpcq/qc_code.hpp"

using namespace ldpcq;

namespace {

// Dense parity-check expansion used as an independent reference.
std::vector<std::vector<uint8_t>> dense_h(const BaseMatrix& b) {
    std::vector<std::vector<uint8_t>> h(b.rows * b.z, std::vector<uint8_t>(b.cols * b.z, 0));
    for (int r = 0; r < b.rows; ++r)
        for (int c = 0; c < b.cols; ++c) {
            int s = b.at(r, c);
            if (s < 0) continue;
            for (int k = 0; k < b.z; ++k) h[r * b.z + k][c * b.z + (k + s) % b.z] = 1;
        }
    return h;
}

BaseMatrix small_matrix() {
    std::istringstream in("Z 5\n0 1 2\n0 2 4\n");
    return BaseMatrix::parse(in);
}

}  // namespace

TEST_CASE("base matrix parsing") {
    BaseMatrix b = small_matrix();
    CHECK(b.z == 5);
    CHECK(b.rows == 2);
    CHECK(b.cols == 3);
    CHECK(b.at(0, 2) == 2);
    CHECK(b.at(1, 1) == 2);
}

TEST_CASE("parser rejects malformed input") {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return BaseMatrix::parse(in);
    };
    CHECK_THROWS_AS(parse("0 1 2\n"), std::invalid_argument);          // missing header
    CHECK_THROWS_AS(parse("Z 5\n0 1 5\n"), std::invalid_argument);     // shift >= Z
    CHECK_THROWS_AS(parse("Z 5\n0 1\n0 1 2\n"), std::invalid_argument);  // ragged rows
    CHECK_THROWS_AS(parse("Z 0\n0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("Z 5\n"), std::invalid_argument);
}

TEST_CASE("comments and blank lines are ignored") {
    std::istringstream in("# header comment\nZ 5\n\n0 1 2  # trailing\n0 2 4\n");
    BaseMatrix b = BaseMatrix::parse(in);
    CHECK(b.rows == 2);
    CHECK(b.at(0, 1) == 1);
}

TEST_CASE("neighbor formulas match the dense expansion") {
    BaseMatrix b = small_matrix();
    QcCode code(b);
    auto h = dense_h(b);
    for (int l = 0; l < b.rows; ++l)
        for (int z = 0; z < b.z; ++z) {
            std::vector<int> expect;
            for (int n = 0; n < code.n(); ++n)
                if (h[l * b.z + z][n]) expect.push_back(n);
            std::vector<int> got = code.cn_neighbors(l, z);
            std::sort(got.begin(), got.end());
            CHECK(got == expect);
        }
    for (int l = 0; l < b.cols; ++l)
        for (int z = 0; z < b.z; ++z) {
            std::vector<int> expect;
            int n = l * b.z + z;
            for (int m = 0; m < code.m(); ++m)
                if (h[m][n]) expect.push_back(m);
            std::vector<int> got = code.vn_neighbors(l, z);
            std::sort(got.begin(), got.end());
            CHECK(got == expect);
        }
}

TEST_CASE("check and variable adjacency are mutually consistent") {
    QcCode code(small_matrix());
    for (int l = 0; l < code.dv(); ++l)
        for (int z = 0; z < code.z(); ++z)
            for (int i = 0; i < code.dc(); ++i) {
                int n = code.cn_neighbor(l, z, i);
                // the check (l, z) must appear among the variable's neighbors
                int check = l * code.z() + z;
                auto nb = code.vn_neighbors(n / code.z(), n % code.z());
                CHECK(std::find(nb.begin(), nb.end(), check) != nb.end());
            }
}

TEST_CASE("syndrome matches dense matrix multiplication") {
    BaseMatrix b = small_matrix();
    QcCode code(b);
    auto h = dense_h(b);
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        std::vector<uint8_t> bits(code.n());
        for (auto& x : bits) x = rng() & 1;
        auto syn = code.syndrome(bits);
        int weight = 0;
        for (int m = 0; m < code.m(); ++m) {
            int s = 0;
            for (int n = 0; n < code.n(); ++n) s ^= h[m][n] & bits[n];
            CHECK(syn[m] == s);
            weight += s;
        }
        CHECK(code.syndrome_weight(bits) == weight);
        CHECK(code.syndrome_zero(bits) == (weight == 0));
    }
}

TEST_CASE("all-zero word has zero syndrome") {
    QcCode code(small_matrix());
    std::vector<uint8_t> zero(code.n(), 0);
    CHECK(code.syndrome_zero(zero));
}

TEST_CASE("rate 5/6 code file") {
    QcCode code(BaseMatrix::load(std::string(CODES_DIR) + "/r56_z512.txt"));
    CHECK(code.n() == 9216);
    CHECK(code.m() == 1536);
    CHECK(code.z() == 512);
    CHECK(code.dv() == 3);
    CHECK(code.dc() == 18);
    CHECK(code.edges() == 27648);
    CHECK(code.rate() == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(code.regular());
}

TEST_CASE("missing file raises") {
    CHECK_THROWS(BaseMatrix::load("/nonexistent/base.txt"));
}

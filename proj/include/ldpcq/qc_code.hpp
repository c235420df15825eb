#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ldpcq {

// Base matrix of a quasi-cyclic LDPC code. Entry h(r,c) in [-1, Z-1] is the
// cyclic shift of the Z x Z identity block; -1 denotes the all-zero block.
struct BaseMatrix {
    int z = 0;
    int rows = 0;
    int cols = 0;
    std::vector<int> shift;  // rows*cols, row-major

    int at(int r, int c) const { return shift[static_cast<size_t>(r) * cols + c]; }

    // Throws std::invalid_argument on malformed dimensions or out-of-range shifts.
    void validate() const;

    // Text format: header line "Z <value>", then one row per line of
    // space-separated shifts.
    static BaseMatrix parse(std::istream& in);
    static BaseMatrix load(const std::string& path);
};

// Lifted code view. Immutable after construction; shareable across decoders.
class QcCode {
  public:
    explicit QcCode(BaseMatrix base);

    int n() const { return base_.cols * base_.z; }
    int m() const { return base_.rows * base_.z; }
    int z() const { return base_.z; }
    int dv() const { return base_.rows; }
    int dc() const { return base_.cols; }
    int edges() const { return n() * dv(); }
    double rate() const { return 1.0 - static_cast<double>(base_.rows) / base_.cols; }
    bool regular() const { return regular_; }
    const BaseMatrix& base() const { return base_; }

    // Variables adjacent to check z of horizontal layer l (base row l),
    // in base-column order.
    std::vector<int> cn_neighbors(int l, int z) const;
    // Checks adjacent to variable z of vertical layer l (base column l),
    // in base-row order.
    std::vector<int> vn_neighbors(int l, int z) const;

    // Neighbor of check (layer l, offset z) in base column i.
    int cn_neighbor(int l, int z, int i) const {
        return i * base_.z + mod_z(z + base_.at(l, i));
    }
    // Neighbor of variable (layer l, offset z) in base row i.
    int vn_neighbor(int l, int z, int i) const {
        return i * base_.z + mod_z(z - base_.at(i, l));
    }

    // Basis of (a subspace of) the nullspace of H over GF(2): up to
    // max_vectors independent codewords, each as an n-bit vector. Random
    // codewords for simulation are XOR combinations of these.
    std::vector<std::vector<uint8_t>> codeword_basis(int max_vectors) const;

    std::vector<uint8_t> syndrome(const std::vector<uint8_t>& hard_bits) const;
    int syndrome_weight(const std::vector<uint8_t>& hard_bits) const;
    bool syndrome_zero(const std::vector<uint8_t>& hard_bits) const {
        return syndrome_weight(hard_bits) == 0;
    }

  private:
    int mod_z(int v) const {
        int r = v % base_.z;
        return r < 0 ? r + base_.z : r;
    }

    BaseMatrix base_;
    bool regular_ = true;
};

}  // namespace ldpcq

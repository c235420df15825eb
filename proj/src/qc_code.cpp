#include "ldpcq/qc_code.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ldpcq {

void BaseMatrix::validate() const {
    if (z <= 0) throw std::invalid_argument("lifting size Z must be positive");
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("base matrix must be non-empty");
    if (shift.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("base matrix entry count mismatch");
    for (int s : shift) {
        if (s < -1 || s >= z)
            throw std::invalid_argument("base matrix shift outside [-1, Z-1]");
    }
}

BaseMatrix BaseMatrix::parse(std::istream& in) {
    BaseMatrix b;
    std::string line;
    bool have_z = false;
    std::vector<std::vector<int>> rows;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!have_z) {
            if (first != "Z") throw std::invalid_argument("expected header line 'Z <value>'");
            if (!(ls >> b.z)) throw std::invalid_argument("missing lifting size after 'Z'");
            have_z = true;
            continue;
        }
        std::vector<int> row;
        std::istringstream rs(line);
        int v;
        while (rs >> v) row.push_back(v);
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument("ragged base matrix row");
        rows.push_back(std::move(row));
    }
    if (!have_z || rows.empty()) throw std::invalid_argument("empty base matrix file");
    b.rows = static_cast<int>(rows.size());
    b.cols = static_cast<int>(rows.front().size());
    for (auto& r : rows) b.shift.insert(b.shift.end(), r.begin(), r.end());
    b.validate();
    return b;
}

BaseMatrix BaseMatrix::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open base matrix file: " + path);
    return parse(f);
}

QcCode::QcCode(BaseMatrix base) : base_(std::move(base)) {
    base_.validate();
    for (int s : base_.shift)
        if (s < 0) regular_ = false;
    // Duplicate edges would need two identical blocks in the same row/column
    // pair; the plain base-matrix format cannot express that, but guard the
    // neighbor sets anyway.
    for (int l = 0; l < base_.rows; ++l) {
        std::set<int> seen;
        for (int i = 0; i < base_.cols; ++i) {
            if (base_.at(l, i) < 0) continue;
            if (!seen.insert(cn_neighbor(l, 0, i)).second)
                throw std::invalid_argument("duplicate edge in lifted graph");
        }
    }
}

std::vector<int> QcCode::cn_neighbors(int l, int z) const {
    if (l < 0 || l >= base_.rows || z < 0 || z >= base_.z)
        throw std::out_of_range("cn_neighbors index out of range");
    std::vector<int> out;
    out.reserve(base_.cols);
    for (int i = 0; i < base_.cols; ++i) {
        if (base_.at(l, i) < 0) continue;
        out.push_back(cn_neighbor(l, z, i));
    }
    return out;
}

std::vector<int> QcCode::vn_neighbors(int l, int z) const {
    if (l < 0 || l >= base_.cols || z < 0 || z >= base_.z)
        throw std::out_of_range("vn_neighbors index out of range");
    std::vector<int> out;
    out.reserve(base_.rows);
    for (int i = 0; i < base_.rows; ++i) {
        if (base_.at(i, l) < 0) continue;
        out.push_back(vn_neighbor(l, z, i));
    }
    return out;
}

std::vector<std::vector<uint8_t>> QcCode::codeword_basis(int max_vectors) const {
    // Gauss-Jordan elimination of H over GF(2) in 64-bit words, then one
    // nullspace vector per free column: the free bit plus the pivot-row
    // back-substitution pattern.
    const int M = m(), N = n(), W = (N + 63) / 64;
    std::vector<std::vector<uint64_t>> h(M, std::vector<uint64_t>(W, 0));
    for (int l = 0; l < base_.rows; ++l)
        for (int z = 0; z < base_.z; ++z) {
            auto& row = h[l * base_.z + z];
            for (int i = 0; i < base_.cols; ++i) {
                if (base_.at(l, i) < 0) continue;
                int c = cn_neighbor(l, z, i);
                row[c >> 6] ^= 1ULL << (c & 63);
            }
        }
    auto bit = [](const std::vector<uint64_t>& v, int c) { return v[c >> 6] >> (c & 63) & 1ULL; };
    std::vector<int> pivot_col;
    std::vector<char> is_pivot(N, 0);
    int rank = 0;
    for (int c = 0; c < N && rank < M; ++c) {
        int sel = -1;
        for (int r = rank; r < M; ++r)
            if (bit(h[r], c)) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(h[sel], h[rank]);
        for (int r = 0; r < M; ++r)
            if (r != rank && bit(h[r], c))
                for (int w = 0; w < W; ++w) h[r][w] ^= h[rank][w];
        pivot_col.push_back(c);
        is_pivot[c] = 1;
        ++rank;
    }
    std::vector<std::vector<uint8_t>> basis;
    for (int c = 0; c < N && static_cast<int>(basis.size()) < max_vectors; ++c) {
        if (is_pivot[c]) continue;
        std::vector<uint8_t> v(N, 0);
        v[c] = 1;
        for (int r = 0; r < rank; ++r)
            if (bit(h[r], c)) v[pivot_col[r]] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<uint8_t> QcCode::syndrome(const std::vector<uint8_t>& hard_bits) const {
    if (hard_bits.size() != static_cast<size_t>(n()))
        throw std::invalid_argument("hard-bit vector length mismatch");
    std::vector<uint8_t> s(m(), 0);
    for (int l = 0; l < base_.rows; ++l) {
        for (int z = 0; z < base_.z; ++z) {
            uint8_t acc = 0;
            for (int i = 0; i < base_.cols; ++i) {
                if (base_.at(l, i) < 0) continue;
                acc ^= hard_bits[cn_neighbor(l, z, i)];
            }
            s[l * base_.z + z] = acc;
        }
    }
    return s;
}

int QcCode::syndrome_weight(const std::vector<uint8_t>& hard_bits) const {
    if (hard_bits.size() != static_cast<size_t>(n()))
        throw std::invalid_argument("hard-bit vector length mismatch");
    int w = 0;
    for (int l = 0; l < base_.rows; ++l) {
        for (int z = 0; z < base_.z; ++z) {
            uint8_t acc = 0;
            for (int i = 0; i < base_.cols; ++i) {
                if (base_.at(l, i) < 0) continue;
                acc ^= hard_bits[cn_neighbor(l, z, i)];
            }
            w += acc;
        }
    }
    return w;
}

}  // namespace ldpcq

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcl {

using Int = long long;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    Int operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw error("matrix product: dimension mismatch");
        IntMatrix p(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (int k = 0; k < cols_; ++k) {
                Int v = (*this)(r, k);
                if (v == 0) continue;
                for (int c = 0; c < o.cols_; ++c) p(r, c) += v * o(k, c);
            }
        return p;
    }

    bool is_skew_symmetric() const {
        if (rows_ != cols_) return false;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c <= r; ++c)
                if ((*this)(r, c) != -(*this)(c, r)) return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (int r = 0; r < rows_; ++r) {
            s += r == 0 ? "[" : " ";
            for (int c = 0; c < cols_; ++c) {
                s += std::to_string((*this)(r, c));
                if (c + 1 < cols_) s += " ";
            }
            s += r + 1 < rows_ ? "\n" : "]";
        }
        return s;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

inline Int positive_part(Int a) { return a > 0 ? a : 0; }

}  // namespace qcl

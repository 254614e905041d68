#include "chdbc/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace chdbc {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> t) {
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    m.row_offsets_.assign(static_cast<size_t>(rows) + 1, 0);
    m.cols_idx_.reserve(t.size());
    m.values_.reserve(t.size());
    size_t i = 0;
    while (i < t.size()) {
        if (t[i].row < 0 || t[i].row >= rows || t[i].col < 0 || t[i].col >= cols)
            throw std::out_of_range("SparseMatrix::from_triplets: index out of range");
        double sum = t[i].value;
        size_t j = i + 1;
        while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col) {
            sum += t[j].value;
            ++j;
        }
        m.cols_idx_.push_back(t[i].col);
        m.values_.push_back(sum);
        m.row_offsets_[static_cast<size_t>(t[i].row) + 1]++;
        i = j;
    }
    for (int r = 0; r < rows; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
    return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    assert(static_cast<int>(x.size()) == cols_ && static_cast<int>(y.size()) == rows_);
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            acc += values_[k] * x[cols_idx_[k]];
        y[r] = acc;
    }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<size_t>(rows_));
    multiply(x, y);
    return y;
}

double SparseMatrix::coeff(int row, int col) const {
    const auto begin = cols_idx_.begin() + row_offsets_[row];
    const auto end = cols_idx_.begin() + row_offsets_[row + 1];
    const auto it = std::lower_bound(begin, end, col);
    if (it == end || *it != col) return 0.0;
    return values_[static_cast<size_t>(it - cols_idx_.begin())];
}

bool SparseMatrix::has_empty_row() const {
    for (int r = 0; r < rows_; ++r) {
        bool any = false;
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            if (values_[k] != 0.0) {
                any = true;
                break;
            }
        if (!any) return true;
    }
    return false;
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(static_cast<size_t>(rows_), 0.0);
    for (int r = 0; r < rows_ && r < cols_; ++r) d[r] = coeff(r, r);
    return d;
}

}  // namespace chdbc

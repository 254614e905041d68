#ifndef CHDBC_SPARSE_HPP
#define CHDBC_SPARSE_HPP

#include <span>
#include <vector>

namespace chdbc {

struct Triplet {
    int row;
    int col;
    double value;
};

// Compressed-sparse-row matrix. Duplicate triplets are summed on build.
class SparseMatrix {
public:
    SparseMatrix() = default;

    static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long nonzeros() const { return static_cast<long>(values_.size()); }

    // y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    // Entry lookup (binary search within the row); zero if absent.
    double coeff(int row, int col) const;

    // True if some row has no stored nonzero entry.
    bool has_empty_row() const;

    std::vector<double> diagonal() const;

    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& column_indices() const { return cols_idx_; }
    const std::vector<double>& values() const { return values_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_offsets_;
    std::vector<int> cols_idx_;
    std::vector<double> values_;
};

}  // namespace chdbc

#endif

#ifndef K3LAT_LINALG_HPP
#define K3LAT_LINALG_HPP

#include <cstdint>
#include <vector>

#include "gf.hpp"

namespace k3lat {

/// Dense row-major matrix over GF(p).
class MatF {
public:
    MatF() = default;
    MatF(const FieldSpec& F, size_t rows, size_t cols)
        : F_(F), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    const FieldSpec& field() const { return F_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    uint32_t* row(size_t r) { return a_.data() + r * cols_; }
    const uint32_t* row(size_t r) const { return a_.data() + r * cols_; }

    void append_row(const std::vector<uint32_t>& r);

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<int> rref();
    size_t rank() const;

    /// Basis of the right kernel (each vector has cols() entries).
    std::vector<std::vector<uint32_t>> kernel() const;

    /// Solve A x = b; returns empty on inconsistency.
    std::vector<uint32_t> solve(const std::vector<uint32_t>& b) const;

    MatF mul(const MatF& o) const;

    /// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) of a
    /// square matrix, by Hessenberg reduction.
    std::vector<uint32_t> charpoly() const;

private:
    FieldSpec F_{65521};
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> a_;
};

/// Incremental row echelon accumulator: rows are reduced against the pivots
/// seen so far; rank grows by one exactly when an inserted row is new.
class Rref {
public:
    Rref(const FieldSpec& F, size_t cols) : F_(F), cols_(cols), row_of_pivot_(cols, -1) {}

    /// Returns true when the row increased the rank.
    bool insert(std::vector<uint32_t> row);
    size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<uint32_t>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivot_of_row_; }

private:
    FieldSpec F_;
    size_t cols_;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<int> row_of_pivot_;
    std::vector<int> pivot_of_row_;
};

}  // namespace k3lat

#endif

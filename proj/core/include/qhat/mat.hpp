// Dense exact matrices over GF(p): row reduction, solving, kernels, spans.
#pragma once

#include "qhat/gf.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qhat {

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, Gf field)
        : rows_(rows), cols_(cols), gf_(field), a_(rows * cols, 0) {}

    static Mat identity(std::size_t n, Gf field);
    static Mat zero(std::size_t rows, std::size_t cols, Gf field) {
        return Mat(rows, cols, field);
    }
    // Row-major initializer; entries are reduced mod p.
    static Mat from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                         Gf field);
    static Mat column(const std::vector<std::uint32_t>& entries, Gf field);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Gf& field() const { return gf_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const {
        return a_[r * cols_ + c];
    }
    std::uint32_t& operator()(std::size_t r, std::size_t c) {
        return a_[r * cols_ + c];
    }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat scaled(std::uint32_t c) const;
    Mat transposed() const;
    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool is_zero() const;
    bool is_identity() const;

    Mat col(std::size_t c) const; // rows x 1 slice
    Mat cols_slice(const std::vector<std::size_t>& idx) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr,
              std::size_t nc) const;

    Mat hcat(const Mat& o) const; // [this | o]
    Mat vcat(const Mat& o) const; // [this ; o]

    Mat pow(std::uint64_t e) const;

    std::string to_string() const;
    std::size_t hash() const;

private:
    std::size_t rows_, cols_;
    Gf gf_;
    std::vector<std::uint32_t> a_;
};

struct RrefResult {
    Mat reduced;                     // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column indices, increasing
    std::size_t rank = 0;
};

RrefResult rref(const Mat& m);

std::size_t rank(const Mat& m);

// Columns span {x : m x = 0}; kernel dim = cols(m) - rank(m).
Mat kernel_basis(const Mat& m);

struct SolveResult {
    Mat particular; // one X with A X = B
    Mat kernel;     // columns span {x : A x = 0}
};

// Solves A X = B columnwise; nullopt when inconsistent.
std::optional<SolveResult> solve(const Mat& a, const Mat& b);

// Basis of the column space: the pivot columns of m.
Mat column_space_basis(const Mat& m);

std::optional<Mat> inverse(const Mat& m);

bool is_nilpotent(const Mat& m);

// Incremental row space: keeps an rref of the rows fed to it.
// reduce() returns the canonical representative of a vector modulo the
// span, supported away from the pivot coordinates.
class RowSpan {
public:
    explicit RowSpan(std::size_t width, Gf field);

    std::size_t width() const { return width_; }
    std::size_t dim() const { return rows_.size(); }
    const Gf& field() const { return gf_; }

    // Returns true if the row enlarged the span.
    bool add_row(std::vector<std::uint32_t> row);
    void add_rows_of(const Mat& m);

    std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> row) const;
    bool contains(const std::vector<std::uint32_t>& row) const;
    bool contains_unit(std::size_t coord) const;

    const std::vector<std::vector<std::uint32_t>>& rows() const {
        return rows_;
    }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    std::size_t width_;
    Gf gf_;
    std::vector<std::vector<std::uint32_t>> rows_; // rref rows
    std::vector<std::size_t> pivots_;              // pivot col per row
};

// Fixed column subspace with coordinate extraction against a chosen
// independent subset of the spanning columns.
class ColumnSpan {
public:
    explicit ColumnSpan(const Mat& spanning_columns);

    std::size_t dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }
    const std::vector<std::size_t>& basis_indices() const { return keep_; }

    bool contains(const Mat& v) const;
    // Coordinates of the columns of v in basis(); throws std::domain_error
    // if some column is not a member.
    Mat coordinates(const Mat& v) const;

private:
    Mat basis_;
    std::vector<std::size_t> keep_;
    Mat u_;             // row-reduction transform: u_ * basis_ = [I; 0]
    std::size_t n_ = 0; // ambient dimension
};

} // namespace qhat

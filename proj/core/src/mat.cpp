#include "qhat/mat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qhat {

Mat Mat::identity(std::size_t n, Gf field) {
    Mat m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % field.p();
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                   Gf field) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Mat m(r, c, field);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw InputError("ragged matrix literal");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = field.reduce(rows[i][j]);
    }
    return m;
}

Mat Mat::column(const std::vector<std::uint32_t>& entries, Gf field) {
    Mat m(entries.size(), 1, field);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i] % field.p();
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat m(rows_, cols_, gf_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = gf_.add(a_[i], o.a_[i]);
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat m(rows_, cols_, gf_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = gf_.sub(a_[i], o.a_[i]);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat m(rows_, o.cols_, gf_);
    const std::uint64_t p = gf_.p();
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t aik = (*this)(i, k);
            if (!aik) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                std::uint64_t v = m(i, j) + aik * o(k, j);
                m(i, j) = static_cast<std::uint32_t>(v % p);
            }
        }
    }
    return m;
}

Mat Mat::scaled(std::uint32_t c) const {
    Mat m(rows_, cols_, gf_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = gf_.mul(a_[i], c);
    return m;
}

Mat Mat::transposed() const {
    Mat m(cols_, rows_, gf_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::uint32_t x) { return x == 0; });
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u % gf_.p() : 0u)) return false;
    return true;
}

Mat Mat::col(std::size_t c) const {
    Mat m(rows_, 1, gf_);
    for (std::size_t i = 0; i < rows_; ++i) m(i, 0) = (*this)(i, c);
    return m;
}

Mat Mat::cols_slice(const std::vector<std::size_t>& idx) const {
    Mat m(rows_, idx.size(), gf_);
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, idx[j]);
    return m;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    assert(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    assert(r0 + nr <= rows_ && c0 + nc <= cols_);
    Mat m(nr, nc, gf_);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

Mat Mat::hcat(const Mat& o) const {
    if (rows_ == 0 && cols_ == 0) return o;
    if (o.rows_ == 0 && o.cols_ == 0) return *this;
    assert(rows_ == o.rows_);
    Mat m(rows_, cols_ + o.cols_, gf_);
    m.set_block(0, 0, *this);
    m.set_block(0, cols_, o);
    return m;
}

Mat Mat::vcat(const Mat& o) const {
    if (rows_ == 0 && cols_ == 0) return o;
    if (o.rows_ == 0 && o.cols_ == 0) return *this;
    assert(cols_ == o.cols_);
    Mat m(rows_ + o.rows_, cols_, gf_);
    m.set_block(0, 0, *this);
    m.set_block(rows_, 0, o);
    return m;
}

Mat Mat::pow(std::uint64_t e) const {
    assert(rows_ == cols_);
    Mat r = identity(rows_, gf_);
    Mat b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

std::size_t Mat::hash() const {
    std::size_t h = rows_ * 1000003u + cols_ * 10007u + gf_.p();
    for (std::uint32_t x : a_) h = h * 1099511628211ull + x;
    return h;
}

RrefResult rref(const Mat& m) {
    Mat r = m;
    const Gf& gf = r.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t piv = row;
        while (piv < r.rows() && r(piv, col) == 0) ++piv;
        if (piv == r.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
        std::uint32_t inv = gf.inv(r(row, col));
        for (std::size_t j = col; j < r.cols(); ++j) r(row, j) = gf.mul(r(row, j), inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row) continue;
            std::uint32_t f = r(i, col);
            if (!f) continue;
            for (std::size_t j = col; j < r.cols(); ++j)
                r(i, j) = gf.sub(r(i, j), gf.mul(f, r(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots), row};
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

Mat kernel_basis(const Mat& m) {
    RrefResult rr = rref(m);
    const Gf& gf = m.field();
    std::vector<std::size_t> free_cols;
    {
        std::size_t k = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (k < rr.pivots.size() && rr.pivots[k] == c) { ++k; continue; }
            free_cols.push_back(c);
        }
    }
    Mat kb(m.cols(), free_cols.size(), gf);
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::size_t fc = free_cols[j];
        kb(fc, j) = 1 % gf.p();
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            kb(rr.pivots[i], j) = gf.neg(rr.reduced(i, fc));
    }
    return kb;
}

std::optional<SolveResult> solve(const Mat& a, const Mat& b) {
    assert(a.rows() == b.rows());
    RrefResult rr = rref(a.hcat(b));
    const Gf& gf = a.field();
    // Inconsistent iff some pivot falls in the b-part.
    for (std::size_t p : rr.pivots)
        if (p >= a.cols()) return std::nullopt;
    Mat x(a.cols(), b.cols(), gf);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(rr.pivots[i], j) = rr.reduced(i, a.cols() + j);
    return SolveResult{std::move(x), kernel_basis(a)};
}

Mat column_space_basis(const Mat& m) {
    RrefResult rr = rref(m);
    return m.cols_slice(rr.pivots);
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (m.rows() == 0) return m;
    RrefResult rr = rref(m.hcat(Mat::identity(m.rows(), m.field())));
    // Invertible iff every pivot lies in the left half.
    if (rr.pivots.size() < m.rows() || rr.pivots.back() >= m.cols())
        return std::nullopt;
    return rr.reduced.block(0, m.cols(), m.rows(), m.cols());
}

bool is_nilpotent(const Mat& m) {
    assert(m.rows() == m.cols());
    if (m.rows() == 0) return true;
    Mat q = m;
    std::size_t steps = 1;
    while (steps < 2 * m.rows()) {
        if (q.is_zero()) return true;
        q = q * q;
        steps *= 2;
    }
    return q.is_zero();
}

RowSpan::RowSpan(std::size_t width, Gf field) : width_(width), gf_(field) {}

bool RowSpan::add_row(std::vector<std::uint32_t> row) {
    assert(row.size() == width_);
    row = reduce(std::move(row));
    std::size_t lead = width_;
    for (std::size_t j = 0; j < width_; ++j)
        if (row[j] != 0) { lead = j; break; }
    if (lead == width_) return false;
    std::uint32_t inv = gf_.inv(row[lead]);
    for (std::size_t j = lead; j < width_; ++j) row[j] = gf_.mul(row[j], inv);
    // Back-eliminate the new pivot from existing rows.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::uint32_t f = rows_[i][lead];
        if (!f) continue;
        for (std::size_t j = lead; j < width_; ++j)
            rows_[i][j] = gf_.sub(rows_[i][j], gf_.mul(f, row[j]));
    }
    // Insert keeping pivots increasing.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(row));
    pivots_.insert(pivots_.begin() + pos, lead);
    return true;
}

void RowSpan::add_rows_of(const Mat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::uint32_t> row(width_);
        for (std::size_t j = 0; j < width_; ++j) row[j] = m(i, j);
        add_row(std::move(row));
    }
}

std::vector<std::uint32_t> RowSpan::reduce(std::vector<std::uint32_t> row) const {
    assert(row.size() == width_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::uint32_t f = row[pivots_[i]];
        if (!f) continue;
        const auto& r = rows_[i];
        for (std::size_t j = pivots_[i]; j < width_; ++j)
            row[j] = gf_.sub(row[j], gf_.mul(f, r[j]));
    }
    return row;
}

bool RowSpan::contains(const std::vector<std::uint32_t>& row) const {
    auto r = reduce(row);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

bool RowSpan::contains_unit(std::size_t coord) const {
    std::vector<std::uint32_t> u(width_, 0);
    u[coord] = 1 % gf_.p();
    return contains(u);
}

ColumnSpan::ColumnSpan(const Mat& spanning_columns) {
    n_ = spanning_columns.rows();
    RrefResult rr = rref(spanning_columns);
    keep_ = rr.pivots;
    basis_ = spanning_columns.cols_slice(keep_);
    // u_ * basis_ = [I_r; 0] so membership and coordinates are one product.
    RrefResult aug =
        rref(basis_.hcat(Mat::identity(n_, spanning_columns.field())));
    u_ = aug.reduced.block(0, basis_.cols(), n_, n_);
}

bool ColumnSpan::contains(const Mat& v) const {
    assert(v.rows() == n_);
    Mat w = u_ * v;
    for (std::size_t i = basis_.cols(); i < n_; ++i)
        for (std::size_t j = 0; j < v.cols(); ++j)
            if (w(i, j) != 0) return false;
    return true;
}

Mat ColumnSpan::coordinates(const Mat& v) const {
    assert(v.rows() == n_);
    Mat w = u_ * v;
    for (std::size_t i = basis_.cols(); i < n_; ++i)
        for (std::size_t j = 0; j < v.cols(); ++j)
            if (w(i, j) != 0)
                throw std::domain_error("vector not in column span");
    return w.block(0, 0, basis_.cols(), v.cols());
}

} // namespace qhat

#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

namespace fqrank {

namespace detail {

inline bool is_permutation_of(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// Row-echelon rank with first-nonzero pivoting, in place on a raw
// value buffer. Exact field arithmetic, so pivot quality is irrelevant.
inline int rank_in_place(std::vector<std::uint32_t>& m, int rows, int cols, const Field& f) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[static_cast<std::size_t>(i) * cols + c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(piv) * cols,
                             m.begin() + static_cast<std::ptrdiff_t>(piv + 1) * cols,
                             m.begin() + static_cast<std::ptrdiff_t>(r) * cols);
        const std::uint32_t pivot_inv = f.inv(m[static_cast<std::size_t>(r) * cols + c]);
        for (int i = r + 1; i < rows; ++i) {
            const std::uint32_t lead = m[static_cast<std::size_t>(i) * cols + c];
            if (lead == 0) continue;
            const std::uint32_t factor = f.mul(lead, pivot_inv);
            for (int j = c; j < cols; ++j) {
                auto& cell = m[static_cast<std::size_t>(i) * cols + j];
                cell = f.sub(cell, f.mul(factor, m[static_cast<std::size_t>(r) * cols + j]));
            }
        }
        ++r;
    }
    return r;
}

}  // namespace detail

/// Dense n x k matrix over a Field, entries stored as canonical encodings
/// in row-major order. Value-semantic; the Field must outlive the matrix.
class Matrix {
public:
    Matrix(const Field& field, int rows, int cols)
        : field_(&field), rows_(rows), cols_(cols),
          v_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("matrix dimensions must be positive");
    }

    static Matrix identity(const Field& field, int n) {
        Matrix m(field, n, n);
        for (int i = 0; i < n; ++i) m.v_[static_cast<std::size_t>(i) * n + i] = 1;
        return m;
    }

    static Matrix from_values(const Field& field, int rows, int cols,
                              std::vector<std::uint32_t> values) {
        Matrix m(field, rows, cols);
        if (values.size() != m.v_.size())
            throw std::invalid_argument("entry count does not match dimensions");
        for (std::uint32_t v : values)
            if (v >= field.order()) throw std::out_of_range("entry outside field");
        m.v_ = std::move(values);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *field_; }
    const std::vector<std::uint32_t>& values() const { return v_; }

    std::uint32_t value_at(int i, int j) const {
        return v_[static_cast<std::size_t>(i) * cols_ + j];
    }

    void set_value(int i, int j, std::uint32_t v) {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("matrix index out of range");
        if (v >= field_->order()) throw std::out_of_range("entry outside field");
        v_[static_cast<std::size_t>(i) * cols_ + j] = v;
    }

    FieldElement at(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("matrix index out of range");
        return FieldElement(*field_, value_at(i, j));
    }

    void set(int i, int j, const FieldElement& e) {
        if (e.field() != *field_)
            throw std::invalid_argument("element belongs to a different field");
        set_value(i, j, e.value());
    }

    /// Row-echelon rank; operates on a working copy.
    int rank() const {
        std::vector<std::uint32_t> work = v_;
        return detail::rank_in_place(work, rows_, cols_, *field_);
    }

    bool is_full_rank() const { return rank() == std::min(rows_, cols_); }

    /// Result (i, j) = this(row_perm[i], col_perm[j]).
    Matrix permuted(const std::vector<int>& row_perm, const std::vector<int>& col_perm) const {
        if (!detail::is_permutation_of(row_perm, rows_))
            throw std::invalid_argument("row permutation does not match row count");
        if (!detail::is_permutation_of(col_perm, cols_))
            throw std::invalid_argument("column permutation does not match column count");
        Matrix out(*field_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out.v_[static_cast<std::size_t>(i) * cols_ + j] = value_at(row_perm[i], col_perm[j]);
        return out;
    }

    Matrix transposed() const {
        Matrix out(*field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out.v_[static_cast<std::size_t>(j) * rows_ + i] = value_at(i, j);
        return out;
    }

    bool operator==(const Matrix& o) const {
        return *field_ == *o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    const Field* field_;
    int rows_, cols_;
    std::vector<std::uint32_t> v_;
};

/// Text format: header "q=<designation> n=<rows> k=<cols>", then one line
/// per row with entries as canonical integers separated by whitespace.
inline std::string format_matrix(const Matrix& m) {
    std::ostringstream os;
    os << "q=" << m.field().designation() << " n=" << m.rows() << " k=" << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m.value_at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

namespace detail {

struct MatrixHeader {
    std::string field_designation;
    int rows = 0, cols = 0;
};

inline MatrixHeader parse_matrix_header(const std::string& text, std::size_t& body_start) {
    const auto eol = text.find('\n');
    const std::string line = text.substr(0, eol);
    body_start = eol == std::string::npos ? text.size() : eol + 1;

    MatrixHeader h;
    std::string field_part, poly_part;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok.rfind("q=", 0) == 0) field_part = tok.substr(2);
        else if (tok.rfind("poly=", 0) == 0) poly_part = tok;
        else if (tok.rfind("n=", 0) == 0) h.rows = std::stoi(tok.substr(2));
        else if (tok.rfind("k=", 0) == 0) h.cols = std::stoi(tok.substr(2));
        else throw std::invalid_argument("unexpected token '" + tok + "' in matrix header");
    }
    if (field_part.empty() || h.rows < 1 || h.cols < 1)
        throw std::invalid_argument("matrix header must name q=, n= and k=");
    h.field_designation = poly_part.empty() ? field_part : field_part + " " + poly_part;
    return h;
}

}  // namespace detail

inline Field parse_matrix_field(const std::string& text) {
    std::size_t body = 0;
    return parse_field(detail::parse_matrix_header(text, body).field_designation);
}

/// Parses the body against an existing field, which must match the header.
inline Matrix parse_matrix(const std::string& text, const Field& field) {
    std::size_t body = 0;
    const auto h = detail::parse_matrix_header(text, body);
    if (parse_field(h.field_designation) != field)
        throw std::invalid_argument("matrix header names a different field");

    std::istringstream is(text.substr(body));
    std::vector<std::uint32_t> values;
    long long v = 0;
    while (is >> v) {
        if (v < 0 || static_cast<std::uint64_t>(v) >= field.order())
            throw std::out_of_range("matrix entry outside field");
        values.push_back(static_cast<std::uint32_t>(v));
    }
    if (!is.eof())
        throw std::invalid_argument("non-numeric matrix entry");
    return Matrix::from_values(field, h.rows, h.cols, std::move(values));
}

}  // namespace fqrank

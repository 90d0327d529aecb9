#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridslp/dims.hpp"

namespace gridslp {

/// Dense row-major 2D string. Coordinates are 1-based.
class Matrix {
public:
    Matrix() = default;
    Matrix(Dim rows, Dim cols, char32_t fill = U'0');

    Dim rows() const noexcept { return rows_; }
    Dim cols() const noexcept { return cols_; }
    Dims dims() const noexcept { return {rows_, cols_}; }

    char32_t at(Dim x, Dim y) const { return cells_[(x - 1) * cols_ + (y - 1)]; }
    char32_t& at(Dim x, Dim y) { return cells_[(x - 1) * cols_ + (y - 1)]; }

    std::u32string_view row(Dim x) const {
        return {cells_.data() + (x - 1) * cols_, static_cast<std::size_t>(cols_)};
    }
    std::u32string column(Dim y) const;
    const std::u32string& cells() const noexcept { return cells_; }

    /// Copies src into this matrix with its top-left cell at (x, y).
    void paste(const Matrix& src, Dim x, Dim y);
    /// Clockwise rotation by 90 degrees.
    Matrix rotated_cw() const;

    /// Builds a matrix from UTF-8 rows of equal length.
    static Matrix from_rows(const std::vector<std::string>& rows);
    /// One UTF-8 line per row, each terminated by '\n'.
    std::string to_text() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    Dim rows_ = 0;
    Dim cols_ = 0;
    std::u32string cells_;
};

std::string to_utf8(char32_t c);
std::string to_utf8(std::u32string_view s);
/// Decodes UTF-8; throws Error on malformed input.
std::u32string from_utf8(std::string_view s);

}  // namespace gridslp

#include "gridslp/matrix.hpp"

namespace gridslp {

Matrix::Matrix(Dim rows, Dim cols, char32_t fill) : rows_(rows), cols_(cols) {
    cells_.assign(static_cast<std::size_t>(checked_mul(rows, cols)), fill);
}

std::u32string Matrix::column(Dim y) const {
    std::u32string out;
    out.reserve(rows_);
    for (Dim x = 1; x <= rows_; ++x) out.push_back(at(x, y));
    return out;
}

void Matrix::paste(const Matrix& src, Dim x, Dim y) {
    if (x + src.rows_ - 1 > rows_ || y + src.cols_ - 1 > cols_) {
        throw OutOfBounds("paste outside the target matrix");
    }
    for (Dim r = 1; r <= src.rows_; ++r) {
        auto line = src.row(r);
        std::copy(line.begin(), line.end(), cells_.begin() + (x + r - 2) * cols_ + (y - 1));
    }
}

Matrix Matrix::rotated_cw() const {
    Matrix out(cols_, rows_);
    for (Dim x = 1; x <= rows_; ++x) {
        for (Dim y = 1; y <= cols_; ++y) out.at(y, rows_ - x + 1) = at(x, y);
    }
    return out;
}

Matrix Matrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) return {};
    std::vector<std::u32string> decoded;
    decoded.reserve(rows.size());
    for (const auto& r : rows) decoded.push_back(from_utf8(r));
    Matrix m(decoded.size(), decoded.front().size());
    for (Dim x = 1; x <= m.rows_; ++x) {
        if (decoded[x - 1].size() != m.cols_) throw DimensionMismatch("ragged matrix rows");
        std::copy(decoded[x - 1].begin(), decoded[x - 1].end(),
                  m.cells_.begin() + (x - 1) * m.cols_);
    }
    return m;
}

std::string Matrix::to_text() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(rows_ * (cols_ + 1)));
    for (Dim x = 1; x <= rows_; ++x) {
        out += to_utf8(row(x));
        out += '\n';
    }
    return out;
}

std::string to_utf8(char32_t c) {
    std::string out;
    if (c < 0x80) {
        out += static_cast<char>(c);
    } else if (c < 0x800) {
        out += static_cast<char>(0xC0 | (c >> 6));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
        out += static_cast<char>(0xE0 | (c >> 12));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (c >> 18));
        out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    }
    return out;
}

std::string to_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) {
        if (c < 0x80) {
            out += static_cast<char>(c);
        } else {
            out += to_utf8(c);
        }
    }
    return out;
}

std::u32string from_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto b = static_cast<unsigned char>(s[i]);
        int extra = 0;
        char32_t c = 0;
        if (b < 0x80) {
            c = b;
        } else if ((b & 0xE0) == 0xC0) {
            c = b & 0x1F;
            extra = 1;
        } else if ((b & 0xF0) == 0xE0) {
            c = b & 0x0F;
            extra = 2;
        } else if ((b & 0xF8) == 0xF0) {
            c = b & 0x07;
            extra = 3;
        } else {
            throw Error("malformed UTF-8");
        }
        if (i + extra >= s.size() && extra > 0) {
            throw Error("truncated UTF-8 sequence");
        }
        for (int k = 1; k <= extra; ++k) {
            auto cont = static_cast<unsigned char>(s[i + k]);
            if ((cont & 0xC0) != 0x80) throw Error("malformed UTF-8");
            c = (c << 6) | (cont & 0x3F);
        }
        if (c > 0x10FFFF || (c >= 0xD800 && c <= 0xDFFF)) throw Error("not a Unicode scalar");
        out.push_back(c);
        i += 1 + extra;
    }
    return out;
}

}  // namespace gridslp

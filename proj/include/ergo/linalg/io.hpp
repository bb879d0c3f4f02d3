#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ergo/linalg/dense.hpp"

namespace ergo::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_field(std::string_view field, size_t line) {
    field = trim(field);
    if (field.empty()) throw InputError("line " + std::to_string(line) + ": empty field");
    if (field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw InputError("line " + std::to_string(line) + ": not a decimal number: '" + std::string(field) + "'");
    return value;
}

inline bool looks_like_json(std::string_view text) {
    const auto t = trim(text);
    return !t.empty() && (t.front() == '{' || t.front() == '[');
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/// One row per line, comma-separated unquoted decimals. Blank lines are
/// skipped; ragged rows are rejected.
inline Matrix parse_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = detail::trim(line);
        if (line.empty()) continue;
        std::vector<double> row;
        size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(detail::parse_field(line.substr(start, comma - start), line_no));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw InputError("line " + std::to_string(line_no) + ": ragged row (" + std::to_string(row.size()) +
                             " fields, expected " + std::to_string(rows.front().size()) + ")");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("empty matrix file");
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    require_finite(m);
    return m;
}

/// {"rows": r, "cols": c, "data": [row-major]} or a nested array of equal-length rows.
inline Matrix matrix_from_json(const nlohmann::json& j) {
    try {
        if (j.is_object()) {
            const auto r = j.at("rows").get<long long>();
            const auto c = j.at("cols").get<long long>();
            const auto& data = j.at("data");
            if (r <= 0 || c <= 0) throw InputError("matrix JSON: rows and cols must be positive");
            if (!data.is_array() || static_cast<long long>(data.size()) != r * c)
                throw InputError("matrix JSON: data length does not equal rows*cols");
            Matrix m(r, c);
            for (long long i = 0; i < r; ++i)
                for (long long k = 0; k < c; ++k) m(i, k) = data.at(static_cast<size_t>(i * c + k)).get<double>();
            require_finite(m);
            return m;
        }
        if (j.is_array() && !j.empty() && j.front().is_array()) {
            const auto c = j.front().size();
            if (c == 0) throw InputError("matrix JSON: empty row");
            Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(c));
            for (size_t i = 0; i < j.size(); ++i) {
                if (!j[i].is_array() || j[i].size() != c) throw InputError("matrix JSON: ragged rows");
                for (size_t k = 0; k < c; ++k)
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
            }
            require_finite(m);
            return m;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("matrix JSON: ") + e.what());
    }
    throw InputError("matrix JSON: expected {rows, cols, data} or an array of rows");
}

inline Matrix parse_matrix(std::string_view text) {
    if (detail::looks_like_json(text)) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("invalid JSON: ") + e.what());
        }
        return matrix_from_json(j);
    }
    return parse_csv(text);
}

inline Matrix read_matrix(const std::filesystem::path& path) { return parse_matrix(detail::slurp(path)); }

/// A vector file: a single CSV row or column, a JSON array of numbers, or a
/// JSON matrix with one row or one column.
inline Vector parse_vector(std::string_view text) {
    if (detail::looks_like_json(text)) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
            if (j.is_array() && (j.empty() || !j.front().is_array())) {
                if (j.empty()) throw InputError("empty vector");
                Vector v(static_cast<Eigen::Index>(j.size()));
                for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
                require_finite(v);
                return v;
            }
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("vector JSON: ") + e.what());
        }
    }
    const Matrix m = parse_matrix(text);
    if (m.rows() == 1) return m.row(0).transpose();
    if (m.cols() == 1) return m.col(0);
    throw InputError("vector file must have a single row or a single column");
}

inline Vector read_vector(const std::filesystem::path& path) { return parse_vector(detail::slurp(path)); }

/// A directory of matrix files (lexicographic order) or one JSON file holding
/// an array of matrices.
inline std::vector<Matrix> read_matrix_sequence(const std::filesystem::path& path) {
    std::vector<Matrix> out;
    if (std::filesystem::is_directory(path)) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(path))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) out.push_back(read_matrix(f));
    } else {
        const std::string text = detail::slurp(path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("sequence JSON: ") + e.what());
        }
        if (!j.is_array()) throw InputError("sequence JSON must be an array of matrices");
        for (const auto& item : j) out.push_back(matrix_from_json(item));
    }
    if (out.empty()) throw InputError("matrix sequence is empty");
    return out;
}

}  // namespace ergo::io

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "ergo/linalg/dense.hpp"

namespace ergo::report {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

inline Json to_json(const Vector& x) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i) j.push_back(x(i));
    return j;
}

inline Json to_json(const Matrix& m) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(to_json(Vector(m.row(i).transpose())));
    return j;
}

namespace detail {

inline void write(std::string& out, const Json& j, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: keys sorted
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
                write(out, it.value(), indent, depth + 1);
            }
            out += nl + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            out += "[";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",";
                if (!flat) out += nl + pad;
                first = false;
                write(out, e, indent, depth + 1);
            }
            if (!flat) out += nl + close_pad;
            out += "]";
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            return;
        }
        default: out += j.dump(); return;
    }
}

}  // namespace detail

/// Deterministic serialization: sorted keys, doubles at 17 significant digits.
inline std::string dump(const Json& j, int indent = 2) {
    std::string out;
    detail::write(out, j, indent, 0);
    return out;
}

inline Json make(const std::string& command, Json inputs, Json result, Json residuals) {
    Json r = Json::object();
    r["command"] = command;
    r["inputs"] = std::move(inputs);
    r["result"] = std::move(result);
    r["residuals"] = residuals.is_null() ? Json::object() : std::move(residuals);
    r["version"] = kVersion;
    return r;
}

}  // namespace ergo::report

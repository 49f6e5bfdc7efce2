#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "g2m/errors.hpp"

namespace g2m {

/// %.17g rendering: every double round-trips and reruns are byte-identical.
inline std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Minimal JSON emitter with caller-controlled key order and the fixed
/// float format above. Reports are written with this rather than a generic
/// serializer so that identical inputs produce identical bytes.
class JsonWriter {
public:
    JsonWriter& begin_object() {
        prefix();
        out_ += '{';
        stack_.push_back(true);
        return *this;
    }

    JsonWriter& end_object() {
        const bool empty = stack_.back();
        stack_.pop_back();
        if (!empty) newline_indent();
        out_ += '}';
        return *this;
    }

    JsonWriter& begin_array() {
        prefix();
        out_ += '[';
        stack_.push_back(true);
        return *this;
    }

    JsonWriter& end_array() {
        const bool empty = stack_.back();
        stack_.pop_back();
        if (!empty) newline_indent();
        out_ += ']';
        return *this;
    }

    JsonWriter& key(std::string_view k) {
        element();
        newline_indent();
        append_string(k);
        out_ += ": ";
        pending_key_ = true;
        return *this;
    }

    JsonWriter& value(double x) {
        prefix();
        out_ += format_double(x);
        return *this;
    }

    JsonWriter& value(int x) { return value(static_cast<std::int64_t>(x)); }

    JsonWriter& value(std::int64_t x) {
        prefix();
        out_ += std::to_string(x);
        return *this;
    }

    JsonWriter& value(std::uint64_t x) {
        prefix();
        out_ += std::to_string(x);
        return *this;
    }

    JsonWriter& value(bool b) {
        prefix();
        out_ += b ? "true" : "false";
        return *this;
    }

    JsonWriter& value(std::string_view s) {
        prefix();
        append_string(s);
        return *this;
    }

    JsonWriter& value(const char* s) { return value(std::string_view(s)); }

    std::string take() { return std::move(out_); }
    const std::string& str() const { return out_; }

private:
    void prefix() {
        if (pending_key_) {
            pending_key_ = false;
            return;
        }
        if (!stack_.empty()) {
            element();
            newline_indent();
        }
    }

    void element() {
        if (!stack_.empty()) {
            if (!stack_.back()) out_ += ',';
            stack_.back() = false;
        }
    }

    void newline_indent() {
        out_ += '\n';
        out_.append(2 * stack_.size(), ' ');
    }

    void append_string(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> stack_;  // true while the open container is still empty
    bool pending_key_ = false;
};

// ---- parse-side helpers: every violation names the field and the rule ----

using Json = nlohmann::json;

inline const Json& require_field(const Json& j, const std::string& path, const std::string& field) {
    if (!j.is_object()) throw InputError(path + ": expected an object");
    auto it = j.find(field);
    if (it == j.end()) throw InputError(path + "." + field + ": required field is missing");
    return *it;
}

inline double as_number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw InputError(path + ": expected a number");
    return j.get<double>();
}

inline std::int64_t as_integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
    return j.get<std::int64_t>();
}

inline bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw InputError(path + ": expected a boolean");
    return j.get<bool>();
}

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw InputError(path + ": expected a string");
    return j.get<std::string>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path + ": expected an array");
    return j;
}

inline std::vector<double> as_number_array(const Json& j, const std::string& path,
                                           std::size_t expected_size = 0) {
    const Json& arr = as_array(j, path);
    if (expected_size != 0 && arr.size() != expected_size)
        throw InputError(path + ": expected an array of " + std::to_string(expected_size) +
                         " numbers, got " + std::to_string(arr.size()));
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(as_number(arr[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline double field_number(const Json& j, const std::string& path, const std::string& field) {
    return as_number(require_field(j, path, field), path + "." + field);
}

inline std::string field_string(const Json& j, const std::string& path, const std::string& field) {
    return as_string(require_field(j, path, field), path + "." + field);
}

inline bool field_bool(const Json& j, const std::string& path, const std::string& field) {
    return as_bool(require_field(j, path, field), path + "." + field);
}

inline double optional_number(const Json& j, const std::string& path, const std::string& field,
                              double fallback) {
    if (!j.is_object() || !j.contains(field)) return fallback;
    return as_number(j.at(field), path + "." + field);
}

inline bool optional_bool(const Json& j, const std::string& path, const std::string& field,
                          bool fallback) {
    if (!j.is_object() || !j.contains(field)) return fallback;
    return as_bool(j.at(field), path + "." + field);
}

inline std::string optional_string(const Json& j, const std::string& path, const std::string& field,
                                   const std::string& fallback) {
    if (!j.is_object() || !j.contains(field)) return fallback;
    return as_string(j.at(field), path + "." + field);
}

inline std::int64_t optional_integer(const Json& j, const std::string& path,
                                     const std::string& field, std::int64_t fallback) {
    if (!j.is_object() || !j.contains(field)) return fallback;
    return as_integer(j.at(field), path + "." + field);
}

}  // namespace g2m

#pragma once

#include <string>

#include "sgspec/format.hpp"

namespace sgspec {

/// Pretty-prints a nlohmann-style JSON value like dump(indent), except that
/// floating point numbers are written with 17 significant digits.
template <class Json>
void dump17(const Json& j, std::string& out, int indent = 2, int depth = 0) {
    const auto pad = [&](int d) { out.append(static_cast<std::size_t>(indent * d), ' '); };
    if (j.is_number_float()) {
        out += fmt17(j.template get<double>());
    } else if (j.is_object() && !j.empty()) {
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            pad(depth + 1);
            out += Json(key).dump();
            out += ": ";
            dump17(value, out, indent, depth + 1);
        }
        out += "\n";
        pad(depth);
        out += "}";
    } else if (j.is_array() && !j.empty()) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            pad(depth + 1);
            dump17(j[i], out, indent, depth + 1);
        }
        out += "\n";
        pad(depth);
        out += "]";
    } else {
        out += j.dump();
    }
}

template <class Json>
std::string dump17(const Json& j, int indent = 2) {
    std::string out;
    dump17(j, out, indent);
    return out;
}

}  // namespace sgspec

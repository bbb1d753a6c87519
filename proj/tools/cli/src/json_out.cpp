#include "sphfin_cli/json_out.hpp"

#include <cmath>
#include <cstdio>

namespace sphfin::cli {

std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(2 * depth), ' '); }

void write(std::string& out, const Json& j, int depth) {
    switch (j.type()) {
        case Json::value_t::null: out += "null"; return;
        case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
        case Json::value_t::number_integer: out += std::to_string(j.get<long long>()); return;
        case Json::value_t::number_unsigned: out += std::to_string(j.get<unsigned long long>()); return;
        case Json::value_t::number_float: out += format_number(j.get<double>()); return;
        case Json::value_t::string: out += Json(j.get<std::string>()).dump(); return;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            bool scalars = true;
            for (const auto& e : j) scalars = scalars && !e.is_structured();
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += scalars ? ", " : ",";
                first = false;
                if (!scalars) {
                    out += '\n';
                    indent(out, depth + 1);
                }
                write(out, e, depth + 1);
            }
            if (!scalars) {
                out += '\n';
                indent(out, depth);
            }
            out += ']';
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                indent(out, depth + 1);
                out += Json(it.key()).dump();
                out += ": ";
                write(out, it.value(), depth + 1);
            }
            out += '\n';
            indent(out, depth);
            out += '}';
            return;
        }
        default: out += "null"; return;
    }
}

}  // namespace

std::string dump(const Json& j) {
    std::string out;
    write(out, j, 0);
    out += '\n';
    return out;
}

}  // namespace sphfin::cli

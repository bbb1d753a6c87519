#pragma once

#include <json.hpp>
#include <string>

namespace sphfin::cli {

using Json = nlohmann::json;

/// Formats a double with 17 significant digits; non-finite values become null.
std::string format_number(double v);

/// Serializes with sorted keys, two-space indentation and fixed float formatting.
std::string dump(const Json& j);

}  // namespace sphfin::cli

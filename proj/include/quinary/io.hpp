#pragma once

#include <string>

namespace quinary::io {

/// Locale-independent decimal with 17 significant digits.
std::string fmt(double value);

/// Same, for extended precision values (rounded to double first).
inline std::string fmt(long double value) { return fmt(static_cast<double>(value)); }

}  // namespace quinary::io

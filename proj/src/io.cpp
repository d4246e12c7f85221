#include "quinary/io.hpp"

#include <array>
#include <charconv>

namespace quinary::io {

std::string fmt(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                         std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return {buf.data(), end};
}

}  // namespace quinary::io

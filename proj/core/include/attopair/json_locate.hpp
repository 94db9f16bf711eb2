#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace attopair {

struct TextPosition {
  int line = 0;  // 1-based
  int column = 0;
};

/// Position of the key at `path` (object keys, or decimal indices for array
/// elements) inside well-formed JSON text.
std::optional<TextPosition> locate_json_key(std::string_view text, const std::vector<std::string>& path);

/// 1-based line/column of a byte offset.
TextPosition position_of(std::string_view text, std::size_t offset);

}  // namespace attopair

#include "attopair/json_locate.hpp"

namespace attopair {

TextPosition position_of(std::string_view text, std::size_t offset) {
  TextPosition p{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

namespace {

class Scanner {
 public:
  Scanner(std::string_view text, const std::vector<std::string>& target) : s_(text), target_(target) {}

  std::optional<std::size_t> run() {
    std::vector<std::string> path;
    value(path);
    return found_;
  }

 private:
  void ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
  }

  std::string string_token() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        out += s_[i_];
        ++i_;
      }
      out += s_[i_];
      ++i_;
    }
    ++i_;  // closing quote
    return out;
  }

  void value(std::vector<std::string>& path) {
    ws();
    if (i_ >= s_.size() || found_) return;
    const char c = s_[i_];
    if (c == '{') {
      ++i_;
      while (!found_) {
        ws();
        if (i_ >= s_.size() || s_[i_] == '}') break;
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        const std::size_t at = i_;
        path.push_back(string_token());
        if (path == target_) {
          found_ = at;
          return;
        }
        ws();
        if (i_ < s_.size() && s_[i_] == ':') ++i_;
        value(path);
        path.pop_back();
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      std::size_t index = 0;
      while (!found_) {
        ws();
        if (i_ >= s_.size() || s_[i_] == ']') break;
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        path.push_back(std::to_string(index++));
        if (path == target_) {
          found_ = i_;
          return;
        }
        value(path);
        path.pop_back();
      }
      ++i_;
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' && s_[i_] != ' ' &&
             s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t')
        ++i_;
    }
  }

  std::string_view s_;
  const std::vector<std::string>& target_;
  std::size_t i_ = 0;
  std::optional<std::size_t> found_;
};

}  // namespace

std::optional<TextPosition> locate_json_key(std::string_view text, const std::vector<std::string>& path) {
  if (path.empty()) return TextPosition{1, 1};
  Scanner sc(text, path);
  const auto at = sc.run();
  if (!at) return std::nullopt;
  return position_of(text, *at);
}

}  // namespace attopair

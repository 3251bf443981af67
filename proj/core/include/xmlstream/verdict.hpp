#pragma once

#include <cstddef>
#include <string>

#include "xmlstream/label.hpp"

namespace xmlstream {

struct Verdict {
  bool valid = true;
  std::size_t token_index = 0;  // 1-based stream index where the violation surfaced
  Label parent;

  static Verdict ok() { return {}; }
  static Verdict invalid(std::size_t index, Label parent) { return {false, index, parent}; }

  // "valid" or "invalid <token_index> <parent_label>"
  std::string to_string() const;
};

}  // namespace xmlstream

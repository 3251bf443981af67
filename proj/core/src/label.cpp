#include "xmlstream/label.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

#include "xmlstream/error.hpp"

namespace xmlstream {
namespace {

struct LabelTable {
  std::mutex mutex;
  std::deque<std::string> names{"", "_"};
  std::unordered_map<std::string_view, std::uint32_t> ids{{"_", 1}};
};

LabelTable& table() {
  static LabelTable t;
  return t;
}

}  // namespace

bool is_valid_label_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    if (!ok) return false;
  }
  return true;
}

Label Label::of(std::string_view name) {
  if (name != "_" && !is_valid_label_name(name)) {
    throw Error(ErrorCode::MalformedToken, "invalid label '" + std::string(name) + "'");
  }
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.ids.find(name); it != t.ids.end()) return Label(it->second);
  auto id = static_cast<std::uint32_t>(t.names.size());
  t.names.emplace_back(name);
  t.ids.emplace(t.names.back(), id);
  return Label(id);
}

std::string_view Label::name() const {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  return t.names[id_];
}

std::uint32_t label_id_limit() {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  return static_cast<std::uint32_t>(t.names.size());
}

}  // namespace xmlstream

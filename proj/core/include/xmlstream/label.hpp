#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace xmlstream {

// Interned element label. Id 0 is the absent label, id 1 is the dummy label "_".
class Label {
 public:
  constexpr Label() noexcept = default;

  // Interns `name`; throws MalformedToken unless name is "_" or matches [a-zA-Z0-9]+.
  static Label of(std::string_view name);
  static constexpr Label bottom() noexcept { return Label(1); }

  std::string_view name() const;
  std::string str() const { return std::string(name()); }

  constexpr std::uint32_t id() const noexcept { return id_; }
  constexpr bool empty() const noexcept { return id_ == 0; }
  constexpr bool is_bottom() const noexcept { return id_ == 1; }

  friend constexpr bool operator==(Label a, Label b) noexcept { return a.id_ == b.id_; }
  friend constexpr auto operator<=>(Label a, Label b) noexcept { return a.id_ <=> b.id_; }

 private:
  constexpr explicit Label(std::uint32_t id) noexcept : id_(id) {}
  std::uint32_t id_ = 0;
};

bool is_valid_label_name(std::string_view name) noexcept;

// Upper bound (exclusive) on label ids interned so far.
std::uint32_t label_id_limit();

}  // namespace xmlstream

template <>
struct std::hash<xmlstream::Label> {
  std::size_t operator()(xmlstream::Label l) const noexcept { return l.id(); }
};

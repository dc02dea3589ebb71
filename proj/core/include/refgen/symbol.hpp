#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <utility>

namespace refgen {

// Interned-by-value name. The tag keeps attribute names, values and entity
// ids from being mixed up.
template <class Tag>
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string text) : text_(std::move(text)) {}
  explicit Symbol(const char* text) : text_(text) {}

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  auto operator<=>(const Symbol&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const Symbol& s) {
    return os << s.text_;
  }

 private:
  std::string text_;
};

using AttributeName = Symbol<struct AttributeTag>;
using ValueName = Symbol<struct ValueTag>;
using EntityId = Symbol<struct EntityTag>;

// Always-present attribute realized as the head noun.
inline const AttributeName kTypeAttribute{"type"};

}  // namespace refgen

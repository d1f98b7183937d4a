#pragma once

#include <optional>
#include <string_view>

namespace animacy {

enum class Label { Animate, Inanimate, Unknown };

constexpr char label_code(Label l) noexcept {
  switch (l) {
    case Label::Animate: return 'A';
    case Label::Inanimate: return 'I';
    case Label::Unknown: return 'U';
  }
  return 'U';
}

constexpr std::optional<Label> parse_label(std::string_view s) noexcept {
  if (s == "A") return Label::Animate;
  if (s == "I") return Label::Inanimate;
  if (s == "U") return Label::Unknown;
  return std::nullopt;
}

constexpr Label opposite(Label l) noexcept {
  if (l == Label::Animate) return Label::Inanimate;
  if (l == Label::Inanimate) return Label::Animate;
  return Label::Unknown;
}

}  // namespace animacy

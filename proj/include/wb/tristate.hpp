#pragma once

#include <string_view>

namespace wb {

enum class TriState { Provable, Refutable, Independent };

constexpr std::string_view to_string(TriState t) {
  switch (t) {
    case TriState::Provable: return "provable";
    case TriState::Refutable: return "refutable";
    case TriState::Independent: return "independent";
  }
  return "?";
}

}  // namespace wb

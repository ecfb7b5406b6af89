#include "pinrefine/types.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace pinrefine {

ProteinId::ProteinId(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) {
    throw Error("invalid protein id '" + value_ + "'");
  }
}

bool ProteinId::is_valid(std::string_view candidate) noexcept {
  return !candidate.empty() && std::none_of(candidate.begin(), candidate.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  });
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace pinrefine

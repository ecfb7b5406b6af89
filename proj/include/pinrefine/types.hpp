#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pinrefine {

// Protein identifier (ORF name or similar). Nonempty, no whitespace,
// compared exactly.
class ProteinId {
 public:
  ProteinId() = default;
  explicit ProteinId(std::string value);

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const ProteinId&, const ProteinId&) = default;
  friend bool operator==(const ProteinId&, const ProteinId&) = default;

  static bool is_valid(std::string_view candidate) noexcept;

 private:
  std::string value_;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pinrefine

template <>
struct std::hash<pinrefine::ProteinId> {
  std::size_t operator()(const pinrefine::ProteinId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

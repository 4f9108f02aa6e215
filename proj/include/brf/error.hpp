#pragma once

#include <stdexcept>
#include <string>

namespace brf {

enum class ErrorKind {
  InvalidInput,
  ZeroWidthBand,
  ZeroEnergyBand,
  DegenerateBand,
  LevelTooDeep,
  InvalidConfig,
  Configuration,
  Parse,
  Format,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace brf

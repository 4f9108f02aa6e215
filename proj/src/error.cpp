#include "brf/error.hpp"

namespace brf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ZeroWidthBand: return "zero-width-band";
    case ErrorKind::ZeroEnergyBand: return "zero-energy-band";
    case ErrorKind::DegenerateBand: return "degenerate-band";
    case ErrorKind::LevelTooDeep: return "level-too-deep";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Format: return "format";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace brf

#include "torusmirror/errors.hpp"

namespace torusmirror {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIndeterminatePhase: return "IndeterminatePhase";
    case ErrorKind::kNotSymplecticType: return "NotSymplecticType";
    case ErrorKind::kNotComplexType: return "NotComplexType";
    case ErrorKind::kMirrorUndefined: return "MirrorUndefined";
    case ErrorKind::kNotHolomorphic: return "NotHolomorphic";
    case ErrorKind::kNotLagrangian: return "NotLagrangian";
    case ErrorKind::kConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace torusmirror

#pragma once

#include <stdexcept>
#include <string>

namespace aurora {

struct InvalidSeverity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyDepth : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyGroundTruth : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateFit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoMasks : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LayoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace aurora

#include "varmult/errors.hpp"

namespace varmult {

SizeMismatch::SizeMismatch(std::size_t expected, std::size_t actual)
    : InvalidArgument("size mismatch: expected " + std::to_string(expected) + ", got " +
                      std::to_string(actual)) {}

}  // namespace varmult

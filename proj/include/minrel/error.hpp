#pragma once

#include <stdexcept>
#include <string>

namespace minrel {

/// Raised for malformed data or arguments: bad lengths, non-finite values,
/// unknown names. Every public operation reports failure through this type.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace minrel

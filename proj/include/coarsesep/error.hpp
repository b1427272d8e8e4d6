#pragma once

#include <stdexcept>
#include <string>

namespace coarsesep {

/// Raised for every contract violation the library detects: malformed input,
/// violated preconditions, exceeded resource caps.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coarsesep

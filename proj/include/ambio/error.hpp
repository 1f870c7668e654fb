#pragma once

#include <stdexcept>
#include <string>

namespace ambio {

/// Raised for every contract violation and I/O failure in the library.
/// The message is a single line so the CLI can print it verbatim.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ambio

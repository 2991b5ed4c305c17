#pragma once

#include <stdexcept>
#include <string>

namespace claimrank {

// Raised for problems the user can fix: malformed input files, bad
// configuration, missing upstream artifacts. Anything else escaping the
// library is treated as an internal error by the CLI.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input file validation failure with a location.
class ValidationError : public Error {
public:
    ValidationError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), path_(path), line_(line) {}

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

}  // namespace claimrank

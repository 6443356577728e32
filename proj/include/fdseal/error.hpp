#pragma once

#include <stdexcept>
#include <string>

namespace fdseal {

// Error taxonomy maps onto CLI exit codes: input errors exit 2,
// verification failures exit 1.
enum class ErrorKind {
    input,        // malformed files, bad parameters
    crypto,       // key mismatch, tampered ciphertext
    verification, // a checked guarantee did not hold
    internal,     // broken invariant, indicates a bug
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) {
    throw Error(ErrorKind::input, msg);
}
[[noreturn]] inline void throw_crypto(const std::string& msg) {
    throw Error(ErrorKind::crypto, msg);
}
[[noreturn]] inline void throw_verification(const std::string& msg) {
    throw Error(ErrorKind::verification, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
    throw Error(ErrorKind::internal, msg);
}

} // namespace fdseal

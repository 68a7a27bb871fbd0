#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace gg {

// All library errors carry a stable machine-readable code alongside the
// human-readable message.  CapExceeded gets its own type so callers can map
// it to a distinct exit status.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& msg) : Error("OrderCapExceeded", msg) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace gg

#pragma once

#include <stdexcept>
#include <string>

namespace gpbec {

/// Exception carrying a stable machine-readable kind tag alongside the
/// human-readable message. CLI layers serialize the kind into error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace gpbec

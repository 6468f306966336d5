#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace memsbpf {

// Domain error with a stable machine-readable code ("no_peak",
// "unknown_material", ...). The CLI maps codes to exit status 2 and
// prints them as `error_code=<code>` on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace memsbpf

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svadf {

/// Failure categories. The CLI prints these verbatim, so they double as a
/// machine-readable error vocabulary.
enum class ErrorKind {
    InvalidSpec,
    WindowSize,
    DegenerateRegressor,
    SingularDesign,
    Domain,
    ExactUnitRoot,
    Schema,
    Parse,
    Data,
    Io,
    Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace svadf

#include "svadf/error.hpp"

namespace svadf {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidSpec: return "invalid-spec";
        case ErrorKind::WindowSize: return "window-size";
        case ErrorKind::DegenerateRegressor: return "degenerate-regressor";
        case ErrorKind::SingularDesign: return "singular-design";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::ExactUnitRoot: return "exact-unit-root";
        case ErrorKind::Schema: return "schema";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Data: return "data";
        case ErrorKind::Io: return "io";
        case ErrorKind::Usage: return "usage";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

}  // namespace svadf

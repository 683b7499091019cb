#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpmspdc {

enum class ErrorKind {
    input,            // non-finite or otherwise malformed numeric input
    range,            // wavelength outside a model's validity window
    parse,            // text file or flag value could not be parsed
    arity,            // coefficient count does not match the functional form
    guidance,         // mode not supported by the waveguide at this frequency
    order,            // grating order not registered with the poling spec
    nonphysical_pair, // signal/idler pair violates energy conservation
    no_solution,      // phase matching has no solution for the requested order
    usage,            // invalid configuration or command-line usage
    io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::input: return "input error";
    case ErrorKind::range: return "range error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::arity: return "arity error";
    case ErrorKind::guidance: return "guidance error";
    case ErrorKind::order: return "order error";
    case ErrorKind::nonphysical_pair: return "nonphysical pair";
    case ErrorKind::no_solution: return "no solution";
    case ErrorKind::usage: return "usage error";
    case ErrorKind::io: return "io error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define QPMSPDC_DEFINE_ERROR(Name, Kind)                                      \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& message) : Error(Kind, message) {}   \
    }

QPMSPDC_DEFINE_ERROR(InputError, ErrorKind::input);
QPMSPDC_DEFINE_ERROR(RangeError, ErrorKind::range);
QPMSPDC_DEFINE_ERROR(ParseError, ErrorKind::parse);
QPMSPDC_DEFINE_ERROR(ArityError, ErrorKind::arity);
QPMSPDC_DEFINE_ERROR(GuidanceError, ErrorKind::guidance);
QPMSPDC_DEFINE_ERROR(OrderError, ErrorKind::order);
QPMSPDC_DEFINE_ERROR(NonphysicalPairError, ErrorKind::nonphysical_pair);
QPMSPDC_DEFINE_ERROR(NoSolutionError, ErrorKind::no_solution);
QPMSPDC_DEFINE_ERROR(UsageError, ErrorKind::usage);
QPMSPDC_DEFINE_ERROR(IoError, ErrorKind::io);

#undef QPMSPDC_DEFINE_ERROR

} // namespace qpmspdc

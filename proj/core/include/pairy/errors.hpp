#pragma once

#include <stdexcept>
#include <string>

namespace pairy {

// Exit-code buckets used by the CLI.
enum class ErrorKind { validation = 2, numeric = 3, check = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    virtual const char* name() const noexcept { return "Error"; }

private:
    ErrorKind kind_;
};

#define PAIRY_DEFINE_ERROR(Name, Kind)                                    \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what) : Error(Kind, what) {}     \
        const char* name() const noexcept override { return #Name; }      \
    };

PAIRY_DEFINE_ERROR(HalfPointError, ErrorKind::validation)
PAIRY_DEFINE_ERROR(CapExceeded, ErrorKind::validation)
PAIRY_DEFINE_ERROR(MalformedPath, ErrorKind::validation)
PAIRY_DEFINE_ERROR(KindMismatch, ErrorKind::validation)
PAIRY_DEFINE_ERROR(OrderMismatch, ErrorKind::validation)
PAIRY_DEFINE_ERROR(PoleError, ErrorKind::numeric)
PAIRY_DEFINE_ERROR(DomainError, ErrorKind::numeric)
PAIRY_DEFINE_ERROR(ConvergenceError, ErrorKind::numeric)
PAIRY_DEFINE_ERROR(ExtrapolationUnstable, ErrorKind::numeric)
PAIRY_DEFINE_ERROR(DerivativeUnstable, ErrorKind::numeric)
PAIRY_DEFINE_ERROR(NoClosedForm, ErrorKind::numeric)
PAIRY_DEFINE_ERROR(MismatchError, ErrorKind::check)
PAIRY_DEFINE_ERROR(BoundViolation, ErrorKind::check)

#undef PAIRY_DEFINE_ERROR

}  // namespace pairy

#pragma once

#include <stdexcept>
#include <string>

namespace odo {

enum class ErrorCode {
    // schema layer
    InvalidTerm,
    DuplicateTerm,
    UnknownParent,
    UnknownTerm,
    UnknownDomain,
    UnknownRange,
    InverseMismatch,
    // assertion layer
    UnknownCategory,
    UnknownPredicate,
    UnknownIndividual,
    RangeKindMismatch,
    ArityMismatch,
    DomainViolation,
    // TLE codec
    BadLength,
    BadLineNumber,
    ChecksumMismatch,
    FieldSyntax,
    CatalogNumberMismatch,
    RangeViolation,
    UnrepresentableField,
    // federation
    SchemaConflict,
    // file formats
    ParseError,
    IoError,
};

const char* error_name(ErrorCode code);

/// Domain error carrying a stable code name for CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace odo

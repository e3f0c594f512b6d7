#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Invalid input or parameter outside the supported domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input is valid but larger than the configured enumeration / exactness cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed.  Signals a bug, not a data condition.
struct StructuralError : std::logic_error {
    using std::logic_error::logic_error;
};

struct SingularMatrix : DomainError {
    using DomainError::DomainError;
};
struct ModulusMismatch : DomainError {
    using DomainError::DomainError;
};
struct NonSymmetricGenerators : DomainError {
    using DomainError::DomainError;
};
struct ClosureViolation : DomainError {
    using DomainError::DomainError;
};
struct OrderMismatch : DomainError {
    using DomainError::DomainError;
};
struct NotConnected : DomainError {
    using DomainError::DomainError;
};
struct NotRegular : DomainError {
    using DomainError::DomainError;
};
struct NotBipartite : DomainError {
    using DomainError::DomainError;
};
struct MixedK : DomainError {
    using DomainError::DomainError;
};
struct BadDivisibility : DomainError {
    using DomainError::DomainError;
};
struct EvenK : DomainError {
    using DomainError::DomainError;
};
struct ConnectivityFailure : StructuralError {
    using StructuralError::StructuralError;
};

} // namespace forge

#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// bad mathematical input -> DomainError, broken caller contract ->
// PreconditionError, a cap was hit -> ResourceError, persisted data fails
// re-verification -> IntegrityError.

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

inline void require_domain(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

// Always-on consistency check (unlike assert, survives NDEBUG builds).
inline void internal_check(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

}  // namespace cayley

#pragma once

#include <stdexcept>
#include <string>

namespace qfilter {

/// A matrix that was required to be positive semidefinite has an eigenvalue
/// below the clipping tolerance. Carries the offending eigenvalue.
class NotPsdError : public std::runtime_error {
public:
    NotPsdError(const std::string& what, double min_eigenvalue)
        : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// An enumeration was requested beyond the configured cap.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed object failed one of its defining identities.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qfilter

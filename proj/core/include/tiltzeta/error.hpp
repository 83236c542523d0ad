#pragma once

#include <stdexcept>
#include <string>

namespace tiltzeta {

/// Raised when an operation is called outside its mathematical domain
/// (cutoff too small, window too short, polynomial too long, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised by operations that refuse to work on an incomplete zero list.
class IncompleteZerosError : public std::runtime_error {
public:
    IncompleteZerosError(const std::string& what, long found, long expected)
        : std::runtime_error(what), found_(found), expected_(expected) {}

    long found() const noexcept { return found_; }
    long expected() const noexcept { return expected_; }

private:
    long found_;
    long expected_;
};

}  // namespace tiltzeta

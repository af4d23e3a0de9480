#pragma once

#include <stdexcept>
#include <string>

namespace subcat {

enum class ErrorKind {
    RingMismatch,      // operands live in different rings
    Domain,            // precondition violated (zero/unit factor, bad partition, ...)
    NotInSubcategory,  // no certificate exists
    Parse,             // malformed serialized input
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void ring_mismatch(const std::string& where) {
    throw Error(ErrorKind::RingMismatch, where + ": operands belong to different rings");
}

}  // namespace subcat

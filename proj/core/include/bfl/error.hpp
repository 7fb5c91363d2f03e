#pragma once

#include <stdexcept>
#include <string>

namespace bfl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments, malformed input files, violated preconditions.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A search or enumeration ran past its configured node/size budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// An exact 128-bit computation left its representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

namespace detail {
[[noreturn]] inline void invalid(const std::string& what) { throw ValidationError(what); }
inline void require(bool ok, const std::string& what) {
    if (!ok) invalid(what);
}
}  // namespace detail

}  // namespace bfl

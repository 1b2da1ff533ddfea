#pragma once

#include <stdexcept>
#include <string>

namespace spinwire {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct InvalidInit : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct NumericalInstability : Error {
    using Error::Error;
};

struct SizeLimit : Error {
    using Error::Error;
};

struct BracketFailure : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

struct PositivityViolation : Error {
    using Error::Error;
};

struct NotPure : Error {
    using Error::Error;
};

}  // namespace spinwire

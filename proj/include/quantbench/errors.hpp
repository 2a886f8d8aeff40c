#pragma once

#include <stdexcept>
#include <string>

namespace quantbench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AllZeroError : Error {
    using Error::Error;
};

struct NegativeCountError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

struct DegenerateDataError : Error {
    using Error::Error;
};

struct EmptyInputError : Error {
    using Error::Error;
};

struct BudgetExceedsCellError : Error {
    using Error::Error;
};

struct FeaturesUnavailableError : Error {
    using Error::Error;
};

struct NonFiniteLikelihoodError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct SimplexViolationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace quantbench

#pragma once

#include <stdexcept>
#include <string>

namespace expramsey {

// Base of every error the library raises. Budget-style errors (a cap or
// enumeration limit was hit) derive from LimitExceeded so callers can map
// them to a single exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class LimitExceeded : public Error {
public:
    using Error::Error;
};

// A bit-length cap (value, multiplicity or exponent) would be exceeded.
class CapExceeded : public LimitExceeded {
public:
    using LimitExceeded::LimitExceeded;
};

class EnumerationBudgetExceeded : public LimitExceeded {
public:
    using LimitExceeded::LimitExceeded;
};

class FactorizationBudgetExceeded : public LimitExceeded {
public:
    using LimitExceeded::LimitExceeded;
};

// An exponent that must be used as a literal integer is too large to write down.
class InnerExponentTooLarge : public LimitExceeded {
public:
    using LimitExceeded::LimitExceeded;
};

// A coloring was asked for the color of a value outside its domain.
class OutOfDomain : public LimitExceeded {
public:
    using LimitExceeded::LimitExceeded;
};

} // namespace expramsey

#pragma once

#include <stdexcept>
#include <string>

namespace sigcube {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent graph input files.
class LoadError : public Error {
public:
    using Error::Error;
};

// Unknown vertex id.
class LookupError : public Error {
public:
    using Error::Error;
};

// Out-of-range or infeasible parameters.
class ParamError : public Error {
public:
    using Error::Error;
};

// Unknown dimension name in a cuboid query.
class QueryError : public Error {
public:
    using Error::Error;
};

// Cuboid outside the materialized lattice (or its file is missing).
class NotMaterializedError : public Error {
public:
    using Error::Error;
};

// Malformed cube directory content.
class ParseError : public Error {
public:
    using Error::Error;
};

// Two cubes that must agree do not.
class VerificationError : public Error {
public:
    using Error::Error;
};

} // namespace sigcube

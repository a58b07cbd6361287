#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace listfair {

/// Base class of every error raised by the library. The CLI maps these to
/// exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: bad header, wrong column count, garbled line.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A syntactically valid value that violates a domain constraint.
class ValueError : public Error {
public:
    using Error::Error;
};

/// Repeated (name, gender) pair in a dataset.
class DuplicateError : public Error {
public:
    using Error::Error;
};

/// A required file is absent (e.g. a missing SSA year file).
class MissingFileError : public Error {
public:
    using Error::Error;
};

/// A stratified sample asks for individuals of a gender the dataset lacks.
class InfeasibleSampleError : public Error {
public:
    using Error::Error;
};

/// The list is shorter than the rND checkpoint step.
class SampleTooSmallError : public Error {
public:
    using Error::Error;
};

}  // namespace listfair

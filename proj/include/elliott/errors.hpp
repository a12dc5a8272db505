#pragma once

#include <stdexcept>
#include <string>

namespace elliott {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document (bad row, bad number, bad header).
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally valid input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Bad configuration file or experiment definition.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Knowledge-store I/O failure.
class StoreError : public Error {
public:
    using Error::Error;
};

// Data source could not be resolved or loaded.
class DataError : public Error {
public:
    using Error::Error;
};

// Chart rendering failure (e.g. pattern indices outside the series).
class RenderError : public Error {
public:
    using Error::Error;
};

// A pipeline stage aborted the run; message names the failing stage.
class PipelineError : public Error {
public:
    using Error::Error;
};

} // namespace elliott

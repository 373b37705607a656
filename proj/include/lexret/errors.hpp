#pragma once

#include <stdexcept>
#include <string>

namespace lexret {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of a formula (df = 0, k < 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file: qrels, run, queries, embeddings, config or index.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Persisted index written by an incompatible format version.
class VersionError : public FormatError {
public:
    using FormatError::FormatError;
};

/// Query analysed with a different pipeline than the one the index was built with.
class PipelineMismatchError : public Error {
public:
    using Error::Error;
};

/// Invalid corpus handed to the index builder (duplicate or malformed DocId, no documents).
class IndexBuildError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace lexret

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sastlong {

/// Base class of every error the toolkit raises deliberately.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Usage or configuration problems. The CLI maps these to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Problems with input data (manifests, diffs, SARIF, result tables).
/// The CLI maps these to exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

// corpus
class ManifestSyntaxError : public DataError {
public:
    using DataError::DataError;
};
class ManifestSemanticError : public DataError {
public:
    using DataError::DataError;
};
class MissingFileError : public DataError {
public:
    using DataError::DataError;
};
class VersionParseError : public DataError {
public:
    using DataError::DataError;
};

// diffparse
class DiffSyntaxError : public DataError {
public:
    using DataError::DataError;
};
class EmptyDiffError : public DataError {
public:
    using DataError::DataError;
};
class PathEscapeError : public DataError {
public:
    using DataError::DataError;
};

// sarifread
class SarifSyntaxError : public DataError {
public:
    using DataError::DataError;
};
class SarifUnsupportedError : public DataError {
public:
    using DataError::DataError;
};

// detection
class VersionMismatchError : public DataError {
public:
    using DataError::DataError;
};
class UnknownVersionError : public DataError {
public:
    using DataError::DataError;
};

// locality
class EmptyFixDeltaError : public DataError {
public:
    using DataError::DataError;
};

// stability
class DuplicateVersionError : public DataError {
public:
    using DataError::DataError;
};

// report
class EmptyCohortError : public DataError {
public:
    using DataError::DataError;
};
class UnknownDimensionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// runner
class ConfigInvalidError : public ConfigError {
public:
    using ConfigError::ConfigError;
};
class WorkdirUnwritableError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

} // namespace sastlong

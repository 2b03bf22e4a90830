#pragma once

#include <stdexcept>
#include <string>

namespace rpboost {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape disagreement between operands (matrix dims, vector lengths).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A parameter or input value outside its contract (negative weight,
/// zero dimension, bad fraction, ...).
class ValueError : public Error {
public:
    using Error::Error;
};

/// The SPD factorization hit a non-positive pivot: the system is singular
/// or indefinite. Callers typically respond by raising lambda.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// File ingestion problems, with a machine-checkable kind.
class DataError : public Error {
public:
    enum class Kind {
        MissingFile,
        EmptyFile,
        RaggedRow,
        BadNumber,
        BadFormat,
        NonIncreasingIndex,
        SingleClass,
    };

    DataError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace rpboost

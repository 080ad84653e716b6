#pragma once

#include <stdexcept>
#include <string>

namespace footclust {

/// Broad failure classes. The CLI maps them onto exit codes
/// (usage = 1, data = 2, numeric = 3).
enum class ErrorKind { usage, data, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Precondition violated by a caller-supplied value.
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& what) : Error(ErrorKind::data, what) {}
};

/// Unreadable/unwritable file or malformed document.
struct DataError : Error {
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

struct ConstantColumn : Error {
    explicit ConstantColumn(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

struct FitFailure : Error {
    explicit FitFailure(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// Two records share no commonly observed quantitative variable.
struct IncomparablePair : Error {
    explicit IncomparablePair(const std::string& what) : Error(ErrorKind::data, what) {}
};

struct DegenerateGroup : Error {
    explicit DegenerateGroup(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// An index has no defined value for this clustering (e.g. separation at K = 1).
struct UndefinedIndex : Error {
    explicit UndefinedIndex(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

struct DegenerateCalibration : Error {
    explicit DegenerateCalibration(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

}  // namespace footclust

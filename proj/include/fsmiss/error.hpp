#ifndef FSMISS_ERROR_HPP
#define FSMISS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fsmiss {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file layout (ragged rows, empty file).
class format_error : public error {
 public:
    using error::error;
};

/// A cell that should hold a number does not.
class parse_error : public error {
 public:
    using error::error;
};

/// Data-level problems: missing labels, fully missing columns.
class data_error : public error {
 public:
    using error::error;
};

/// Caller broke a precondition (dimension mismatch, empty mask, empty input).
class contract_error : public error {
 public:
    using error::error;
};

/// Invalid parameter combination (k too large, too few instances for the folds).
class config_error : public error {
 public:
    using error::error;
};

/// The classifier could not be evaluated (e.g. empty training set).
class evaluation_error : public error {
 public:
    using error::error;
};

/// File system failures.
class io_error : public error {
 public:
    using error::error;
};

}  // namespace fsmiss

#endif  // FSMISS_ERROR_HPP

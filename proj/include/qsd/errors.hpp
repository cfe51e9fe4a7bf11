#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsd {

/// Validation errors come from bad input and map to CLI exit 1; numerical and
/// io errors map to exit 2.
enum class ErrorCategory { validation, numerical, io };

class Error : public std::runtime_error {
public:
    Error(std::string code, ErrorCategory category, const std::string& message);

    const std::string& code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string code_;
    ErrorCategory category_;
};

#define QSD_DECLARE_ERROR(Name, Category)                               \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& message)                       \
            : Error(#Name, ErrorCategory::Category, message) {}         \
    };

QSD_DECLARE_ERROR(InvalidArgument, validation)
QSD_DECLARE_ERROR(NotNormalized, validation)
QSD_DECLARE_ERROR(BadWeights, validation)
QSD_DECLARE_ERROR(NotPure, validation)
QSD_DECLARE_ERROR(EmptyInput, validation)
QSD_DECLARE_ERROR(TooFewRecords, validation)
QSD_DECLARE_ERROR(DegenerateRisk, validation)
QSD_DECLARE_ERROR(DomainTooNarrow, numerical)
QSD_DECLARE_ERROR(NotADensity, numerical)
QSD_DECLARE_ERROR(LeakyDomain, numerical)
QSD_DECLARE_ERROR(SliceDegenerate, numerical)
QSD_DECLARE_ERROR(IoFailure, io)

#undef QSD_DECLARE_ERROR

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(std::size_t index, const std::string& message)
        : Error("ConvergenceFailure", ErrorCategory::numerical, message), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

struct RowIssue {
    std::size_t row;  // 1-based data row, header excluded
    std::string reason;
};

class MalformedRow : public Error {
public:
    explicit MalformedRow(std::vector<RowIssue> issues);

    const std::vector<RowIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<RowIssue> issues_;
};

}  // namespace qsd

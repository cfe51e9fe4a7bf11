#include "qsd/errors.hpp"

#include <sstream>
#include <utility>

namespace qsd {

Error::Error(std::string code, ErrorCategory category, const std::string& message)
    : std::runtime_error(message), code_(std::move(code)), category_(category) {}

namespace {

std::string describe(const std::vector<RowIssue>& issues) {
    std::ostringstream os;
    os << issues.size() << " malformed row(s)";
    for (const auto& issue : issues) {
        os << "; row " << issue.row << ": " << issue.reason;
    }
    return os.str();
}

}  // namespace

MalformedRow::MalformedRow(std::vector<RowIssue> issues)
    : Error("MalformedRow", ErrorCategory::validation, describe(issues)),
      issues_(std::move(issues)) {}

}  // namespace qsd

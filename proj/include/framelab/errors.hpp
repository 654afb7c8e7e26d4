#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

// Thrown when an operation would exceed its configured work or memory budget.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Resource error raised by adaptive quadrature when the node budget runs out.
// Carries the best estimate obtained so far and the achieved error bound.
class quadrature_budget_error : public resource_error {
public:
    quadrature_budget_error(const std::string& msg, double best_estimate, double error_bound)
        : resource_error(msg), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const { return best_estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

// Malformed input text (point files, masks, configs). line() is 1-based;
// 0 means "not tied to a specific line".
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace framelab

#pragma once

#include <stdexcept>
#include <string>

namespace omqrw {

// Input could not be parsed. Carries a 1-based position when known.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line = 0, int col = 0)
        : std::runtime_error(line > 0 ? msg + " at line " + std::to_string(line) +
                                            (col > 0 ? ":" + std::to_string(col) : "")
                                      : msg),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// A documented precondition of an operation does not hold.
// kind() is a stable identifier such as "NotLinear" or "InfiniteDepth".
class precondition_error : public std::runtime_error {
public:
    precondition_error(std::string kind, std::string msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// The inputs are well-formed but semantically unusable (e.g. InconsistentInput).
class semantic_error : public std::runtime_error {
public:
    semantic_error(std::string kind, std::string msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

} // namespace omqrw

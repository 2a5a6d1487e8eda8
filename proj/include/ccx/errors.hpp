#pragma once

#include <stdexcept>
#include <string>

namespace ccx {

// Input that cannot be parsed (Newick text, partition text, taxon maps).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A desk-scale guard was exceeded. Callers may retry with a larger limit.
class GuardError : public std::runtime_error {
public:
    GuardError(const std::string& what_op, long long n, long long guard)
        : std::runtime_error(what_op + ": n=" + std::to_string(n) +
                             " exceeds guard " + std::to_string(guard) +
                             " (raise the limit to override)"),
          n_(n), guard_(guard) {}
    long long n() const { return n_; }
    long long guard() const { return guard_; }

private:
    long long n_;
    long long guard_;
};

} // namespace ccx

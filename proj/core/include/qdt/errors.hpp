#pragma once

#include <stdexcept>
#include <string>

namespace qdt {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

// The class involves an odd power of L^(1/2) and has no value at L = p.
struct OddHalfPower : std::domain_error {
    OddHalfPower() : std::domain_error("class involves an odd power of L^(1/2)") {}
};

struct PoleAtPrime : std::domain_error {
    explicit PoleAtPrime(long p)
        : std::domain_error("denominator vanishes at L = " + std::to_string(p)) {}
};

struct PoleAtMinusOne : std::domain_error {
    PoleAtMinusOne() : std::domain_error("denominator vanishes at L^(1/2) = -1") {}
};

struct NonzeroConstantTerm : std::invalid_argument {
    NonzeroConstantTerm() : std::invalid_argument("series must have zero constant term") {}
};

struct ConstantTermNotOne : std::invalid_argument {
    ConstantTermNotOne() : std::invalid_argument("series must have constant term 1") {}
};

struct ShapeMismatch : std::invalid_argument {
    explicit ShapeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidCut : std::invalid_argument {
    explicit InvalidCut(const std::string& reason)
        : std::invalid_argument("invalid cut: " + reason) {}
};

struct SearchSpaceTooLarge : std::runtime_error {
    explicit SearchSpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct BranchMismatch : std::runtime_error {
    explicit BranchMismatch(const std::string& what) : std::runtime_error(what) {}
};

// DSL syntax / semantic error with source position (1-based).
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ": " + msg),
          line(line_), column(col_) {}
};

} // namespace qdt

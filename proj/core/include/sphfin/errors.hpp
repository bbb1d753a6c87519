#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sphfin {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZeroJet : public Error {
public:
    explicit DivisionByZeroJet(double denominator);
    double denominator() const noexcept { return denominator_; }

private:
    double denominator_;
};

/// An elementary function was applied outside its real domain.
class DomainError : public Error {
public:
    DomainError(std::string function, double argument, std::string path = {});
    const std::string& function() const noexcept { return function_; }
    double argument() const noexcept { return argument_; }
    /// AST path of the failing node ("" when raised outside the evaluator).
    const std::string& path() const noexcept { return path_; }
    DomainError with_path(const std::string& path) const;

private:
    std::string function_;
    double argument_;
    std::string path_;
};

class StencilOutOfDomain : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, std::string found);
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class UnknownBuiltin : public Error {
public:
    using Error::Error;
};

class MissingParameter : public Error {
public:
    using Error::Error;
};

class BadFrame : public Error {
public:
    using Error::Error;
};

class SprayUndefined : public Error {
public:
    SprayUndefined(double denominator, double r, double s);
    double denominator() const noexcept { return denominator_; }

private:
    double denominator_;
};

class DegenerateMetric : public Error {
public:
    DegenerateMetric(std::string factor, double value);
    const std::string& factor() const noexcept { return factor_; }

private:
    std::string factor_;
};

class ConstraintViolated : public Error {
public:
    ConstraintViolated(std::string constraint, double r);
    const std::string& constraint() const noexcept { return constraint_; }
    double r() const noexcept { return r_; }

private:
    std::string constraint_;
    double r_;
};

class NonRealC2 : public Error {
public:
    explicit NonRealC2(double r);
};

class ExcludedParameter : public Error {
public:
    using Error::Error;
};

class DenominatorVanished : public Error {
public:
    DenominatorVanished(double r, double s, double value);
    double r() const noexcept { return r_; }
    double s() const noexcept { return s_; }

private:
    double r_, s_;
};

class IntegrationFailure : public Error {
public:
    using Error::Error;
};

class DomainExit : public Error {
public:
    using Error::Error;
};

/// Evaluation failure during a grid sweep, tagged with the offending point.
class GridPointError : public Error {
public:
    GridPointError(double r, double s, const std::string& what);
    double r() const noexcept { return r_; }
    double s() const noexcept { return s_; }

private:
    double r_, s_;
};

}  // namespace sphfin

#include "sphfin/errors.hpp"

#include <cstdio>
#include <utility>

namespace sphfin {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

}  // namespace

DivisionByZeroJet::DivisionByZeroJet(double denominator)
    : Error("jet division by near-zero value " + num(denominator)), denominator_(denominator) {}

DomainError::DomainError(std::string function, double argument, std::string path)
    : Error(function + " outside its domain at argument " + num(argument) +
            (path.empty() ? std::string() : " (node " + path + ")")),
      function_(std::move(function)),
      argument_(argument),
      path_(std::move(path)) {}

DomainError DomainError::with_path(const std::string& path) const {
    return DomainError(function_, argument_, path);
}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : Error("parse error at offset " + std::to_string(offset) + ": expected " + join(expected) +
            ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

SprayUndefined::SprayUndefined(double denominator, double r, double s)
    : Error("spray undefined at (r,s)=(" + num(r) + "," + num(s) +
            "): phi - s*phi_s + (r^2-s^2)*phi_ss = " + num(denominator)),
      denominator_(denominator) {}

DegenerateMetric::DegenerateMetric(std::string factor, double value)
    : Error("degenerate metric: " + factor + " = " + num(value)), factor_(std::move(factor)) {}

ConstraintViolated::ConstraintViolated(std::string constraint, double r)
    : Error("constraint " + constraint + " violated at r=" + num(r)),
      constraint_(std::move(constraint)),
      r_(r) {}

NonRealC2::NonRealC2(double r)
    : Error("(c1*r^2+1)*(2*c3*r^2-1) < 0 at r=" + num(r) + ": c2 is not real") {}

DenominatorVanished::DenominatorVanished(double r, double s, double value)
    : Error("log-derivative denominator vanished at (r,s)=(" + num(r) + "," + num(s) +
            "): " + num(value)),
      r_(r),
      s_(s) {}

GridPointError::GridPointError(double r, double s, const std::string& what)
    : Error("at grid point (r,s)=(" + num(r) + "," + num(s) + "): " + what), r_(r), s_(s) {}

}  // namespace sphfin

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isotone {

// Base class for all domain-level failures (invalid input, violated
// precondition, failed validation). The CLI maps these to exit code 1;
// IoError and ParseError map to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::string join_path(const std::vector<int>& elems) {
    std::string s;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) s += " -> ";
        s += std::to_string(elems[i]);
    }
    return s;
}

} // namespace detail

// The cover relation of a would-be poset contains a directed cycle, so the
// reflexive-transitive closure would not be antisymmetric.
class CycleError : public Error {
public:
    std::vector<int> cycle; // closed walk, first element repeated at the end

    explicit CycleError(std::vector<int> c)
        : Error("covers induce a cycle: " + detail::join_path(c)), cycle(std::move(c)) {}
};

class IndexError : public Error {
public:
    using Error::Error;
};

class EmptyFamily : public Error {
public:
    EmptyFamily() : Error("family has no members") {}
};

class NotIsotone : public Error {
public:
    int member_index; // -1 when the offending function is not a family member
    int a, b;         // witness pair with a <= b in the order but f(a) > f(b)

    NotIsotone(int member_index, int a, int b)
        : Error("function" +
                (member_index >= 0 ? " (family member " + std::to_string(member_index) + ")"
                                   : std::string()) +
                " is not isotone: elements " + std::to_string(a) + " <= " + std::to_string(b) +
                " but values decrease"),
          member_index(member_index), a(a), b(b) {}
};

class CarrierMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateRamp : public Error {
public:
    DegenerateRamp(const std::string& a, const std::string& b)
        : Error("ramp requires a < b, got a=" + a + ", b=" + b) {}
};

// Structural defect in a piecewise-linear description (x not strictly
// increasing, wrong shape, ...).
class MalformedFunction : public Error {
public:
    using Error::Error;
};

// A candidate operating function fails the non-decreasing requirement.
class NotNondecreasing : public Error {
public:
    using Error::Error;
};

class BadGeneratorIndex : public Error {
public:
    int index;

    explicit BadGeneratorIndex(int index, int family_size)
        : Error("generator index " + std::to_string(index) + " out of range for family of size " +
                std::to_string(family_size)),
          index(index) {}
};

class NegativeScale : public Error {
public:
    explicit NegativeScale(const std::string& scale)
        : Error("scale factor must be >= 0, got " + scale) {}
};

class EmptyList : public Error {
public:
    EmptyList() : Error("expected a non-empty list of expressions") {}
};

// No family member strictly separates the requested pair; the family does
// not generate the order.
class NoSeparator : public Error {
public:
    int x, y;

    NoSeparator(int x, int y)
        : Error("no family member f with f(" + std::to_string(x) + ") < f(" + std::to_string(y) +
                "); family does not generate the order"),
          x(x), y(y) {}
};

class PreconditionViolated : public Error {
public:
    int x, y;

    PreconditionViolated(int x, int y, const std::string& what)
        : Error(what), x(x), y(y) {}
};

class UncoverableSet : public Error {
public:
    int element;

    explicit UncoverableSet(int element)
        : Error("element " + std::to_string(element) + " is not covered by any region"),
          element(element) {}
};

class NotNormalized : public Error {
public:
    using Error::Error;
};

class DoesNotGenerate : public Error {
public:
    int a, b; // witness pair: a not<= b yet no member separates it

    DoesNotGenerate(int a, int b, const std::string& reason)
        : Error("family does not generate the order: " + reason), a(a), b(b) {}
};

} // namespace isotone

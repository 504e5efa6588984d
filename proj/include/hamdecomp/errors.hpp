#pragma once

#include <stdexcept>
#include <string>

namespace hamdecomp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed part-size text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A caller-side precondition did not hold.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class OddDegreeVertex : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

class NotEvenRegular : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

class DegreeNotDivisible : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

/// The vertex set handed to the recolouring is not a symmetric orbit.
class OrbitViolation : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

class LoopOnOrbit : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

class OrderTooLarge : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

/// An asserted postcondition failed. Every one of these is a bug: the
/// constructions are guaranteed to succeed on valid input.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class StarNotFound : public InternalInconsistency {
public:
    using InternalInconsistency::InternalInconsistency;
};

namespace detail {

inline void ensure(bool condition, const std::string& what)
{
    if (!condition)
        throw InternalInconsistency(what);
}

} // namespace detail
} // namespace hamdecomp

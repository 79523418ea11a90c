#pragma once

#include <stdexcept>
#include <string>

namespace dlbmt {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Scenario / topology file is syntactically malformed.
class ParseError : public Error {
public:
  using Error::Error;
};

// File parsed but violates a structural invariant (disconnected graph,
// dangling site reference, non-positive capacity, broken assignment, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

class NodeNotFound : public Error {
public:
  using Error::Error;
};

class NoActiveController : public Error {
public:
  using Error::Error;
};

class InvalidWeights : public Error {
public:
  using Error::Error;
};

class UnknownSwitch : public Error {
public:
  using Error::Error;
};

class SwitchNotInDomain : public Error {
public:
  using Error::Error;
};

class InactiveTarget : public Error {
public:
  using Error::Error;
};

class ZeroConsumption : public Error {
public:
  using Error::Error;
};

class LastActiveController : public Error {
public:
  using Error::Error;
};

// Plan no longer matches fleet state at apply time. Plans are applied in the
// same tick they are made, so seeing this means the driving loop is broken.
class StalePlanError : public Error {
public:
  using Error::Error;
};

class OutOfRange : public Error {
public:
  using Error::Error;
};

// Wraps any module error escaping the simulation loop, with tick context.
class RunError : public Error {
public:
  using Error::Error;
};

} // namespace dlbmt

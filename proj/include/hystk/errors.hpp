// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hystk {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
  public:
    using Error::Error;
};

class PreconditionViolation : public Error
{
  public:
    using Error::Error;
};

class UnsupportedDimension : public Error
{
  public:
    using Error::Error;
};

// Relay evolution failures.
class IncompatibleInitialState : public Error
{
  public:
    using Error::Error;
};

class ExitPointUnclassified : public Error
{
  public:
    using Error::Error;
};

class SignalLeftOmega : public Error
{
  public:
    using Error::Error;
};

// A computed quantity broke one of its numerical invariants (stochasticity,
// cross-method agreement, grid clamping budget, ...).
class NumericalInvariantError : public Error
{
  public:
    using Error::Error;
};

class ConvergenceError : public Error
{
  public:
    ConvergenceError(std::string const& what, double last_term_norm)
        : Error(what), last_term_norm_(last_term_norm)
    {
    }
    double last_term_norm() const noexcept { return last_term_norm_; }

  private:
    double last_term_norm_;
};

class GrazingCrossing : public Error
{
  public:
    using Error::Error;
};

// Wraps a member failure inside a family-level operation.
class MemberError : public Error
{
  public:
    MemberError(std::string label, std::string const& what)
        : Error("member '" + label + "': " + what), label_(std::move(label))
    {
    }
    std::string const& label() const noexcept { return label_; }

  private:
    std::string label_;
};

}  // namespace hystk

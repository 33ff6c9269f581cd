// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bdlab
{
//! Base class for all library errors.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A series or iteration could not be certified within its budget.
class ConvergenceError : public Error
{
  public:
    using Error::Error;
};

//! Requested state lies outside the domain where an equilibrium exists.
class SupersaturatedError : public Error
{
  public:
    using Error::Error;
};

//! Adaptive time stepping collapsed below the minimum step.
class IntegrationError : public Error
{
  public:
    IntegrationError(std::string const& what, double time)
        : Error(what), time_(time)
    {
    }

    double time() const noexcept { return time_; }

  private:
    double time_;
};

//! A masked covector entry was consumed against a nonzero weight.
class MaskedCovectorError : public Error
{
  public:
    using Error::Error;
};

}  // namespace bdlab

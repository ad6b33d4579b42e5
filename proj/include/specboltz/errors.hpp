// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace specboltz {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inner products, moments and error metrics all go through the quadrature
// engine; everything it can throw is a QuadratureFailure.
struct QuadratureFailure : SolverError {
  using SolverError::SolverError;
};

struct NonConvergence : QuadratureFailure {
  using QuadratureFailure::QuadratureFailure;
};

struct NonFiniteIntegrand : QuadratureFailure {
  using QuadratureFailure::QuadratureFailure;
};

struct LossOfOrthogonality : SolverError {
  using SolverError::SolverError;
};

struct EigenFailure : SolverError {
  using SolverError::SolverError;
};

// Denominator of the constrained (T, Upsilon) projection fell below threshold.
struct SingularK : SolverError {
  using SolverError::SolverError;
};

struct StepUnderflow : SolverError {
  using SolverError::SolverError;
};

struct RhsFailure : SolverError {
  using SolverError::SolverError;
};

struct ConfigError : SolverError {
  using SolverError::SolverError;
};

}  // namespace specboltz

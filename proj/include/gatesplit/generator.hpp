/** \file
 * Conversion between unitary gates and self-adjoint generators with
 * U = exp(i H) on the principal branch (every eigenphase in (-pi, pi]).
 */

#pragma once

#include "gatesplit/linalg.hpp"

namespace gatesplit {

/// A unitary on a composite space. Construction checks
/// ||U^dag U - I||_o <= kUnitaryTol unless `unvalidated` is used.
class UnitaryGate {
  public:
    UnitaryGate(CMat matrix, TensorSpace space);

    /// Skips the unitarity check (still requires a finite square matrix of
    /// the right size). Used by the CLI's --no-validate path.
    static UnitaryGate unvalidated(CMat matrix, TensorSpace space);

    const CMat& matrix() const { return matrix_; }
    const TensorSpace& space() const { return space_; }

  private:
    UnitaryGate(CMat matrix, TensorSpace space, bool validate);

    CMat matrix_;
    TensorSpace space_;
};

/// A self-adjoint generator H with exp(i H) unitary; `principal` marks
/// generators produced by generator_of, whose eigenvalues lie in (-pi, pi].
class HermitianGenerator {
  public:
    HermitianGenerator(CMat matrix, TensorSpace space, bool principal = false);

    const CMat& matrix() const { return matrix_; }
    const TensorSpace& space() const { return space_; }
    bool principal() const { return principal_; }

  private:
    CMat matrix_;
    TensorSpace space_;
    bool principal_;
};

struct UnitaryEigensystem {
    Eigen::VectorXd phases;  // in (-pi, pi], one per column of `vectors`
    CMat vectors;            // orthonormal eigenbasis
};

/// Eigenphases and an orthonormal eigenbasis of a (numerically) unitary
/// matrix, computed from the complex Schur form so the basis stays
/// orthonormal through degeneracies.
UnitaryEigensystem unitary_eig(const CMat& u);

/// Principal generator: H with u = exp(i H) and all eigenvalues in (-pi, pi].
HermitianGenerator generator_of(const UnitaryGate& u);

/// exp(i t H) on h's space.
UnitaryGate exp_of(const HermitianGenerator& h, double t = 1.0);

}  // namespace gatesplit

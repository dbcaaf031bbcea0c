/** \file
 * Exact separability of multipartite gates.
 *
 * Two families of methods live here. The generator-based criteria
 * (separate_rank_one, separate_sum, qubit_structure_check) factor a gate
 * given a tensor-structured generator; they are cheap but sufficient-only
 * when working backward from a gate, because the principal logarithm of a
 * separable gate need not have local structure (phase wrapping). The
 * Schmidt-rank oracle (schmidt_rank, separate_unitary) decides separability
 * of an arbitrary gate outright and extracts the local factors.
 */

#pragma once

#include "gatesplit/generator.hpp"

#include <optional>
#include <vector>

namespace gatesplit {

/// One product term A^(1) x A^(2) x ... x A^(n) of self-adjoint factors,
/// factor k of size space.dim(k).
class TensorTerm {
  public:
    TensorTerm(std::vector<CMat> factors, TensorSpace space);

    const std::vector<CMat>& factors() const { return factors_; }
    const TensorSpace& space() const { return space_; }
    /// The full product as a matrix on the composite space.
    CMat full() const;

  private:
    std::vector<CMat> factors_;
    TensorSpace space_;
};

/// A finite sum of tensor terms on a shared space; a generator in explicit
/// product form.
class TensorTermSum {
  public:
    explicit TensorTermSum(std::vector<TensorTerm> terms);

    const std::vector<TensorTerm>& terms() const { return terms_; }
    const TensorSpace& space() const { return terms_.front().space(); }
    CMat full() const;

  private:
    std::vector<TensorTerm> terms_;
};

enum class Verdict { Separable, NotSeparable, Inconclusive };
enum class Method { RankOneTheorem, CommutingSum, StructureCheck, SchmidtOracle };

const char* to_string(Verdict v);
const char* to_string(Method m);

struct SeparationResult {
    Verdict verdict;
    Method method;
    /// Local factors, one per subsystem; present iff Separable.
    std::vector<UnitaryGate> factors;
    /// Unit-modulus global phase with U ~ lambda * (x) factors.
    std::optional<Complex> global_phase;
    /// Phase-corrected operator-norm reconstruction error (Separable only).
    double residual = 0.0;
    /// Names the failed hypothesis or violated cut; empty on success.
    std::string detail;
    std::optional<Cut> violating_cut;
    /// Schmidt coefficients of the violating cut (SchmidtOracle only).
    std::vector<double> schmidt_coefficients;
};

/// lambda with a = lambda*I within tol (relative), if any.
std::optional<double> is_scalar(const CMat& a, double tol = kScalarTol);

/// The per-factor delta coefficients of a tensor term: 0 for scalar factors,
/// the product of the other factors' scalars for the (at most one) non-scalar
/// factor. Absent when two or more factors are non-scalar.
std::optional<std::vector<double>> delta_coeffs(const TensorTerm& term, double tol = kScalarTol);

/// Separates U = exp(i t A_1 x ... x A_n) when at most one factor is
/// non-scalar: U_j = exp(i t delta_j A_j) up to a global phase. Verdict is
/// NotSeparable when the hypothesis fails.
SeparationResult separate_rank_one(const TensorTerm& term, double t, double tol = kScalarTol);

/// Separates U = exp(i t sum_k T_k) when the terms commute pairwise and each
/// term has at most one non-scalar factor: the local gate at site i is the
/// product over terms of exp(i t delta_k^(i) A_k^(i)). Sufficient-only:
/// verdict is Inconclusive when either condition fails. A single-term sum
/// delegates to separate_rank_one.
SeparationResult separate_sum(const TensorTermSum& tsum, double t, double tol = kScalarTol);

/// For an n-qubit generator, the unique site j such that H acts as the
/// identity on every site except (at most) j, detected by recursive 2x2
/// block tests; absent when two or more sites are non-identity-like. When
/// present, exp(i t H) is separable for every t. All-scalar H reports site 1.
std::optional<int> qubit_structure_check(const HermitianGenerator& h, double tol = 1e-9);

struct SchmidtSpectrum {
    int rank;                          // singular values above tol * sigma_max
    std::vector<double> coefficients;  // all of them, descending
};

/// Operator Schmidt spectrum of u across a cut; rank 1 characterizes product
/// operators across that cut.
SchmidtSpectrum schmidt_rank(const UnitaryGate& u, const Cut& cut, double tol = kSchmidtTol);

/// Decides separability across all subsystems by peeling one subsystem at a
/// time with the Schmidt oracle, and extracts phase-fixed local factors plus
/// the global phase on success. Never returns Inconclusive.
SeparationResult separate_unitary(const UnitaryGate& u, double tol = kSchmidtTol);

}  // namespace gatesplit

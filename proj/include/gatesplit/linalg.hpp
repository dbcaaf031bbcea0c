/** \file
 * Dense complex matrix kernel: Kronecker algebra, partial traces, spectral
 * routines, Schatten norms, and the rearrangement operator behind the
 * operator-Schmidt decomposition.
 *
 * Subsystem indices are 1-based everywhere in the public API; subsystem 1 is
 * the leftmost (most significant) Kronecker factor. Matrices are plain
 * Eigen::MatrixXcd values; all operations are pure functions.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gatesplit {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Base class for all user-facing failures; the CLI maps these to the
/// input-error exit code.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// Requested dimensions exceed the configured total-dimension cap.
class SizeLimitError : public Error {
  public:
    using Error::Error;
};

/// Input fails a numerical contract (not unitary, not self-adjoint, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Operation requires a space shape the input does not have (e.g. all-qubit).
class UnsupportedSpaceError : public Error {
  public:
    using Error::Error;
};

/// Polar projection is ill-defined: the factor has a (near-)zero singular value.
class DegenerateFactorError : public Error {
  public:
    using Error::Error;
};

/// Hermiticity acceptance: ||M - M^dag||_F <= kHermTol * max(1, ||M||_F).
/// Accepted inputs are symmetrized as (M + M^dag)/2 before use.
inline constexpr double kHermTol = 1e-8;

/// Unitarity acceptance on gate construction: ||U^dag U - I||_o <= kUnitaryTol.
inline constexpr double kUnitaryTol = 1e-8;

/// Default relative tolerance for scalar-multiple-of-identity detection.
inline constexpr double kScalarTol = 1e-9;

/// Default relative tolerance for Schmidt-rank truncation.
inline constexpr double kSchmidtTol = 1e-9;

/// Total-dimension cap (default 4096, i.e. 12 qubits); the environment
/// variable GATESPLIT_MAX_DIM overrides it.
int max_total_dim();

/// The list of subsystem dimensions (m_1, ..., m_n) defining the composite
/// space. Each dimension is >= 2 and the product is capped by max_total_dim().
class TensorSpace {
  public:
    explicit TensorSpace(std::vector<int> dims);

    int subsystem_count() const { return static_cast<int>(dims_.size()); }
    /// Dimension of subsystem k (1-based).
    int dim(int k) const;
    int total() const { return total_; }
    const std::vector<int>& dims() const { return dims_; }
    bool all_qubits() const;
    /// The space spanned by subsystems first..last (1-based, inclusive).
    TensorSpace slice(int first, int last) const;

    bool operator==(const TensorSpace& other) const { return dims_ == other.dims_; }

  private:
    std::vector<int> dims_;
    int total_ = 0;
};

/// Bipartition of the subsystems {1..n} into two non-empty sorted halves.
class Cut {
  public:
    Cut(const TensorSpace& space, std::vector<int> left_subsystems);

    const std::vector<int>& left() const { return left_; }
    const std::vector<int>& right() const { return right_; }
    int left_dim() const { return left_dim_; }
    int right_dim() const { return right_dim_; }
    std::string to_string() const;  // e.g. "{1}|{2,3}"

  private:
    std::vector<int> left_;
    std::vector<int> right_;
    int left_dim_ = 0;
    int right_dim_ = 0;
};

/// Kronecker product; entry ((ia,ib),(ja,jb)) = a(ia,ja) * b(ib,jb).
CMat kron(const CMat& a, const CMat& b);

/// Left-associated Kronecker product of a non-empty factor list.
CMat kron_all(const std::vector<CMat>& factors);

/// Embeds a square operator acting on subsystem `site` (1-based) into the
/// full space: I x ... x a x ... x I.
CMat embed_at(const CMat& a, const TensorSpace& space, int site);

/// Traces out every subsystem except `keep` (1-based). Preserves the trace.
CMat partial_trace(const CMat& m, const TensorSpace& space, int keep);

struct HermitianEig {
    Eigen::VectorXd values;  // ascending
    CMat vectors;            // orthonormal columns
};

/// Spectral decomposition of a self-adjoint matrix. Inputs within kHermTol of
/// self-adjoint are symmetrized; anything worse is rejected.
HermitianEig hermitian_eig(const CMat& m);

/// exp(i h) for self-adjoint h, via the spectral decomposition.
CMat matrix_exp_i(const CMat& h);

enum class NormKind { Operator, Frobenius, Trace };

Eigen::VectorXd singular_values(const CMat& m);  // descending

double operator_norm(const CMat& m);   // largest singular value
double frobenius_norm(const CMat& m);  // Schatten-2
double trace_norm(const CMat& m);      // Schatten-1
double schatten_norm(const CMat& m, double p);  // p >= 1
double matrix_norm(const CMat& m, NormKind kind);

/// Rearrangement (Van Loan-Pitsianis) of a square operator across a cut:
/// maps A x B to vec(A) vec(B)^T in row-major vectorization, so the singular
/// values of the result are the operator Schmidt coefficients of u. The
/// result has (left_dim)^2 rows and (right_dim)^2 columns and the same
/// Frobenius norm as u.
CMat reshuffle(const CMat& u, const TensorSpace& space, const Cut& cut);

/// ab - ba.
CMat commutator(const CMat& a, const CMat& b);

/// Unitary factor of the polar decomposition — the nearest unitary in
/// Frobenius norm. Throws DegenerateFactorError when m is (numerically)
/// singular.
CMat polar_unitary(const CMat& m);

/// Rotates m by a global phase so that its largest-magnitude entry (ties
/// broken by lowest row-major index) is real positive.
CMat phase_fix(const CMat& m);

bool is_hermitian(const CMat& m, double tol = kHermTol);

}  // namespace gatesplit

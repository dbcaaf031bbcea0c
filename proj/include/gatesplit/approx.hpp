/** \file
 * Approximate separation: orthogonal projection of a generator onto the
 * local-Hamiltonian subspace, the |t|*gap distance bound, the per-eigenvector
 * residual certificate, and best-effort local factors with measured distance.
 */

#pragma once

#include "gatesplit/generator.hpp"

#include <optional>
#include <vector>

namespace gatesplit {

/// Local generators H_k (one per subsystem, traceless) plus a scalar offset
/// c, representing c*I + sum_k I x ... x H_k x ... x I. Tracelessness makes
/// the representation unique.
class LocalHamiltonianFamily {
  public:
    LocalHamiltonianFamily(std::vector<CMat> locals, double offset, TensorSpace space);

    const std::vector<CMat>& locals() const { return locals_; }
    double offset() const { return offset_; }
    const TensorSpace& space() const { return space_; }

    /// c*I + sum_k Hhat_k on the full space.
    CMat embedded_sum() const;

  private:
    std::vector<CMat> locals_;
    double offset_;
    TensorSpace space_;
};

struct ApproxCertificate {
    double epsilon;
    double t;
    double threshold;               // epsilon / (|t| * prod_k m_k)
    std::vector<double> residuals;  // one per eigenvector of u
    bool pass;                      // all residuals < threshold
    Eigen::VectorXd eigenvalues;    // lambda_j = eigenphase_j / t
    CMat basis;                     // the eigenbasis the residuals refer to
};

struct ApproxSeparationResult {
    HermitianGenerator generator;      // h with u = exp(i t h); branch may be unwrapped
    LocalHamiltonianFamily family;
    std::vector<UnitaryGate> factors;  // U_k = exp(i t H_k)
    Complex global_phase;              // e^{i t c}
    double generator_gap_op;           // ||H - cI - sum Hhat_k||_o
    double generator_gap_fro;
    double bound;                // |t| * generator_gap_op
    double measured_phase_free;  // ||u - e^{itc} (x) U_k||_o
    double measured;             // phase-optimized, <= measured_phase_free
    std::optional<ApproxCertificate> certificate;
};

/// Frobenius-orthogonal projection of H onto span{I} (+) the traceless
/// single-site operators: c = tr(H)/total and H_k the compressed partial
/// trace at site k minus its trace share. The residual is orthogonal to the
/// whole local subspace, which makes this the Frobenius-optimal family.
LocalHamiltonianFamily project_local(const HermitianGenerator& h);

/// Distance bound M * ||H - cI - sum Hhat_k||_kind for U = exp(itH) against
/// the family's product gate, with M = |t| for the operator norm and
/// M = |t| * ||exp(-it sum Hhat_k)|| * ||exp(-itH)|| otherwise.
double separation_bound(const HermitianGenerator& h, const LocalHamiltonianFamily& family, double t,
                        NormKind kind = NormKind::Operator);

/// Per-eigenvector residual certificate: with u|x_j> = e^{it lambda_j}|x_j>,
/// checks ||(lambda_j I - cI - sum Hhat_i)|x_j>|| < epsilon/(|t| prod m_k)
/// for every j. Passing certifies ||u - e^{itc} (x) U_k||_o < epsilon.
ApproxCertificate eigenvector_certificate(const UnitaryGate& u, const LocalHamiltonianFamily& family,
                                          double t, double epsilon);

/// Full pipeline: principal generator scaled by t, local projection, factors,
/// gap/bound/measured distances, and (when epsilon is given) the certificate.
/// Retries once with near-pi eigenphases unwrapped by -2pi and keeps the
/// better family. Guarantees measured <= bound + 1e-9.
ApproxSeparationResult approx_separate(const UnitaryGate& u, double t = 1.0,
                                       std::optional<double> epsilon = std::nullopt);

struct NearestKronResult {
    UnitaryGate a;
    UnitaryGate b;
    /// Eckart-Young optimum sqrt(sum_{r>=2} sigma_r^2) before the unitary
    /// projection of the factors.
    double distance_rank_one_fro;
    double distance_fro;  // ||u - lambda a x b||_F, phase-optimized
    double distance_op;
    Complex phase;
};

/// Nearest-Kronecker approximation across a bipartite cut: leading singular
/// pair of the rearrangement, each factor polar-projected to the unitary
/// group. Throws DegenerateFactorError when no leading pair with invertible
/// factors exists.
NearestKronResult nearest_kron_unitary(const UnitaryGate& u, const Cut& cut);

}  // namespace gatesplit

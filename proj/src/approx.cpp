#include "gatesplit/approx.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gatesplit {

namespace {

CMat unvec_rowmajor(const Eigen::Ref<const CVec>& v, int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = v(i * cols + j);
        }
    }
    return m;
}

CVec vec_rowmajor(const CMat& m) {
    CVec v(m.rows() * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            v(i * m.cols() + j) = m(i, j);
        }
    }
    return v;
}

bool factor_invertible(const CMat& m) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<CMat>(m).singularValues();
    return sv(0) > 0 && sv(sv.size() - 1) > 1e-9 * sv(0);
}

ApproxSeparationResult build_family_result(const UnitaryGate& u, const Eigen::VectorXd& phases,
                                           const CMat& vectors, double t) {
    const TensorSpace& space = u.space();
    CMat h = vectors * (phases / t).cast<Complex>().asDiagonal() * vectors.adjoint();
    h = 0.5 * (h + h.adjoint().eval());
    const HermitianGenerator gen(std::move(h), space);
    LocalHamiltonianFamily family = project_local(gen);

    std::vector<UnitaryGate> factors;
    std::vector<CMat> mats;
    for (int k = 1; k <= space.subsystem_count(); ++k) {
        CMat f = matrix_exp_i(t * family.locals()[static_cast<size_t>(k - 1)]);
        mats.push_back(f);
        factors.emplace_back(std::move(f), TensorSpace({space.dim(k)}));
    }
    const CMat w = kron_all(mats);
    const Complex phase0 = std::exp(Complex(0, t * family.offset()));

    const double measured_free = operator_norm(u.matrix() - phase0 * w);
    double measured = measured_free;
    const Complex phi = (u.matrix() * w.adjoint()).trace() / static_cast<double>(space.total());
    if (std::abs(phi) > 0) {
        measured = std::min(measured, operator_norm(u.matrix() - (phi / std::abs(phi)) * w));
    }

    const CMat residual_mat = gen.matrix() - family.embedded_sum();
    ApproxSeparationResult result{
        gen,
        std::move(family),
        std::move(factors),
        phase0,
        operator_norm(residual_mat),
        residual_mat.norm(),
        0.0,
        measured_free,
        measured,
        std::nullopt,
    };
    result.bound = std::abs(t) * result.generator_gap_op;
    return result;
}

}  // namespace

LocalHamiltonianFamily::LocalHamiltonianFamily(std::vector<CMat> locals, double offset, TensorSpace space)
    : locals_(std::move(locals)), offset_(offset), space_(std::move(space)) {
    if (static_cast<int>(locals_.size()) != space_.subsystem_count()) {
        throw ArgumentError("LocalHamiltonianFamily: one local generator per subsystem required");
    }
    for (size_t k = 0; k < locals_.size(); ++k) {
        CMat& l = locals_[k];
        const int m = space_.dim(static_cast<int>(k) + 1);
        if (l.rows() != m || l.cols() != m) {
            throw ArgumentError("LocalHamiltonianFamily: local size does not match its subsystem");
        }
        if (!l.allFinite() || !is_hermitian(l)) {
            throw ValidationError("LocalHamiltonianFamily: locals must be self-adjoint");
        }
        if (std::abs(l.trace()) > 1e-10 * std::max(1.0, l.norm())) {
            throw ValidationError("LocalHamiltonianFamily: locals must be traceless");
        }
        l = 0.5 * (l + l.adjoint().eval());
    }
}

CMat LocalHamiltonianFamily::embedded_sum() const {
    CMat sum = offset_ * CMat::Identity(space_.total(), space_.total());
    for (int k = 1; k <= space_.subsystem_count(); ++k) {
        sum += embed_at(locals_[static_cast<size_t>(k - 1)], space_, k);
    }
    return sum;
}

LocalHamiltonianFamily project_local(const HermitianGenerator& h) {
    const TensorSpace& space = h.space();
    const int total = space.total();
    const double c = h.matrix().trace().real() / total;
    std::vector<CMat> locals;
    locals.reserve(static_cast<size_t>(space.subsystem_count()));
    for (int k = 1; k <= space.subsystem_count(); ++k) {
        const int mk = space.dim(k);
        CMat local = partial_trace(h.matrix(), space, k) * (static_cast<double>(mk) / total);
        local -= c * CMat::Identity(mk, mk);
        local = 0.5 * (local + local.adjoint().eval());
        // exact trace removal so the family invariant holds bit-for-bit
        local -= (local.trace() / static_cast<double>(mk)) * CMat::Identity(mk, mk);
        locals.push_back(std::move(local));
    }
    return LocalHamiltonianFamily(std::move(locals), c, space);
}

double separation_bound(const HermitianGenerator& h, const LocalHamiltonianFamily& family, double t,
                        NormKind kind) {
    if (!(h.space() == family.space())) {
        throw ArgumentError("separation_bound: generator and family live on different spaces");
    }
    const CMat gap_mat = h.matrix() - family.embedded_sum();
    const double gap = matrix_norm(gap_mat, kind);
    double m = std::abs(t);
    if (kind != NormKind::Operator) {
        m *= matrix_norm(matrix_exp_i(-t * family.embedded_sum()), kind) *
             matrix_norm(matrix_exp_i(-t * h.matrix()), kind);
    }
    return m * gap;
}

ApproxCertificate eigenvector_certificate(const UnitaryGate& u, const LocalHamiltonianFamily& family,
                                          double t, double epsilon) {
    if (t == 0.0) {
        throw ArgumentError("eigenvector_certificate: t must be nonzero");
    }
    if (!(epsilon > 0.0)) {
        throw ArgumentError("eigenvector_certificate: epsilon must be positive");
    }
    if (!(u.space() == family.space())) {
        throw ArgumentError("eigenvector_certificate: gate and family live on different spaces");
    }
    const int total = u.space().total();
    const UnitaryEigensystem eig = unitary_eig(u.matrix());
    const CMat local_sum = family.embedded_sum();  // includes the offset

    ApproxCertificate cert;
    cert.epsilon = epsilon;
    cert.t = t;
    cert.threshold = epsilon / (std::abs(t) * total);
    cert.eigenvalues = eig.phases / t;
    cert.basis = eig.vectors;
    cert.residuals.resize(static_cast<size_t>(total));
    bool pass = true;
    for (int j = 0; j < total; ++j) {
        const CVec x = eig.vectors.col(j);
        const double r = (cert.eigenvalues(j) * x - local_sum * x).norm();
        cert.residuals[static_cast<size_t>(j)] = r;
        pass = pass && r < cert.threshold;
    }
    cert.pass = pass;
    return cert;
}

ApproxSeparationResult approx_separate(const UnitaryGate& u, double t, std::optional<double> epsilon) {
    if (t == 0.0) {
        throw ArgumentError("approx_separate: t must be nonzero");
    }
    const UnitaryEigensystem eig = unitary_eig(u.matrix());
    ApproxSeparationResult best = build_family_result(u, eig.phases, eig.vectors, t);

    // Principal-branch artifact: eigenphases just below +pi may belong on the
    // other side for a separable gate. One retry with those phases unwrapped.
    Eigen::VectorXd shifted = eig.phases;
    bool any = false;
    for (Eigen::Index j = 0; j < shifted.size(); ++j) {
        if (shifted(j) > std::numbers::pi - 0.1) {
            shifted(j) -= 2 * std::numbers::pi;
            any = true;
        }
    }
    if (any) {
        ApproxSeparationResult retry = build_family_result(u, shifted, eig.vectors, t);
        if (retry.measured < best.measured) {
            best = std::move(retry);
        }
    }

    if (epsilon) {
        best.certificate = eigenvector_certificate(u, best.family, t, *epsilon);
    }
    return best;
}

NearestKronResult nearest_kron_unitary(const UnitaryGate& u, const Cut& cut) {
    const CMat r = reshuffle(u.matrix(), u.space(), cut);
    Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    const int dl = cut.left_dim();
    const int dr = cut.right_dim();

    double tail = 0.0;
    for (Eigen::Index i = 1; i < sv.size(); ++i) tail += sv(i) * sv(i);
    const double distance_rank_one = std::sqrt(std::max(0.0, tail));

    // Candidate representatives of the leading singular subspace. The leading
    // pair can be degenerate (equal sigmas), in which case the SVD's choice of
    // basis may matricize to a singular factor even though other vectors in
    // the same subspace do not.
    int degenerate = 1;
    while (degenerate < sv.size() && sv(degenerate) >= sv(0) * (1.0 - 1e-9)) ++degenerate;
    std::vector<CVec> candidates;
    candidates.push_back(svd.matrixU().col(0));
    if (degenerate >= 2) {
        candidates.push_back((svd.matrixU().col(0) + Complex(0, 1) * svd.matrixU().col(1)) / std::sqrt(2.0));
        CVec id_proj = CVec::Zero(r.rows());
        const CVec vec_id = vec_rowmajor(CMat::Identity(dl, dl)) / std::sqrt(static_cast<double>(dl));
        for (int i = 0; i < degenerate; ++i) {
            const CVec ui = svd.matrixU().col(i);
            id_proj += ui * ui.dot(vec_id);
        }
        if (id_proj.norm() > 1e-6) {
            candidates.push_back(id_proj / id_proj.norm());
        }
    }

    for (const CVec& w : candidates) {
        const CMat fa = unvec_rowmajor(w, dl, dl);
        const CMat fb = unvec_rowmajor((r.adjoint() * w).conjugate() / sv(0), dr, dr);
        if (!factor_invertible(fa) || !factor_invertible(fb)) {
            continue;
        }
        const CMat a = polar_unitary(fa);
        const CMat b = polar_unitary(fb);
        const CMat w_full = kron(a, b);
        const Complex phi = (u.matrix() * w_full.adjoint()).trace() / static_cast<double>(u.space().total());
        const Complex lambda = std::abs(phi) > 0 ? phi / std::abs(phi) : Complex(1, 0);
        return NearestKronResult{
            UnitaryGate(a, TensorSpace({dl})),
            UnitaryGate(b, TensorSpace({dr})),
            distance_rank_one,
            (u.matrix() - lambda * w_full).norm(),
            operator_norm(u.matrix() - lambda * w_full),
            lambda,
        };
    }
    throw DegenerateFactorError(
        "nearest_kron_unitary: every leading singular pair matricizes to a singular factor");
}

}  // namespace gatesplit

#include "gatesplit/exact.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gatesplit {

namespace {

// Global phase matching u against a product reconstruction w. For a genuine
// product match the normalized trace overlap has modulus 1.
struct PhaseFit {
    Complex lambda;
    double overlap;
    double residual;
};

PhaseFit fit_global_phase(const CMat& u, const CMat& w) {
    const Complex phi = (u * w.adjoint()).trace() / static_cast<double>(u.rows());
    const double overlap = std::abs(phi);
    const Complex lambda = overlap > 0 ? phi / overlap : Complex(1, 0);
    const double residual = operator_norm(u - lambda * w);
    return PhaseFit{lambda, overlap, residual};
}

void require_product_overlap(const PhaseFit& fit) {
    if (fit.overlap < 0.9) {
        std::ostringstream os;
        os << "internal error: separable verdict with trace overlap " << fit.overlap << " < 0.9";
        throw std::logic_error(os.str());
    }
}

TensorSpace single_site_space(const TensorSpace& space, int site) {
    return TensorSpace(std::vector<int>{space.dim(site)});
}

CMat unvec_rowmajor(const Eigen::Ref<const CVec>& v, int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = v(i * cols + j);
        }
    }
    return m;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Separable: return "Separable";
        case Verdict::NotSeparable: return "NotSeparable";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(Method m) {
    switch (m) {
        case Method::RankOneTheorem: return "RankOneTheorem";
        case Method::CommutingSum: return "CommutingSum";
        case Method::StructureCheck: return "StructureCheck";
        case Method::SchmidtOracle: return "SchmidtOracle";
    }
    return "?";
}

TensorTerm::TensorTerm(std::vector<CMat> factors, TensorSpace space)
    : factors_(std::move(factors)), space_(std::move(space)) {
    if (static_cast<int>(factors_.size()) != space_.subsystem_count()) {
        throw ArgumentError("TensorTerm: one factor per subsystem required");
    }
    for (size_t j = 0; j < factors_.size(); ++j) {
        CMat& f = factors_[j];
        const int m = space_.dim(static_cast<int>(j) + 1);
        if (f.rows() != m || f.cols() != m) {
            throw ArgumentError("TensorTerm: factor size does not match its subsystem dimension");
        }
        if (!f.allFinite() || !is_hermitian(f)) {
            throw ValidationError("TensorTerm: factors must be self-adjoint");
        }
        f = 0.5 * (f + f.adjoint().eval());
    }
}

CMat TensorTerm::full() const {
    return kron_all(factors_);
}

TensorTermSum::TensorTermSum(std::vector<TensorTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw ArgumentError("TensorTermSum: at least one term required");
    }
    for (const TensorTerm& term : terms_) {
        if (!(term.space() == terms_.front().space())) {
            throw ArgumentError("TensorTermSum: all terms must share one space");
        }
    }
}

CMat TensorTermSum::full() const {
    CMat sum = terms_.front().full();
    for (size_t i = 1; i < terms_.size(); ++i) {
        sum += terms_[i].full();
    }
    return sum;
}

std::optional<double> is_scalar(const CMat& a, double tol) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw ArgumentError("is_scalar: expected a non-empty square matrix");
    }
    const double lambda = a.trace().real() / static_cast<double>(a.rows());
    const double dev = (a - lambda * CMat::Identity(a.rows(), a.cols())).norm();
    if (dev <= tol * std::max(1.0, a.norm())) {
        return lambda;
    }
    return std::nullopt;
}

std::optional<std::vector<double>> delta_coeffs(const TensorTerm& term, double tol) {
    const size_t n = term.factors().size();
    std::vector<double> scalars(n, 0.0);
    std::vector<char> scalar_flag(n, 0);
    int nonscalar = -1;
    for (size_t j = 0; j < n; ++j) {
        if (auto lambda = is_scalar(term.factors()[j], tol)) {
            scalars[j] = *lambda;
            scalar_flag[j] = 1;
        } else {
            if (nonscalar >= 0) {
                return std::nullopt;  // two non-scalar factors
            }
            nonscalar = static_cast<int>(j);
        }
    }
    std::vector<double> deltas(n, 0.0);
    if (nonscalar >= 0) {
        double prod = 1.0;
        for (size_t k = 0; k < n; ++k) {
            if (static_cast<int>(k) != nonscalar) prod *= scalars[k];
        }
        deltas[static_cast<size_t>(nonscalar)] = prod;
    }
    return deltas;
}

SeparationResult separate_rank_one(const TensorTerm& term, double t, double tol) {
    SeparationResult result;
    result.method = Method::RankOneTheorem;
    const auto deltas = delta_coeffs(term, tol);
    if (!deltas) {
        result.verdict = Verdict::NotSeparable;
        result.detail = "more than one factor is outside R*I";
        return result;
    }
    const TensorSpace& space = term.space();
    const CMat u = matrix_exp_i(t * term.full());
    std::vector<UnitaryGate> factors;
    factors.reserve(static_cast<size_t>(space.subsystem_count()));
    for (int j = 1; j <= space.subsystem_count(); ++j) {
        const CMat local = matrix_exp_i(t * (*deltas)[static_cast<size_t>(j - 1)] * term.factors()[static_cast<size_t>(j - 1)]);
        factors.emplace_back(local, single_site_space(space, j));
    }
    std::vector<CMat> mats;
    for (const UnitaryGate& f : factors) mats.push_back(f.matrix());
    const PhaseFit fit = fit_global_phase(u, kron_all(mats));
    require_product_overlap(fit);
    result.verdict = Verdict::Separable;
    result.factors = std::move(factors);
    result.global_phase = fit.lambda;
    result.residual = fit.residual;
    return result;
}

SeparationResult separate_sum(const TensorTermSum& tsum, double t, double tol) {
    if (tsum.terms().size() == 1) {
        return separate_rank_one(tsum.terms().front(), t, tol);
    }
    SeparationResult result;
    result.method = Method::CommutingSum;

    const auto& terms = tsum.terms();
    std::vector<CMat> fulls;
    fulls.reserve(terms.size());
    for (const TensorTerm& term : terms) fulls.push_back(term.full());
    for (size_t k = 0; k < terms.size(); ++k) {
        for (size_t l = k + 1; l < terms.size(); ++l) {
            const double dev = commutator(fulls[k], fulls[l]).norm();
            if (dev > 1e-9 * fulls[k].norm() * fulls[l].norm()) {
                result.verdict = Verdict::Inconclusive;
                std::ostringstream os;
                os << "terms " << (k + 1) << " and " << (l + 1) << " do not commute";
                result.detail = os.str();
                return result;
            }
        }
    }
    std::vector<std::vector<double>> deltas;
    deltas.reserve(terms.size());
    for (size_t k = 0; k < terms.size(); ++k) {
        auto d = delta_coeffs(terms[k], tol);
        if (!d) {
            result.verdict = Verdict::Inconclusive;
            std::ostringstream os;
            os << "term " << (k + 1) << " has more than one factor outside R*I";
            result.detail = os.str();
            return result;
        }
        deltas.push_back(std::move(*d));
    }

    const TensorSpace& space = tsum.space();
    const CMat u = matrix_exp_i(t * tsum.full());
    std::vector<UnitaryGate> factors;
    for (int i = 1; i <= space.subsystem_count(); ++i) {
        CMat local = CMat::Identity(space.dim(i), space.dim(i));
        for (size_t k = 0; k < terms.size(); ++k) {
            local *= matrix_exp_i(t * deltas[k][static_cast<size_t>(i - 1)] *
                                  terms[k].factors()[static_cast<size_t>(i - 1)]);
        }
        factors.emplace_back(local, single_site_space(space, i));
    }
    std::vector<CMat> mats;
    for (const UnitaryGate& f : factors) mats.push_back(f.matrix());
    const PhaseFit fit = fit_global_phase(u, kron_all(mats));
    require_product_overlap(fit);
    result.verdict = Verdict::Separable;
    result.factors = std::move(factors);
    result.global_phase = fit.lambda;
    result.residual = fit.residual;
    return result;
}

std::optional<int> qubit_structure_check(const HermitianGenerator& h, double tol) {
    const TensorSpace& space = h.space();
    if (!space.all_qubits()) {
        throw UnsupportedSpaceError("qubit_structure_check: all subsystems must be qubits");
    }
    const int n = space.subsystem_count();
    const int total = space.total();
    const int half = total / 2;
    const CMat& m = h.matrix();

    // Site k is identity-like iff, with that qubit viewed as the outermost
    // block index, the off-diagonal blocks vanish and the diagonal blocks
    // repeat.
    std::vector<int> non_identity;
    for (int k = 1; k <= n; ++k) {
        const int stride = total >> k;  // distance between bit values of qubit k
        CMat c00(half, half), c01(half, half), c10(half, half), c11(half, half);
        for (int r = 0; r < half; ++r) {
            // row index with qubit k removed -> global index with bit inserted
            const int rhi = (r / stride) * (2 * stride);
            const int rlo = r % stride;
            const int r0 = rhi + rlo;
            const int r1 = rhi + stride + rlo;
            for (int c = 0; c < half; ++c) {
                const int chi = (c / stride) * (2 * stride);
                const int clo = c % stride;
                const int c0 = chi + clo;
                const int c1 = chi + stride + clo;
                c00(r, c) = m(r0, c0);
                c01(r, c) = m(r0, c1);
                c10(r, c) = m(r1, c0);
                c11(r, c) = m(r1, c1);
            }
        }
        const bool identity_like = c01.norm() <= tol && c10.norm() <= tol && (c00 - c11).norm() <= tol;
        if (!identity_like) {
            non_identity.push_back(k);
            if (non_identity.size() > 1) {
                return std::nullopt;
            }
        }
    }
    if (non_identity.empty()) {
        return 1;  // global scalar: report the lowest index
    }
    return non_identity.front();
}

SchmidtSpectrum schmidt_rank(const UnitaryGate& u, const Cut& cut, double tol) {
    const Eigen::VectorXd sv = singular_values(reshuffle(u.matrix(), u.space(), cut));
    SchmidtSpectrum spectrum;
    spectrum.coefficients.assign(sv.data(), sv.data() + sv.size());
    const double cutoff = tol * sv(0);
    spectrum.rank = static_cast<int>(std::count_if(spectrum.coefficients.begin(), spectrum.coefficients.end(),
                                                   [cutoff](double s) { return s > cutoff; }));
    return spectrum;
}

SeparationResult separate_unitary(const UnitaryGate& u, double tol) {
    SeparationResult result;
    result.method = Method::SchmidtOracle;
    const TensorSpace& space = u.space();
    const int n = space.subsystem_count();

    std::vector<CMat> raw_factors;
    CMat remainder = u.matrix();
    for (int k = 1; k < n; ++k) {
        const TensorSpace tail = space.slice(k, n);
        const Cut cut(tail, {1});
        const CMat r = reshuffle(remainder, tail, cut);
        Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd sv = svd.singularValues();
        if (sv(1) > tol * sv(0)) {
            result.verdict = Verdict::NotSeparable;
            std::vector<int> left{k};
            result.violating_cut = Cut(space, left);
            result.schmidt_coefficients.assign(sv.data(), sv.data() + sv.size());
            result.detail = "operator Schmidt rank > 1 across " + result.violating_cut->to_string();
            return result;
        }
        const int dl = cut.left_dim();
        const int dr = cut.right_dim();
        raw_factors.push_back(unvec_rowmajor(svd.matrixU().col(0), dl, dl));
        remainder = unvec_rowmajor(svd.matrixV().col(0).conjugate(), dr, dr);
    }
    raw_factors.push_back(remainder);

    std::vector<UnitaryGate> factors;
    std::vector<CMat> mats;
    for (int j = 1; j <= n; ++j) {
        CMat f = phase_fix(polar_unitary(raw_factors[static_cast<size_t>(j - 1)]));
        mats.push_back(f);
        factors.emplace_back(std::move(f), single_site_space(space, j));
    }
    const PhaseFit fit = fit_global_phase(u.matrix(), kron_all(mats));
    require_product_overlap(fit);
    result.verdict = Verdict::Separable;
    result.factors = std::move(factors);
    result.global_phase = fit.lambda;
    result.residual = fit.residual;
    return result;
}

}  // namespace gatesplit

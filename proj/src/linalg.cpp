#include "gatesplit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace gatesplit {

namespace {

// Per-subsystem strides for a composite index, subsystem 1 most significant.
std::vector<int> strides_of(const std::vector<int>& dims) {
    std::vector<int> strides(dims.size());
    int s = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        strides[static_cast<size_t>(k)] = s;
        s *= dims[static_cast<size_t>(k)];
    }
    return strides;
}

void require_square(const CMat& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw ArgumentError(os.str());
    }
}

}  // namespace

int max_total_dim() {
    if (const char* env = std::getenv("GATESPLIT_MAX_DIM")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 1 && v <= 1 << 20) {
            return static_cast<int>(v);
        }
    }
    return 4096;
}

TensorSpace::TensorSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw ArgumentError("TensorSpace: at least one subsystem required");
    }
    long long total = 1;
    const long long cap = max_total_dim();
    for (int d : dims_) {
        if (d < 2) {
            throw ArgumentError("TensorSpace: every subsystem dimension must be >= 2");
        }
        total *= d;
        if (total > cap) {
            std::ostringstream os;
            os << "TensorSpace: total dimension exceeds the cap of " << cap
               << " (set GATESPLIT_MAX_DIM to raise it)";
            throw SizeLimitError(os.str());
        }
    }
    total_ = static_cast<int>(total);
}

int TensorSpace::dim(int k) const {
    if (k < 1 || k > subsystem_count()) {
        throw ArgumentError("TensorSpace::dim: subsystem index out of range");
    }
    return dims_[static_cast<size_t>(k - 1)];
}

bool TensorSpace::all_qubits() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 2; });
}

TensorSpace TensorSpace::slice(int first, int last) const {
    if (first < 1 || last > subsystem_count() || first > last) {
        throw ArgumentError("TensorSpace::slice: invalid subsystem range");
    }
    return TensorSpace(std::vector<int>(dims_.begin() + (first - 1), dims_.begin() + last));
}

Cut::Cut(const TensorSpace& space, std::vector<int> left_subsystems) : left_(std::move(left_subsystems)) {
    const int n = space.subsystem_count();
    std::sort(left_.begin(), left_.end());
    if (left_.empty() || std::adjacent_find(left_.begin(), left_.end()) != left_.end()) {
        throw ArgumentError("Cut: left side must be a non-empty set of distinct subsystems");
    }
    if (left_.front() < 1 || left_.back() > n) {
        throw ArgumentError("Cut: subsystem index out of range");
    }
    size_t li = 0;
    for (int k = 1; k <= n; ++k) {
        if (li < left_.size() && left_[li] == k) {
            ++li;
        } else {
            right_.push_back(k);
        }
    }
    if (right_.empty()) {
        throw ArgumentError("Cut: right side must be non-empty");
    }
    left_dim_ = 1;
    for (int k : left_) left_dim_ *= space.dim(k);
    right_dim_ = 1;
    for (int k : right_) right_dim_ *= space.dim(k);
}

std::string Cut::to_string() const {
    std::ostringstream os;
    auto side = [&os](const std::vector<int>& v) {
        os << '{';
        for (size_t i = 0; i < v.size(); ++i) {
            if (i > 0) os << ',';
            os << v[i];
        }
        os << '}';
    };
    side(left_);
    os << '|';
    side(right_);
    return os.str();
}

CMat kron(const CMat& a, const CMat& b) {
    const long long rows = static_cast<long long>(a.rows()) * b.rows();
    const long long cols = static_cast<long long>(a.cols()) * b.cols();
    const long long cap = max_total_dim();
    if (rows > cap || cols > cap) {
        throw SizeLimitError("kron: result dimension exceeds the configured cap");
    }
    CMat out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMat kron_all(const std::vector<CMat>& factors) {
    if (factors.empty()) {
        throw ArgumentError("kron_all: factor list must be non-empty");
    }
    CMat out = factors.front();
    for (size_t i = 1; i < factors.size(); ++i) {
        out = kron(out, factors[i]);
    }
    return out;
}

CMat embed_at(const CMat& a, const TensorSpace& space, int site) {
    require_square(a, "embed_at");
    if (site < 1 || site > space.subsystem_count()) {
        throw ArgumentError("embed_at: subsystem index out of range");
    }
    if (a.rows() != space.dim(site)) {
        throw ArgumentError("embed_at: operator size does not match the subsystem dimension");
    }
    std::vector<CMat> factors;
    factors.reserve(static_cast<size_t>(space.subsystem_count()));
    for (int k = 1; k <= space.subsystem_count(); ++k) {
        factors.push_back(k == site ? a : CMat(CMat::Identity(space.dim(k), space.dim(k))));
    }
    return kron_all(factors);
}

CMat partial_trace(const CMat& m, const TensorSpace& space, int keep) {
    require_square(m, "partial_trace");
    if (m.rows() != space.total()) {
        throw ArgumentError("partial_trace: matrix size does not match the space");
    }
    if (keep < 1 || keep > space.subsystem_count()) {
        throw ArgumentError("partial_trace: subsystem index out of range");
    }
    const auto& dims = space.dims();
    const auto strides = strides_of(dims);
    const size_t k = static_cast<size_t>(keep - 1);
    const int mk = dims[k];
    const int keep_stride = strides[k];

    // Reduced mixed-radix enumeration over the traced-out subsystems.
    std::vector<int> rest_dims;
    std::vector<int> rest_strides;
    for (size_t j = 0; j < dims.size(); ++j) {
        if (j != k) {
            rest_dims.push_back(dims[j]);
            rest_strides.push_back(strides[j]);
        }
    }
    const int rest_total = space.total() / mk;
    CMat out = CMat::Zero(mk, mk);
    for (int r = 0; r < rest_total; ++r) {
        int base = 0;
        int rem = r;
        for (size_t j = rest_dims.size(); j-- > 0;) {
            base += (rem % rest_dims[j]) * rest_strides[j];
            rem /= rest_dims[j];
        }
        for (int a = 0; a < mk; ++a) {
            for (int b = 0; b < mk; ++b) {
                out(a, b) += m(base + a * keep_stride, base + b * keep_stride);
            }
        }
    }
    return out;
}

bool is_hermitian(const CMat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double dev = (m - m.adjoint()).norm();
    return dev <= tol * std::max(1.0, m.norm());
}

HermitianEig hermitian_eig(const CMat& m) {
    require_square(m, "hermitian_eig");
    if (!m.allFinite()) {
        throw ValidationError("hermitian_eig: matrix has non-finite entries");
    }
    if (!is_hermitian(m)) {
        throw ValidationError("hermitian_eig: matrix is not self-adjoint within tolerance");
    }
    const CMat sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eig: eigensolver failed to converge");
    }
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

CMat matrix_exp_i(const CMat& h) {
    const HermitianEig eig = hermitian_eig(h);
    const CVec phases = (Complex(0, 1) * eig.values.cast<Complex>().array()).exp();
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Eigen::VectorXd singular_values(const CMat& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw ArgumentError("singular_values: empty matrix");
    }
    if (std::max(m.rows(), m.cols()) <= 32) {
        return Eigen::JacobiSVD<CMat>(m).singularValues();
    }
    return Eigen::BDCSVD<CMat>(m).singularValues();
}

double operator_norm(const CMat& m) {
    return singular_values(m)(0);
}

double frobenius_norm(const CMat& m) {
    return m.norm();
}

double trace_norm(const CMat& m) {
    return singular_values(m).sum();
}

double schatten_norm(const CMat& m, double p) {
    if (!(p >= 1.0)) {
        throw ArgumentError("schatten_norm: p must be >= 1");
    }
    const Eigen::VectorXd sv = singular_values(m);
    if (p == 1.0) return sv.sum();
    if (p == 2.0) return sv.norm();
    return std::pow(sv.array().pow(p).sum(), 1.0 / p);
}

double matrix_norm(const CMat& m, NormKind kind) {
    switch (kind) {
        case NormKind::Operator: return operator_norm(m);
        case NormKind::Frobenius: return frobenius_norm(m);
        case NormKind::Trace: return trace_norm(m);
    }
    throw ArgumentError("matrix_norm: unknown norm kind");
}

CMat reshuffle(const CMat& u, const TensorSpace& space, const Cut& cut) {
    require_square(u, "reshuffle");
    if (u.rows() != space.total()) {
        throw ArgumentError("reshuffle: matrix size does not match the space");
    }
    const auto& dims = space.dims();
    const int n = space.subsystem_count();
    const int total = space.total();
    const int dl = cut.left_dim();
    const int dr = cut.right_dim();

    // Map each composite index to its (left, right) sub-indices, with the
    // sorted cut order defining significance within each side.
    std::vector<char> on_left(static_cast<size_t>(n), 0);
    for (int k : cut.left()) on_left[static_cast<size_t>(k - 1)] = 1;
    const auto strides = strides_of(dims);
    std::vector<int> left_index(static_cast<size_t>(total));
    std::vector<int> right_index(static_cast<size_t>(total));
    for (int i = 0; i < total; ++i) {
        int il = 0;
        int ir = 0;
        for (size_t k = 0; k < static_cast<size_t>(n); ++k) {
            const int digit = (i / strides[k]) % dims[k];
            if (on_left[k]) {
                il = il * dims[k] + digit;
            } else {
                ir = ir * dims[k] + digit;
            }
        }
        left_index[static_cast<size_t>(i)] = il;
        right_index[static_cast<size_t>(i)] = ir;
    }

    CMat out(static_cast<Eigen::Index>(dl) * dl, static_cast<Eigen::Index>(dr) * dr);
    for (int i = 0; i < total; ++i) {
        for (int j = 0; j < total; ++j) {
            const int row = left_index[static_cast<size_t>(i)] * dl + left_index[static_cast<size_t>(j)];
            const int col = right_index[static_cast<size_t>(i)] * dr + right_index[static_cast<size_t>(j)];
            out(row, col) = u(i, j);
        }
    }
    return out;
}

CMat commutator(const CMat& a, const CMat& b) {
    require_square(a, "commutator");
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ArgumentError("commutator: shape mismatch");
    }
    return a * b - b * a;
}

CMat polar_unitary(const CMat& m) {
    require_square(m, "polar_unitary");
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(sv.size() - 1) <= 1e-9 * std::max(1.0, sv(0))) {
        throw DegenerateFactorError("polar_unitary: matrix is numerically singular");
    }
    return svd.matrixU() * svd.matrixV().adjoint();
}

CMat phase_fix(const CMat& m) {
    Eigen::Index bi = 0;
    Eigen::Index bj = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double mag = std::abs(m(i, j));
            if (mag > best) {
                best = mag;
                bi = i;
                bj = j;
            }
        }
    }
    if (best <= 0.0) {
        throw ArgumentError("phase_fix: zero matrix");
    }
    const Complex z = m(bi, bj);
    return m * (std::conj(z) / std::abs(z));
}

}  // namespace gatesplit

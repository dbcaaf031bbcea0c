#include "gatesplit/generator.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace gatesplit {

UnitaryGate::UnitaryGate(CMat matrix, TensorSpace space) : UnitaryGate(std::move(matrix), std::move(space), true) {}

UnitaryGate UnitaryGate::unvalidated(CMat matrix, TensorSpace space) {
    return UnitaryGate(std::move(matrix), std::move(space), false);
}

UnitaryGate::UnitaryGate(CMat matrix, TensorSpace space, bool validate)
    : matrix_(std::move(matrix)), space_(std::move(space)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.total()) {
        std::ostringstream os;
        os << "UnitaryGate: matrix size " << matrix_.rows() << "x" << matrix_.cols()
           << " does not match the space dimension " << space_.total();
        throw ArgumentError(os.str());
    }
    if (!matrix_.allFinite()) {
        throw ValidationError("UnitaryGate: matrix has non-finite entries");
    }
    if (validate) {
        const CMat defect = matrix_.adjoint() * matrix_ - CMat::Identity(matrix_.rows(), matrix_.cols());
        Eigen::SelfAdjointEigenSolver<CMat> solver(defect, Eigen::EigenvaluesOnly);
        const double dev = solver.eigenvalues().cwiseAbs().maxCoeff();
        if (dev > kUnitaryTol) {
            std::ostringstream os;
            os << "UnitaryGate: matrix is not unitary (||U^dag U - I||_o = " << dev << ")";
            throw ValidationError(os.str());
        }
    }
}

HermitianGenerator::HermitianGenerator(CMat matrix, TensorSpace space, bool principal)
    : matrix_(std::move(matrix)), space_(std::move(space)), principal_(principal) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.total()) {
        throw ArgumentError("HermitianGenerator: matrix size does not match the space dimension");
    }
    if (!matrix_.allFinite()) {
        throw ValidationError("HermitianGenerator: matrix has non-finite entries");
    }
    if (!is_hermitian(matrix_)) {
        throw ValidationError("HermitianGenerator: matrix is not self-adjoint within tolerance");
    }
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
}

UnitaryEigensystem unitary_eig(const CMat& u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw ArgumentError("unitary_eig: expected a non-empty square matrix");
    }
    // The Schur basis of a normal matrix is an orthonormal eigenbasis; the
    // strictly upper part of T is pure rounding noise for unitary input.
    Eigen::ComplexSchur<CMat> schur(u, /*computeU=*/true);
    if (schur.info() != Eigen::Success) {
        throw Error("unitary_eig: Schur decomposition failed to converge");
    }
    const Eigen::Index d = u.rows();
    Eigen::VectorXd phases(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        double theta = std::arg(schur.matrixT()(j, j));
        if (theta == -std::numbers::pi) {
            theta = std::numbers::pi;  // keep the branch half-open at +pi
        }
        phases(j) = theta;
    }
    return UnitaryEigensystem{std::move(phases), schur.matrixU()};
}

HermitianGenerator generator_of(const UnitaryGate& u) {
    const UnitaryEigensystem eig = unitary_eig(u.matrix());
    CMat h = eig.vectors * eig.phases.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    h = 0.5 * (h + h.adjoint().eval());
    return HermitianGenerator(std::move(h), u.space(), /*principal=*/true);
}

UnitaryGate exp_of(const HermitianGenerator& h, double t) {
    return UnitaryGate(matrix_exp_i(t * h.matrix()), h.space());
}

}  // namespace gatesplit

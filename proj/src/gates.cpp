#include "gatesplit/gates.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <vector>

namespace gatesplit {

CMat pauli_x() {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMat pauli_y() {
    CMat m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

CMat pauli_z() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

CMat hadamard() {
    CMat m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

CMat gate_cnot() {
    CMat m = CMat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

CMat gate_cz() {
    CMat m = CMat::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

CMat gate_swap() {
    CMat m = CMat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return m;
}

CMat gate_iswap() {
    CMat m = CMat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = Complex(0, 1);
    m(2, 1) = Complex(0, 1);
    m(3, 3) = 1;
    return m;
}

CMat gate_toffoli() {
    CMat m = CMat::Identity(8, 8);
    m(6, 6) = 0;
    m(7, 7) = 0;
    m(6, 7) = 1;
    m(7, 6) = 1;
    return m;
}

double uniform_double(std::mt19937_64& rng) {
    return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

CMat gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double u1 = 1.0 - uniform_double(rng);  // (0, 1]
            const double u2 = uniform_double(rng);
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double angle = 2.0 * std::numbers::pi * u2;
            m(i, j) = Complex(radius * std::cos(angle), radius * std::sin(angle));
        }
    }
    return m;
}

CMat haar_unitary(int dim, std::mt19937_64& rng) {
    if (dim < 1) {
        throw ArgumentError("haar_unitary: dimension must be positive");
    }
    const CMat g = gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const Complex r = qr.matrixQR()(j, j);
        const double mag = std::abs(r);
        q.col(j) *= mag > 0 ? r / mag : Complex(1, 0);
    }
    return q;
}

CMat random_product_gate(int qubits, std::uint64_t seed) {
    if (qubits < 1) {
        throw ArgumentError("random_product_gate: qubit count must be positive");
    }
    std::mt19937_64 rng(seed);
    std::vector<CMat> factors;
    factors.reserve(static_cast<size_t>(qubits));
    for (int k = 0; k < qubits; ++k) {
        factors.push_back(haar_unitary(2, rng));
    }
    return kron_all(factors);
}

CMat random_unitary_gate(int qubits, std::uint64_t seed) {
    if (qubits < 1) {
        throw ArgumentError("random_unitary_gate: qubit count must be positive");
    }
    std::mt19937_64 rng(seed);
    return haar_unitary(1 << qubits, rng);
}

}  // namespace gatesplit

/** \file
 * Built-in gate corpus and seeded Haar-style random draws. The random
 * generators avoid std distributions so identical seeds give identical bits
 * on every platform.
 */

#pragma once

#include "gatesplit/linalg.hpp"

#include <cstdint>
#include <random>

namespace gatesplit {

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();
CMat hadamard();

CMat gate_cnot();
CMat gate_cz();
CMat gate_swap();
CMat gate_iswap();
CMat gate_toffoli();

/// Uniform double in [0, 1) from the raw engine output.
double uniform_double(std::mt19937_64& rng);

/// Matrix of independent standard complex Gaussians (Box-Muller).
CMat gaussian_matrix(int rows, int cols, std::mt19937_64& rng);

/// Haar-distributed unitary: QR of a Gaussian matrix with the R diagonal
/// phase-fixed to be real positive.
CMat haar_unitary(int dim, std::mt19937_64& rng);

/// Tensor product of `qubits` independent Haar 2x2 unitaries.
CMat random_product_gate(int qubits, std::uint64_t seed);

/// Haar unitary on the full 2^qubits space.
CMat random_unitary_gate(int qubits, std::uint64_t seed);

}  // namespace gatesplit

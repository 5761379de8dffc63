#pragma once

#include <cstdint>

#include "qlie/lie.hpp"
#include "qlie/system.hpp"

namespace qlie {

/// Spectral truncation of the harmonic oscillator to n levels:
/// H_0 = diag(k + 1/2), dipole x = (a + a^dag)/sqrt(2) with off-diagonals
/// sqrt((k+1)/2), bilinear family, V = {-1, 0, 1}.
ControlSystem truncated_oscillator(int n);

/// Abstract commutator relations of the infinite-dimensional oscillator:
/// generators a = i(-d^2/dx^2 + x^2), b = ix, c = d/dx, d = -i, with
/// [a, b] = 2c, [a, c] = -2b, [b, c] = d and d central. Closure dimension 4.
BracketTable oscillator_bracket_table();

/// Random Hermitian drift and couplings (Gaussian entries, symmetrized),
/// monomial(L) family, V = L + 2 equispaced points in [-1, 1]. Bit-for-bit
/// reproducible per (n, L, seed).
ControlSystem random_dense(int n, int l, std::uint64_t seed);

/// Commuting pair H_0 = diag(1..n), mu_1 = diag(n..1): the canonical
/// non-controllable fixture (populations are conserved).
ControlSystem diagonal_pair(int n);

}  // namespace qlie

#pragma once

#include "ebr/channel.hpp"
#include "ebr/linalg.hpp"

namespace ebr {

/// Index (i, j) into the d^2 discrete Weyl matrices W_ij = U^i V^j.
struct WeylIndex {
  int d = 2;
  int i = 0;
  int j = 0;

  WeylIndex(int d_, int i_, int j_);
};

/// Forward cyclic shift: U e_k = e_{k+1 mod d}.
Matrix shift_matrix(int d);

/// Clock matrix diag(1, w, ..., w^{d-1}) with w = exp(2*pi*i/d).
Matrix clock_matrix(int d);

Matrix weyl_matrix(const WeylIndex& idx);
Matrix weyl_matrix(int d, int i, int j);

/// sum_j W_ij^dagger E_pq W_ij for p != q; vanishes identically.
Matrix weyl_twirl_offdiag(int d, int i, int p, int q);

/// Weyl-covariant channel with the d^2 Kraus operators
/// (1/sqrt(d)) (W_ij x)(W_ij y)^dagger in row-major (i, j) order. The 1/d
/// prefactor makes the channel trace preserving for unit x, y.
KrausChannel covariant_channel(const Vector& x, const Vector& y);

/// Same operators as rank-one pairs ((1/sqrt(d)) W_ij x, W_ij y).
RankOneKrausFamily covariant_family(const Vector& x, const Vector& y);

}  // namespace ebr

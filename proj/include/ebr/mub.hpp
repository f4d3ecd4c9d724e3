#pragma once

#include "ebr/channel.hpp"
#include "ebr/linalg.hpp"

#include <vector>

namespace ebr {

/// d+1 orthonormal bases of C^d, pairwise mutually unbiased
/// (|<v, w>|^2 = 1/d across distinct bases).
struct MubFamily {
  int d = 2;
  std::vector<std::vector<Vector>> bases;

  MubFamily(int d_, std::vector<std::vector<Vector>> bases_);
};

struct UnbiasedReport {
  double max_ortho_dev = 0.0;       // within-basis Gram vs identity
  double max_unbiased_dev = 0.0;    // cross-basis |<v,w>|^2 vs 1/d
  double max_projection_dev = 0.0;  // tr(P_ij P_kl) vs its case value {0, 1, 1/d}

  bool ok(double tol = 1e-9) const {
    return max_ortho_dev <= tol && max_unbiased_dev <= tol && max_projection_dev <= tol;
  }
};

struct MubChannelResult {
  KrausChannel channel;        // d(d+1) rank-one Kraus operators
  RankOneKrausFamily witness;  // pairs x = y = v / (d+1)^{1/4}
};

struct Lemma52Basis {
  std::vector<Matrix> projections;  // exactly d^2 of them
  int gram_rank = 0;
};

bool is_prime(int n);

/// d+1 mutually unbiased bases for prime d: the computational basis (clock
/// eigenbasis) followed by the eigenbases of U V^k for k = 0..d-1, each
/// eigenvector phase-fixed so its first sizable component is real positive.
MubFamily construct_mub(int d);

UnbiasedReport verify_unbiased(const MubFamily& f);

/// The channel (1/(d+1)) sum_ij P_ij X P_ij, which equals zee, together with
/// its d(d+1)-term rank-one witness.
MubChannelResult mub_channel(const MubFamily& f);

/// The spanning subset {P_{1,j} : j <= d} union {P_{i,j} : i >= 2, j <= d-1}
/// with the rank of its Hilbert-Schmidt Gram matrix (= d^2 when the family is
/// genuinely unbiased).
Lemma52Basis lemma52_basis(const MubFamily& f);

}  // namespace ebr

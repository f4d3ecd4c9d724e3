#include "ebr/sic.hpp"

#include "ebr/families.hpp"
#include "ebr/weyl.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ebr;
namespace tu = ebr::testutil;

namespace {

Fiducial qubit_fiducial() {
  Vector w(2);
  w << std::sqrt(3.0 + std::sqrt(3.0)), std::polar(1.0, std::numbers::pi / 4.0) * std::sqrt(3.0 - std::sqrt(3.0));
  w /= std::sqrt(6.0);
  return Fiducial(2, w);
}

SicCandidate qutrit_endpoint_orbit() {
  auto [x, y] = d3_xy(0.25);
  return weyl_orbit(Fiducial(3, x));
}

}  // namespace

TEST_SUITE_BEGIN("sic");

TEST_CASE("weyl orbit of the qubit fiducial") {
  const SicCandidate orbit = weyl_orbit(qubit_fiducial());
  REQUIRE(orbit.vectors.size() == 4);
  for (const auto& v : orbit.vectors) CHECK(std::abs(v.norm() - 1.0) < 1e-12);

  const AngleReport rep = angle_report(orbit);
  CHECK(rep.target == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(rep.min_offdiag - 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(rep.max_offdiag - 1.0 / 3.0) < 1e-9);
  CHECK(rep.max_norm_dev < 1e-12);
}

TEST_CASE("weyl orbit of a basis vector is not equiangular") {
  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  const SicCandidate orbit = weyl_orbit(Fiducial(2, e1));
  // orbit is {e1, e1, e2, e2} up to phases
  const AngleReport rep = angle_report(orbit);
  CHECK(rep.max_offdiag == doctest::Approx(1.0));
  CHECK(rep.min_offdiag == doctest::Approx(0.0));
}

TEST_CASE("orbit norms stay unit for random fiducials") {
  auto rng = tu::make_rng(61);
  const SicCandidate orbit = weyl_orbit(Fiducial(5, tu::random_unit_vector(5, rng)));
  for (const auto& v : orbit.vectors) CHECK(std::abs(v.norm() - 1.0) < 1e-12);
}

TEST_CASE("verify_sic_povm on the qubit orbit") {
  const SicVerification rep = verify_sic_povm(weyl_orbit(qubit_fiducial()));
  CHECK(rep.povm_sum_ok);
  CHECK(rep.info_complete_ok);
  CHECK(rep.symmetric_ok);
  CHECK(rep.rank_one_ok);
  CHECK(rep.gram_rank == 4);
  CHECK(rep.all_ok());
}

TEST_CASE("verify_sic_povm constants satisfy tr(R_i R_j) = 1/(d^2(d+1))") {
  for (int d : {2, 3}) {
    const SicCandidate orbit =
        d == 2 ? weyl_orbit(qubit_fiducial()) : qutrit_endpoint_orbit();
    const double mu = 1.0 / (static_cast<double>(d) * d * (d + 1.0));
    for (size_t a = 0; a < orbit.vectors.size(); ++a) {
      for (size_t b = a + 1; b < orbit.vectors.size(); ++b) {
        const double tr_rr =
            std::norm(orbit.vectors[a].dot(orbit.vectors[b])) / (static_cast<double>(d) * d);
        CHECK(std::abs(tr_rr - mu) < 1e-9);
      }
    }
  }
}

TEST_CASE("degenerate candidates fail the POVM sum") {
  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  const SicCandidate repeated(2, {e1, e1, e1, e1});
  const SicVerification rep = verify_sic_povm(repeated);
  CHECK_FALSE(rep.povm_sum_ok);
  const AngleReport angles = angle_report(repeated);
  CHECK(angles.max_offdiag == doctest::Approx(1.0));
}

TEST_CASE("resolution identity holds exactly for SIC orbits") {
  CHECK(resolution_identity_check(weyl_orbit(qubit_fiducial()), 1e-9));
  CHECK(resolution_identity_check(qutrit_endpoint_orbit(), 1e-9));

  auto rng = tu::make_rng(62);
  const SicCandidate random_orbit = weyl_orbit(Fiducial(3, tu::random_unit_vector(3, rng)));
  CHECK_FALSE(resolution_identity_check(random_orbit, 1e-8));
}

TEST_CASE("resolution identity and SIC verification agree on a corpus") {
  auto rng = tu::make_rng(63);
  std::vector<SicCandidate> corpus;
  corpus.push_back(weyl_orbit(qubit_fiducial()));
  corpus.push_back(qutrit_endpoint_orbit());
  // perturbed failures
  for (int rep = 0; rep < 3; ++rep) {
    Vector w = qubit_fiducial().w + 1e-3 * tu::random_vector(2, rng);
    corpus.push_back(weyl_orbit(Fiducial(2, w.normalized())));
    corpus.push_back(weyl_orbit(Fiducial(3, tu::random_unit_vector(3, rng))));
  }
  for (const auto& cand : corpus) {
    const bool via_resolution = resolution_identity_check(cand, 1e-8);
    const bool via_verification = verify_sic_povm(cand, 1e-8).all_ok();
    CHECK(via_resolution == via_verification);
  }
}

TEST_CASE("verification is phase-gauge invariant") {
  auto rng = tu::make_rng(64);
  SicCandidate orbit = weyl_orbit(qubit_fiducial());
  SicCandidate rotated = orbit;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (auto& v : rotated.vectors) v *= std::polar(1.0, angle(rng));

  CHECK(angle_report(orbit).max_offdiag == doctest::Approx(angle_report(rotated).max_offdiag));
  CHECK(verify_sic_povm(rotated).all_ok());
  CHECK(resolution_identity_check(rotated, 1e-9));
  CHECK(frame_potential(orbit) == doctest::Approx(frame_potential(rotated)));
  CHECK(sic_symmetric_decomposition_check(rotated.vectors, 1e-9) ==
        sic_symmetric_decomposition_check(orbit.vectors, 1e-9));
}

TEST_CASE("extract_equiangular from the covariant family at t = 1/(d+1)") {
  const RankOneKrausFamily fam = d2_family(1.0 / 3.0);
  const SicCandidate cand = extract_equiangular(fam, 1e-8);
  const AngleReport rep = angle_report(cand);
  CHECK(rep.max_angle_dev() < 1e-9);

  // phase scaling of the pairs leaves the extracted angles unchanged
  auto rng = tu::make_rng(65);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<std::pair<Vector, Vector>> pairs = fam.pairs;
  for (auto& [x, y] : pairs) x *= std::polar(1.0, angle(rng));
  const SicCandidate cand2 = extract_equiangular(RankOneKrausFamily(2, pairs), 1e-8);
  CHECK(angle_report(cand2).max_angle_dev() < 1e-9);
}

TEST_CASE("extract_equiangular round-trips SIC-generated families") {
  // family built directly from the orbit projections, x = y = w / d^{1/4}
  const SicCandidate orbit = weyl_orbit(qubit_fiducial());
  std::vector<std::pair<Vector, Vector>> pairs;
  const double scale = std::pow(2.0, -0.25);
  for (const auto& w : orbit.vectors) pairs.emplace_back(scale * w, scale * w);
  const SicCandidate back = extract_equiangular(RankOneKrausFamily(2, pairs), 1e-8);
  const AngleReport rep = angle_report(back);
  CHECK(std::abs(rep.min_offdiag - 1.0 / 3.0) < 1e-8);
  CHECK(std::abs(rep.max_offdiag - 1.0 / 3.0) < 1e-8);
}

TEST_CASE("extract_equiangular rejects wrong inputs") {
  // wrong cardinality
  CHECK_THROWS_AS(extract_equiangular(RankOneKrausFamily(2, {}), 1e-8), std::invalid_argument);

  // family that does not realize zee
  auto rng = tu::make_rng(66);
  std::vector<std::pair<Vector, Vector>> pairs;
  for (int k = 0; k < 4; ++k) pairs.emplace_back(tu::random_vector(2, rng), tu::random_vector(2, rng));
  CHECK_THROWS_WITH_AS(extract_equiangular(RankOneKrausFamily(2, pairs), 1e-8),
                       doctest::Contains("does not realize"), std::invalid_argument);

  // spectral (non-rank-one) realization cannot even be split into pairs
  CHECK_THROWS_AS(family_from_channel(zee_channel(2)), std::invalid_argument);
}

TEST_CASE("forced angle") {
  auto fa = forced_angle(2, 1.0 / 3.0);
  CHECK(fa.value == doctest::Approx(1.0 / 3.0));
  CHECK(fa.consistent);

  auto fb = forced_angle(3, 0.0);
  CHECK(fb.value == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(fb.consistent);

  auto fc = forced_angle(2, 0.1);
  CHECK(fc.value == doctest::Approx(0.45));
  CHECK_FALSE(fc.consistent);
}

TEST_CASE("frame potential") {
  CHECK(frame_potential(weyl_orbit(qubit_fiducial())) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));

  Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
  e1(0) = 1.0;
  e2(1) = 1.0;
  CHECK(frame_potential(SicCandidate(2, {e1, e2, e1, e2})) == doctest::Approx(4.0));

  // the equiangular configuration minimizes the potential
  auto rng = tu::make_rng(67);
  for (int rep = 0; rep < 10; ++rep) {
    const SicCandidate cand = weyl_orbit(Fiducial(2, tu::random_unit_vector(2, rng)));
    CHECK(frame_potential(cand) >= 4.0 / 3.0 - 1e-9);
  }

  CHECK_THROWS_AS(frame_potential(SicCandidate(2, {e1, e2, e1, (2.0 * e2).eval()})),
                  std::invalid_argument);
}

TEST_CASE("constant-angle candidates passing the POVM sum have angle 1/(d+1)") {
  for (int d : {2, 3}) {
    const SicCandidate orbit =
        d == 2 ? weyl_orbit(qubit_fiducial()) : qutrit_endpoint_orbit();
    const SicVerification ver = verify_sic_povm(orbit);
    const AngleReport rep = angle_report(orbit);
    REQUIRE(ver.povm_sum_ok);
    REQUIRE(rep.max_offdiag - rep.min_offdiag < 1e-9);
    CHECK(std::abs(rep.max_offdiag - 1.0 / (d + 1.0)) < 1e-8);
  }
}

TEST_CASE("fiducial validation") {
  Vector big(2);
  big << 1.0, 1.0;
  CHECK_THROWS_AS(Fiducial(2, big), std::invalid_argument);
  CHECK_THROWS_AS(SicCandidate(2, {big}), std::invalid_argument);
}

TEST_SUITE_END();

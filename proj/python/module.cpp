#include "ebr/channel.hpp"
#include "ebr/families.hpp"
#include "ebr/linalg.hpp"
#include "ebr/mub.hpp"
#include "ebr/search.hpp"
#include "ebr/sic.hpp"
#include "ebr/version.hpp"
#include "ebr/weyl.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ebr;

namespace {

OptimizerConfig config_from_kwargs(int restarts, int max_iters, double step_init, double grad_tol,
                                   double residual_accept, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = max_iters;
  cfg.step_init = step_init;
  cfg.grad_tol = grad_tol;
  cfg.residual_accept = residual_accept;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_ebrkit, m) {
  m.doc() = "Rank-one Kraus decompositions of entanglement-breaking channels, "
            "SIC POVM verification, and MUB witnesses";
  m.attr("__version__") = kVersion;

  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

  // ---- linear algebra helpers -------------------------------------------
  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("abs_eps"), py::arg("rank_rel_eps"))
      .def_readwrite("abs_eps", &Tolerance::abs_eps)
      .def_readwrite("rank_rel_eps", &Tolerance::rank_rel_eps);

  m.def("rank_with_tol", &rank_with_tol, py::arg("a"), py::arg("tol") = Tolerance{});
  m.def("is_psd", &is_psd, py::arg("a"), py::arg("tol") = Tolerance{});
  m.def("tensor", py::overload_cast<const Matrix&, const Matrix&>(&tensor));
  m.def("hermitian_eigen", [](const Matrix& a) {
    auto eig = hermitian_eigen(a);
    return py::make_tuple(eig.values, eig.vectors);
  });

  // ---- discrete Weyl matrices -------------------------------------------
  m.def("shift_matrix", &shift_matrix, py::arg("d"));
  m.def("clock_matrix", &clock_matrix, py::arg("d"));
  m.def("weyl_matrix", py::overload_cast<int, int, int>(&weyl_matrix), py::arg("d"), py::arg("i"),
        py::arg("j"));
  m.def("weyl_twirl_offdiag", &weyl_twirl_offdiag, py::arg("d"), py::arg("i"), py::arg("p"),
        py::arg("q"));

  // ---- channels -----------------------------------------------------------
  py::class_<KrausChannel>(m, "KrausChannel")
      .def(py::init<int, int, std::vector<Matrix>>(), py::arg("d_in"), py::arg("d_out"),
           py::arg("kraus"))
      .def_static("identity", &KrausChannel::identity, py::arg("d"))
      .def_readonly("d_in", &KrausChannel::d_in)
      .def_readonly("d_out", &KrausChannel::d_out)
      .def_readonly("kraus", &KrausChannel::kraus);

  py::class_<ChoiMatrix>(m, "ChoiMatrix")
      .def(py::init<int, int, Matrix>(), py::arg("d_in"), py::arg("d_out"), py::arg("matrix"))
      .def_readonly("d_in", &ChoiMatrix::d_in)
      .def_readonly("d_out", &ChoiMatrix::d_out)
      .def_readonly("matrix", &ChoiMatrix::mat);

  py::class_<RankOneKrausFamily>(m, "RankOneKrausFamily")
      .def(py::init<int, std::vector<std::pair<Vector, Vector>>>(), py::arg("d"), py::arg("pairs"))
      .def_readonly("d", &RankOneKrausFamily::d)
      .def_readonly("pairs", &RankOneKrausFamily::pairs)
      .def("__len__", &RankOneKrausFamily::size);

  m.def("apply", [](const KrausChannel& ch, const Matrix& x) { return ch.apply(x); },
        py::arg("channel"), py::arg("x"));
  m.def("choi", py::overload_cast<const KrausChannel&>(&choi), py::arg("channel"));
  m.def("choi_rank", py::overload_cast<const KrausChannel&, const Tolerance&>(&choi_rank),
        py::arg("channel"), py::arg("tol") = Tolerance{});
  m.def("choi_distance", &choi_distance);
  m.def("kraus_from_choi", &kraus_from_choi, py::arg("choi"), py::arg("tol") = Tolerance{});
  m.def("is_trace_preserving", &is_trace_preserving, py::arg("channel"),
        py::arg("tol") = Tolerance{});
  m.def("is_unital", &is_unital, py::arg("channel"), py::arg("tol") = Tolerance{});
  m.def("is_cp", py::overload_cast<const KrausChannel&, const Tolerance&>(&is_cp),
        py::arg("channel"), py::arg("tol") = Tolerance{});
  m.def("ppt_check", py::overload_cast<const KrausChannel&, const Tolerance&>(&ppt_check),
        py::arg("channel"), py::arg("tol") = Tolerance{});
  m.def("partial_transpose", &partial_transpose);
  m.def("depolarizing", [](int d, double t) { return depolarizing({d, t}); }, py::arg("d"),
        py::arg("t"));
  m.def("zee_channel", &zee_channel, py::arg("d"));
  m.def("compose_transpose", &compose_transpose);
  m.def("compose_unitary", &compose_unitary);
  m.def("symmetric_projection", &symmetric_projection, py::arg("d"));
  m.def("sic_symmetric_decomposition_check", &sic_symmetric_decomposition_check,
        py::arg("vectors"), py::arg("tol") = 1e-9);

  m.def("classify_depolarizing", [](int d, double t) {
    const DepolarizingClass c = classify_depolarizing(d, t);
    return py::make_tuple(c.is_channel, c.is_transpose_channel, c.is_eb);
  }, py::arg("d"), py::arg("t"));
  m.def("classify_depolarizing_exact", [](int d, std::int64_t num, std::int64_t den) {
    const DepolarizingClass c = classify_depolarizing(d, Rational(num, den));
    return py::make_tuple(c.is_channel, c.is_transpose_channel, c.is_eb);
  }, py::arg("d"), py::arg("num"), py::arg("den"));

  m.def("family_to_channel", &family_to_channel);
  m.def("family_choi", &family_choi);
  m.def("family_compose_transpose", &family_compose_transpose);
  m.def("family_compose_unitary", &family_compose_unitary);
  m.def("family_from_channel", &family_from_channel, py::arg("channel"),
        py::arg("tol") = Tolerance{});
  m.def("covariant_channel", &covariant_channel, py::arg("x"), py::arg("y"));
  m.def("covariant_family", &covariant_family, py::arg("x"), py::arg("y"));

  // ---- SIC verification ----------------------------------------------------
  py::class_<Fiducial>(m, "Fiducial")
      .def(py::init<int, Vector>(), py::arg("d"), py::arg("w"))
      .def_readonly("d", &Fiducial::d)
      .def_readonly("w", &Fiducial::w);

  py::class_<SicCandidate>(m, "SicCandidate")
      .def(py::init<int, std::vector<Vector>>(), py::arg("d"), py::arg("vectors"))
      .def_readonly("d", &SicCandidate::d)
      .def_readonly("vectors", &SicCandidate::vectors);

  py::class_<AngleReport>(m, "AngleReport")
      .def_readonly("min_offdiag", &AngleReport::min_offdiag)
      .def_readonly("max_offdiag", &AngleReport::max_offdiag)
      .def_readonly("max_norm_dev", &AngleReport::max_norm_dev)
      .def_readonly("target", &AngleReport::target)
      .def("max_angle_dev", &AngleReport::max_angle_dev);

  py::class_<SicVerification>(m, "SicVerification")
      .def_readonly("povm_sum_ok", &SicVerification::povm_sum_ok)
      .def_readonly("info_complete_ok", &SicVerification::info_complete_ok)
      .def_readonly("symmetric_ok", &SicVerification::symmetric_ok)
      .def_readonly("rank_one_ok", &SicVerification::rank_one_ok)
      .def_readonly("gram_rank", &SicVerification::gram_rank)
      .def("all_ok", &SicVerification::all_ok);

  m.def("weyl_orbit", &weyl_orbit, py::arg("fiducial"));
  m.def("angle_report", &angle_report);
  m.def("verify_sic_povm", &verify_sic_povm, py::arg("candidate"), py::arg("tol") = 1e-8);
  m.def("resolution_identity_check", &resolution_identity_check, py::arg("candidate"),
        py::arg("tol") = 1e-8);
  m.def("resolution_identity_deviation", &resolution_identity_deviation);
  m.def("extract_equiangular", &extract_equiangular, py::arg("family"), py::arg("tol") = 1e-8);
  m.def("forced_angle", [](int d, double t) {
    const ForcedAngle f = forced_angle(d, t);
    return py::make_tuple(f.value, f.consistent);
  }, py::arg("d"), py::arg("t"));
  m.def("frame_potential", &frame_potential);

  // ---- closed-form families ------------------------------------------------
  m.def("d2_xy", [](double t, bool alternate) {
    return d2_xy(t, alternate ? DimTwoBranch::alternate : DimTwoBranch::primary);
  }, py::arg("t"), py::arg("alternate") = false);
  m.def("d2_family_check", [](double t, double tol) { return d2_family_check(t, tol); },
        py::arg("t"), py::arg("tol") = 1e-9);
  m.def("d2_choi_distance", [](double t) { return d2_choi_distance(t); }, py::arg("t"));
  m.def("d3_xy", &d3_xy, py::arg("t"));
  m.def("d3_family_check", [](double t, double tol) { return d3_family_check(t, tol); },
        py::arg("t"), py::arg("tol") = 1e-9);
  m.def("d3_choi_distance", &d3_choi_distance, py::arg("t"));
  m.def("d3_scalars", [](double t) {
    const DimThreeParams p = d3_scalars(t);
    py::dict out;
    out["t"] = p.t;
    out["alpha"] = p.alpha;
    out["rho"] = p.rho;
    out["lambda"] = p.lambda;
    out["beta"] = p.beta;
    return out;
  }, py::arg("t"));

  // ---- MUB -----------------------------------------------------------------
  py::class_<MubFamily>(m, "MubFamily")
      .def(py::init<int, std::vector<std::vector<Vector>>>(), py::arg("d"), py::arg("bases"))
      .def_readonly("d", &MubFamily::d)
      .def_readonly("bases", &MubFamily::bases);

  py::class_<UnbiasedReport>(m, "UnbiasedReport")
      .def_readonly("max_ortho_dev", &UnbiasedReport::max_ortho_dev)
      .def_readonly("max_unbiased_dev", &UnbiasedReport::max_unbiased_dev)
      .def_readonly("max_projection_dev", &UnbiasedReport::max_projection_dev)
      .def("ok", &UnbiasedReport::ok, py::arg("tol") = 1e-9);

  py::class_<MubChannelResult>(m, "MubChannelResult")
      .def_readonly("channel", &MubChannelResult::channel)
      .def_readonly("witness", &MubChannelResult::witness);

  py::class_<Lemma52Basis>(m, "Lemma52Basis")
      .def_readonly("projections", &Lemma52Basis::projections)
      .def_readonly("gram_rank", &Lemma52Basis::gram_rank);

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("construct_mub", &construct_mub, py::arg("d"));
  m.def("verify_unbiased", &verify_unbiased);
  m.def("mub_channel", &mub_channel);
  m.def("lemma52_basis", &lemma52_basis);

  // ---- search ----------------------------------------------------------------
  py::class_<DecompositionResult>(m, "DecompositionResult")
      .def_readonly("family", &DecompositionResult::family)
      .def_readonly("residual", &DecompositionResult::residual)
      .def_readonly("converged", &DecompositionResult::converged)
      .def_readonly("restarts_used", &DecompositionResult::restarts_used)
      .def_readonly("iters", &DecompositionResult::iters);

  py::class_<FiducialSearchResult>(m, "FiducialSearchResult")
      .def_readonly("fiducial", &FiducialSearchResult::fiducial)
      .def_readonly("max_angle_dev", &FiducialSearchResult::max_angle_dev)
      .def_readonly("potential", &FiducialSearchResult::potential)
      .def_readonly("success", &FiducialSearchResult::success)
      .def_readonly("restarts_used", &FiducialSearchResult::restarts_used);

  m.def("rank_one_decompose",
        [](const KrausChannel& target, int k, int restarts, int max_iters, double step_init,
           double grad_tol, double residual_accept, std::uint64_t seed) {
          return rank_one_decompose(
              DecompositionProblem(choi(target), k),
              config_from_kwargs(restarts, max_iters, step_init, grad_tol, residual_accept, seed));
        },
        py::arg("target"), py::arg("k"), py::arg("restarts") = 32, py::arg("max_iters") = 5000,
        py::arg("step_init") = 0.1, py::arg("grad_tol") = 1e-10,
        py::arg("residual_accept") = 1e-8, py::arg("seed") = 0);

  m.def("ebr_upper_bound",
        [](const KrausChannel& ch, int k_max, int restarts, int max_iters, std::uint64_t seed) {
          OptimizerConfig cfg;
          cfg.restarts = restarts;
          cfg.max_iters = max_iters;
          cfg.seed = seed;
          const EbrBoundResult res = ebr_upper_bound(ch, k_max, cfg);
          py::dict out;
          out["bound"] = res.bound ? py::cast(*res.bound) : py::none();
          out["ppt_ok"] = res.ppt_ok;
          out["note"] = res.note;
          return out;
        },
        py::arg("channel"), py::arg("k_max"), py::arg("restarts") = 32,
        py::arg("max_iters") = 5000, py::arg("seed") = 0);

  m.def("fiducial_search",
        [](int d, int restarts, int max_iters, double step_init, std::uint64_t seed) {
          OptimizerConfig cfg;
          cfg.restarts = restarts;
          cfg.max_iters = max_iters;
          cfg.step_init = step_init;
          cfg.seed = seed;
          return fiducial_search(d, cfg);
        },
        py::arg("d"), py::arg("restarts") = 32, py::arg("max_iters") = 5000,
        py::arg("step_init") = 0.1, py::arg("seed") = 0);
}

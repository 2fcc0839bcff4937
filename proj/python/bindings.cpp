// Python bindings.  Point sets cross the boundary as n x d numpy arrays,
// scenario configs and logs as the same JSON/CSV strings the CLI uses.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <centerstone/centerpoint.hpp>
#include <centerstone/consensus.hpp>
#include <centerstone/geometry.hpp>
#include <centerstone/oracle.hpp>
#include <centerstone/sim.hpp>
#include <centerstone/tverberg.hpp>
#include <centerstone/types.hpp>

namespace py = pybind11;
using namespace centerstone;

namespace {

PointSet make_set(const Eigen::MatrixXd& rows) {
  if (rows.rows() < 1 || rows.cols() < 1)
    throw std::invalid_argument("points: expected a nonempty n x d array");
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    pts.push_back(rows.row(i).transpose());
  return PointSet::from_rows(pts);
}

const char* method_str(CenterpointResult::Method m) {
  switch (m) {
    case CenterpointResult::Method::Exact1D: return "exact_1d";
    case CenterpointResult::Method::Exact2D: return "exact_2d";
    case CenterpointResult::Method::Exact3D: return "exact_3d";
    case CenterpointResult::Method::IteratedRadon: return "iterated_radon";
  }
  return "?";
}

py::dict centerpoint_dict(const CenterpointResult& r) {
  py::dict d;
  d["point"] = r.point;
  d["guaranteed_depth"] = r.guaranteed_depth;
  d["method"] = method_str(r.method);
  if (r.method == CenterpointResult::Method::IteratedRadon)
    d["radon_r"] = r.radon_r;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Safe-point consensus toolkit: halfspace depth, centerpoints, "
            "Tverberg partitions, and resilient-consensus simulation";

  // depth and centerpoints
  m.def(
      "depth", [](const Point& p, const Eigen::MatrixXd& pts) {
        return depth(p, make_set(pts));
      },
      py::arg("point"), py::arg("points"),
      "Exact halfspace (Tukey) depth of point in points.");
  m.def(
      "exact_centerpoint",
      [](const Eigen::MatrixXd& pts, uint64_t seed) {
        return centerpoint_dict(exact_centerpoint(make_set(pts), seed));
      },
      py::arg("points"), py::arg("seed") = 0,
      "Centerpoint with depth >= ceil(n/(d+1)), dimensions 1-3.");
  m.def(
      "iterated_radon_centerpoint",
      [](const Eigen::MatrixXd& pts, int r, uint64_t seed) {
        return centerpoint_dict(
            iterated_radon_centerpoint(make_set(pts), r, seed));
      },
      py::arg("points"), py::arg("r"), py::arg("seed") = 0,
      "Radon-cascade approximate centerpoint, any dimension; guaranteed "
      "depth radon_depth_bound(n, d, r).");
  m.def("radon_depth_bound", &radon_depth_bound, py::arg("n"), py::arg("d"),
        py::arg("r"));

  // tverberg partitions
  m.def(
      "approx_tverberg",
      [](const Eigen::MatrixXd& pts) {
        TverbergPartition tp = approx_tverberg(make_set(pts));
        py::dict d;
        d["parts"] = tp.parts;
        d["witness"] = tp.witness;
        return d;
      },
      py::arg("points"),
      "Partition into >= ceil(n/2^d) parts whose hulls share the witness.");
  m.def("tverberg_parts_bound", &tverberg_parts_bound, py::arg("n"),
        py::arg("d"));
  m.def(
      "tverberg_safe_point",
      [](const Eigen::MatrixXd& pts, int n_f) {
        return tverberg_safe_point(make_set(pts), n_f);
      },
      py::arg("points"), py::arg("n_f"),
      "Witness point when the partition guarantee covers n_f + 1 parts, "
      "else None.");

  // brute-force reference oracles (small inputs only; refuse otherwise)
  m.def(
      "oracle_depth", [](const Point& p, const Eigen::MatrixXd& pts) {
        return oracle::oracle_depth(p, make_set(pts));
      },
      py::arg("point"), py::arg("points"));
  m.def(
      "oracle_in_hull", [](const Point& p, const Eigen::MatrixXd& pts) {
        return oracle::oracle_in_hull(p, make_set(pts));
      },
      py::arg("point"), py::arg("points"));
  m.def(
      "oracle_safe_point_exists",
      [](const Eigen::MatrixXd& pts, int n_f) {
        return oracle::oracle_safe_point_exists(make_set(pts), n_f);
      },
      py::arg("points"), py::arg("n_f"));

  // resilience arithmetic; method strings: "centerpoint", "tverberg",
  // "iterated-radon:<r>"
  m.def(
      "resilience_bound",
      [](int n, int d, const std::string& method) {
        return resilience_bound(n, d, parse_method(method));
      },
      py::arg("n"), py::arg("d"), py::arg("method") = "centerpoint",
      "Max adversary count a view of size n tolerates under the method.");
  m.def(
      "resilience_condition",
      [](int n, int n_f, int d, const std::string& method) {
        return resilience_condition(n, n_f, d, parse_method(method));
      },
      py::arg("n"), py::arg("n_f"), py::arg("d"),
      py::arg("method") = "centerpoint");

  // scenario simulation; configs travel as JSON strings
  m.def("scenario_names", &scenario_names);
  m.def(
      "generate_scenario",
      [](const std::string& name, uint64_t seed) {
        return config_to_json(generate_scenario(name, seed));
      },
      py::arg("name"), py::arg("seed") = 0,
      "Built-in scenario config as a JSON string.");
  m.def(
      "config_hash",
      [](const std::string& config_json) {
        return config_hash(config_from_json(config_json));
      },
      py::arg("config_json"));
  m.def(
      "run_scenario",
      [](const std::string& config_json) {
        RunArtifacts run = run_scenario(config_from_json(config_json));
        py::dict d;
        d["trajectory_csv"] = trajectory_csv(run);
        d["metrics_json"] = metrics_json(run);
        return d;
      },
      py::arg("config_json"),
      "Run the consensus protocol; returns the trajectory CSV and metrics "
      "JSON as strings.");
  m.def(
      "verify_trajectory",
      [](const std::string& csv_text, int depth_checks) {
        VerifyResult vr = verify_log(csv_text, depth_checks);
        py::dict d;
        d["ok"] = vr.ok;
        d["problems"] = vr.problems;
        d["replayed_rows"] = vr.replayed_rows;
        d["safety_checks"] = vr.safety_checks;
        d["depth_checks"] = vr.depth_checks;
        return d;
      },
      py::arg("trajectory_csv"), py::arg("depth_checks") = 5,
      "Replay a trajectory log and spot-check safety flags and safe-point "
      "depths against the oracles.");
}

#include "ellint/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace ellint {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("json: expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

json matrix_to_json(const SymMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.order(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.order(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json general_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

SymMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidArgument("json: expected a matrix as array of rows");
  const int n = static_cast<int>(j.size());
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw InvalidArgument("json: shape matrix must be square");
    for (int c = 0; c < n; ++c) a(i, c) = j[i][c].get<double>();
  }
  return SymMatrix::from_dense(a);
}

json ellipsoid_to_node(const Ellipsoid& e) {
  return json{{"center", vector_to_json(e.center())},
              {"shape", matrix_to_json(e.shape())}};
}

Ellipsoid ellipsoid_from_node(const json& j) {
  if (!j.contains("center") || !j.contains("shape"))
    throw InvalidArgument("json: ellipsoid needs 'center' and 'shape'");
  return Ellipsoid(vector_from_json(j.at("center")),
                   matrix_from_json(j.at("shape")));
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidArgument("json: malformed document");
  return j;
}

}  // namespace

std::string ellipsoid_to_json(const Ellipsoid& e, int indent) {
  return ellipsoid_to_node(e).dump(indent);
}

Ellipsoid ellipsoid_from_json(const std::string& text) {
  return ellipsoid_from_node(parse(text));
}

std::string spec_to_json(const IntersectionSpec& spec, int indent) {
  json members = json::array();
  for (const Ellipsoid& e : spec.members()) members.push_back(ellipsoid_to_node(e));
  return json{{"ellipsoids", std::move(members)}}.dump(indent);
}

IntersectionSpec spec_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("ellipsoids") || !j.at("ellipsoids").is_array() ||
      j.at("ellipsoids").empty())
    throw InvalidArgument("json: spec needs a nonempty 'ellipsoids' array");
  std::vector<Ellipsoid> members;
  for (const json& node : j.at("ellipsoids"))
    members.push_back(ellipsoid_from_node(node));
  return IntersectionSpec(std::move(members));
}

std::string result_to_json(const MethodResult& result, int indent) {
  json j{{"method", method_name(result.method)},
         {"ellipsoid", ellipsoid_to_node(result.ellipsoid)},
         {"objective", result.objective}};
  if (result.weights)
    j["weights"] = vector_to_json(result.weights->weights());
  else
    j["weights"] = nullptr;
  j["diagnostics"] = json{
      {"engine", result.diagnostics.engine},
      {"status", result.diagnostics.status},
      {"iterations", result.diagnostics.iterations},
      {"final_mu", result.diagnostics.final_mu},
      {"newton_decrement", result.diagnostics.newton_decrement},
      {"min_slack_eigenvalue", result.diagnostics.min_slack_eigenvalue},
      {"seconds", result.diagnostics.seconds},
  };
  return j.dump(indent);
}

std::string scenario_to_json(const Scenario& sc, int indent) {
  json sensors = json::array();
  for (const SymMatrix& r : sc.dynamics.sensor_noise)
    sensors.push_back(matrix_to_json(r));
  json j{{"transition", general_matrix_to_json(sc.dynamics.transition)},
         {"process_noise", matrix_to_json(sc.dynamics.process_noise)},
         {"sensor_noise", std::move(sensors)},
         {"period", sc.dynamics.period},
         {"initial_truth", vector_to_json(sc.initial_truth)},
         {"initial_center", vector_to_json(sc.initial_center)},
         {"initial_shape", matrix_to_json(sc.initial_shape)},
         {"steps", sc.steps},
         {"runs", sc.runs},
         {"seed", sc.seed},
         {"update_method", method_name(sc.update_method)},
         {"fusion_method", method_name(sc.fusion_method)}};
  return j.dump(indent);
}

Scenario scenario_from_json(const std::string& text) {
  const json j = parse(text);
  Scenario sc = paper_scenario();
  if (j.contains("transition")) {
    const json& rows = j.at("transition");
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd f(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) f(r, c) = rows[r][c].get<double>();
    sc.dynamics.transition = f;
  }
  if (j.contains("process_noise"))
    sc.dynamics.process_noise = matrix_from_json(j.at("process_noise"));
  if (j.contains("sensor_noise")) {
    sc.dynamics.sensor_noise.clear();
    for (const json& node : j.at("sensor_noise"))
      sc.dynamics.sensor_noise.push_back(matrix_from_json(node));
  }
  if (j.contains("period")) sc.dynamics.period = j.at("period").get<double>();
  if (j.contains("initial_truth"))
    sc.initial_truth = vector_from_json(j.at("initial_truth"));
  if (j.contains("initial_center"))
    sc.initial_center = vector_from_json(j.at("initial_center"));
  if (j.contains("initial_shape"))
    sc.initial_shape = matrix_from_json(j.at("initial_shape"));
  if (j.contains("steps")) sc.steps = j.at("steps").get<int>();
  if (j.contains("runs")) sc.runs = j.at("runs").get<int>();
  if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
  const auto parse_method = [&](const char* key, Method fallback) {
    if (!j.contains(key)) return fallback;
    const auto m = method_from_name(j.at(key).get<std::string>());
    if (!m) throw InvalidArgument(std::string("json: unknown method in ") + key);
    return *m;
  };
  sc.update_method = parse_method("update_method", sc.update_method);
  sc.fusion_method = parse_method("fusion_method", sc.fusion_method);
  sc.validate();
  return sc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << content;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace ellint

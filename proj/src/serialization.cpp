#include "granular/serialization.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "granular/errors.hpp"
#include "granular/matrix_io.hpp"

namespace granular {

using nlohmann::json;

namespace {

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& arr) {
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

json matrix_to_json(const Matrix& m) {
  json obj;
  obj["rows"] = m.rows();
  obj["cols"] = m.cols();
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  obj["data"] = data;  // row-major
  return obj;
}

Matrix matrix_from_json(const json& obj) {
  const Eigen::Index rows = obj.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = obj.at("cols").get<Eigen::Index>();
  const json& data = obj.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("matrix payload size mismatch");
  Matrix m(rows, cols);
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[i++].get<double>();
  return m;
}

json projector_to_json_obj(const Projector& projector) {
  json obj;
  obj["schema"] = "projector/1";
  obj["mean"] = vector_to_json(projector.mean);
  obj["basis"] = matrix_to_json(projector.basis);
  obj["eigenvalues"] = vector_to_json(projector.eigenvalues);
  obj["whitening_scales"] = vector_to_json(projector.whitening_scales);
  return obj;
}

Projector projector_from_json_obj(const json& obj) {
  if (obj.at("schema").get<std::string>() != "projector/1")
    throw ParseError("unsupported projector schema");
  Projector projector;
  projector.mean = vector_from_json(obj.at("mean"));
  projector.basis = matrix_from_json(obj.at("basis"));
  projector.eigenvalues = vector_from_json(obj.at("eigenvalues"));
  projector.whitening_scales = vector_from_json(obj.at("whitening_scales"));
  return projector;
}

}  // namespace

namespace {

const char* rule_kind_name(SelectionRule::Kind kind) {
  switch (kind) {
    case SelectionRule::Kind::Fixed: return "fixed";
    case SelectionRule::Kind::Kaiser: return "kaiser";
    case SelectionRule::Kind::BrokenStick: return "broken_stick";
    case SelectionRule::Kind::Condition: return "condition";
  }
  return "?";
}

}  // namespace

std::string projector_to_json(const Projector& projector,
                              const WeightScheme* scheme,
                              const SelectionRule* rule) {
  json obj = projector_to_json_obj(projector);
  if (scheme) {
    json s;
    s["kind"] = weight_kind_name(scheme->kind);
    s["alpha"] = scheme->alpha;
    s["beta"] = scheme->beta;
    s["gamma"] = scheme->gamma;
    s["k"] = scheme->k;
    obj["scheme"] = s;
  }
  if (rule) {
    json r;
    r["kind"] = rule_kind_name(rule->kind);
    r["components"] = rule->components;
    r["kappa"] = rule->kappa;
    obj["selection"] = r;
  }
  return obj.dump(2) + "\n";
}

Projector projector_from_json(const std::string& json_text) {
  return projector_from_json_obj(json::parse(json_text));
}

std::string corrector_to_json(const CorrectorModel& model) {
  json obj;
  obj["schema"] = "corrector-model/1";
  obj["projection"] = projector_to_json_obj(model.projection);
  obj["cov_x"] = matrix_to_json(model.cov_x);
  obj["clusters"] = matrix_to_json(model.clusters);
  obj["counts"] = model.counts;
  json moments = json::array();
  for (const Matrix& m : model.second_moments) moments.push_back(matrix_to_json(m));
  obj["second_moments"] = moments;
  obj["discriminants"] = matrix_to_json(model.discriminants);
  obj["thresholds"] = vector_to_json(model.thresholds);
  obj["y_above_threshold"] = model.y_above_threshold;
  obj["seed"] = model.seed;
  return obj.dump(2) + "\n";
}

CorrectorModel corrector_from_json(const std::string& json_text) {
  const json obj = json::parse(json_text);
  if (obj.at("schema").get<std::string>() != "corrector-model/1")
    throw ParseError("unsupported corrector schema");
  CorrectorModel model;
  model.projection = projector_from_json_obj(obj.at("projection"));
  model.cov_x = matrix_from_json(obj.at("cov_x"));
  model.clusters = matrix_from_json(obj.at("clusters"));
  model.counts = obj.at("counts").get<std::vector<std::size_t>>();
  for (const json& m : obj.at("second_moments"))
    model.second_moments.push_back(matrix_from_json(m));
  model.discriminants = matrix_from_json(obj.at("discriminants"));
  model.thresholds = vector_from_json(obj.at("thresholds"));
  model.y_above_threshold = obj.at("y_above_threshold").get<bool>();
  model.seed = obj.at("seed").get<std::uint64_t>();
  return model;
}

std::string report_to_json(const SeparabilityReport& report) {
  json obj;
  obj["schema"] = "separability-report/1";
  obj["scenario"] = report.scenario;
  obj["trials"] = report.trials;
  obj["successes"] = report.successes;
  obj["empirical_frequency"] = report.empirical_frequency;
  if (report.theoretical_lower_bound)
    obj["theoretical_lower_bound"] = *report.theoretical_lower_bound;
  else
    obj["theoretical_lower_bound"] = nullptr;
  obj["confidence_radius"] = report.confidence_radius;
  obj["seed"] = report.seed;
  return obj.dump(2) + "\n";
}

SeparabilityReport report_from_json(const std::string& json_text) {
  const json obj = json::parse(json_text);
  if (obj.at("schema").get<std::string>() != "separability-report/1")
    throw ParseError("unsupported report schema");
  SeparabilityReport report;
  report.scenario = obj.at("scenario").get<std::string>();
  report.trials = obj.at("trials").get<std::uint64_t>();
  report.successes = obj.at("successes").get<std::uint64_t>();
  report.empirical_frequency = obj.at("empirical_frequency").get<double>();
  if (!obj.at("theoretical_lower_bound").is_null())
    report.theoretical_lower_bound =
        obj.at("theoretical_lower_bound").get<double>();
  report.confidence_radius = obj.at("confidence_radius").get<double>();
  report.seed = obj.at("seed").get<std::uint64_t>();
  return report;
}

void save_text(const std::filesystem::path& path, const std::string& content) {
  atomic_write_text(path, content);
}

std::string load_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace granular

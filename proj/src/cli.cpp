#include "granular/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "granular/bounds.hpp"
#include "granular/corrector.hpp"
#include "granular/errors.hpp"
#include "granular/matrix_io.hpp"
#include "granular/monte_carlo.hpp"
#include "granular/preprocessing.hpp"
#include "granular/serialization.hpp"
#include "granular/universe.hpp"
#include "granular/weighted_pca.hpp"

namespace granular {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("GRANULAR_OUTPUT_DIR"))
      return fs::path(dir) / p;
  }
  return p;
}

std::size_t env_threads(std::size_t flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("GRANULAR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

std::optional<ColumnRef> column_ref(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  const unsigned long idx = std::strtoul(text.c_str(), &end, 10);
  if (end == text.c_str() + text.size())
    return ColumnRef(static_cast<std::size_t>(idx));
  return ColumnRef(text);
}

DataMatrix load_with_columns(const std::string& path, const std::string& label,
                             const std::string& domain, bool binary) {
  LoadOptions options;
  options.format = binary ? MatrixFormat::Binary : MatrixFormat::Csv;
  options.label_column = column_ref(label);
  options.domain_column = column_ref(domain);
  return load_matrix(path, options);
}

SelectionRule make_rule(const std::string& name, std::size_t components,
                        double kappa) {
  if (name == "fixed") return SelectionRule::fixed(components);
  if (name == "kaiser") return SelectionRule::kaiser();
  if (name == "broken-stick") return SelectionRule::broken_stick();
  if (name == "condition") return SelectionRule::condition(kappa);
  throw ParameterOutOfRange("unknown selection rule '" + name + "'");
}

std::vector<double> make_caps(double lead, double decay, std::size_t minimum,
                              double must_reach) {
  std::size_t count = minimum;
  double value = lead;
  std::size_t needed = 0;
  while (value * decay > 0.0 && value >= must_reach && needed < 100000) {
    value *= decay;
    ++needed;
  }
  count = std::max(count, needed + 1);
  return geometric_caps(lead, decay, count);
}

std::string join_args(const std::vector<std::string>& argv) {
  std::string all;
  for (const auto& a : argv) {
    if (!all.empty()) all += ' ';
    all += a;
  }
  return all;
}

// --- preprocess ------------------------------------------------------------

struct PreprocessArgs {
  std::string input, output, report_path, gram_output, label, domain;
  std::string length_mode = "unit";
  bool no_centralize = false, no_standardize = false, binary = false;
};

void run_preprocess(const PreprocessArgs& args) {
  const DataMatrix data =
      load_with_columns(args.input, args.label, args.domain, args.binary);

  PipelineOptions options;
  options.centralize = !args.no_centralize;
  options.standardize = !args.no_standardize;
  if (args.length_mode == "unit") options.length_mode = LengthMode::Unit;
  else if (args.length_mode == "mean") options.length_mode = LengthMode::MeanLength;
  else if (args.length_mode == "none") options.length_mode = LengthMode::None;
  else throw ParameterOutOfRange("length mode must be unit|mean|none");

  auto [transformed, report] = center_standardize(data, options);
  SaveOptions save;
  save_matrix(resolve_output(args.output), transformed, save);

  if (!args.report_path.empty()) {
    const RegimeReport regime = classify_regime(
        static_cast<std::size_t>(data.cols()),
        static_cast<std::size_t>(data.rows()));
    json obj;
    obj["schema"] = "pipeline-report/1";
    obj["rows"] = data.rows();
    obj["columns"] = data.cols();
    obj["regime"] = regime_name(regime.regime);
    obj["donoho_boundary"] = regime.donoho_boundary;
    obj["postclassical_boundary"] = regime.postclassical_boundary;
    json mean = json::array(), scales = json::array(), norms = json::array();
    for (Eigen::Index i = 0; i < report.mean.size(); ++i) mean.push_back(report.mean[i]);
    for (Eigen::Index i = 0; i < report.scales.size(); ++i) scales.push_back(report.scales[i]);
    for (Eigen::Index i = 0; i < report.row_norms.size(); ++i) norms.push_back(report.row_norms[i]);
    obj["mean"] = mean;
    obj["scales"] = scales;
    obj["row_norms"] = norms;
    obj["dropped_columns"] = report.dropped_columns;
    save_text(resolve_output(args.report_path), obj.dump(2) + "\n");
  }
  if (!args.gram_output.empty()) {
    const DataMatrix gram = correlation_transform(
        transformed, nullptr, options.length_mode == LengthMode::Unit);
    save_matrix(resolve_output(args.gram_output), gram, {});
  }
  std::cout << "preprocess: " << data.rows() << " rows, kept "
            << transformed.cols() << " of " << data.cols() << " columns\n";
}

// --- pca / dapca -----------------------------------------------------------

struct PcaArgs {
  std::string input, output, scores, label, domain, scheme = "classical";
  std::string rule = "condition";
  std::size_t components = 2;
  double kappa = 10.0, alpha = 1.0, beta = 1.0;
  bool binary = false;
};

void run_pca(const PcaArgs& args) {
  const DataMatrix data =
      load_with_columns(args.input, args.label, args.domain, args.binary);
  const WeightKind kind = weight_kind_from_name(args.scheme);
  if (kind == WeightKind::Dapca)
    throw ParameterOutOfRange("use the dapca subcommand for dapca");
  WeightScheme scheme;
  scheme.kind = kind;
  scheme.alpha = args.alpha;
  scheme.beta = args.beta;
  const SelectionRule rule = make_rule(args.rule, args.components, args.kappa);
  const Projector projector = weighted_pca(data, scheme, rule);
  save_text(resolve_output(args.output),
            projector_to_json(projector, &scheme, &rule));
  if (!args.scores.empty()) {
    DataMatrix projected;
    projected.values = projector.project_rows(data.values);
    projected.labels = data.labels;
    projected.domains = data.domains;
    save_matrix(resolve_output(args.scores), projected, {});
  }
  std::cout << "pca: kept " << projector.components() << " components, H = "
            << format_double(scatter_value(projector, data, scheme)) << "\n";
}

struct DapcaArgs {
  std::string source, target, output, history, label = "label", domain;
  std::string rule = "fixed";
  std::size_t components = 2, neighbors = 3, max_iter = 100;
  double kappa = 10.0, alpha = 1.0, beta = 1.0, gamma = 1.0;
  bool binary = false;
};

void run_dapca(const DapcaArgs& args) {
  const DataMatrix source =
      load_with_columns(args.source, args.label, args.domain, args.binary);
  const DataMatrix target =
      load_with_columns(args.target, "", args.domain, args.binary);
  const WeightScheme scheme =
      WeightScheme::dapca(args.alpha, args.beta, args.gamma, args.neighbors);
  const SelectionRule rule = make_rule(args.rule, args.components, args.kappa);
  const DapcaResult result =
      iterative_dapca(source, target, scheme, rule, args.max_iter);
  save_text(resolve_output(args.output),
            projector_to_json(result.projector, &scheme, &rule));
  if (!args.history.empty()) {
    std::ostringstream out;
    out << "iteration,H\n";
    for (std::size_t i = 0; i < result.history.size(); ++i)
      out << (i + 1) << ',' << format_double(result.history[i]) << "\n";
    save_text(resolve_output(args.history), out.str());
  }
  std::cout << "dapca: " << result.iterations << " iterations, H = "
            << format_double(result.history.back()) << ", components = "
            << result.projector.components() << "\n";
}

// --- sep -------------------------------------------------------------------

struct SepBoundArgs {
  std::string theorem = "1";
  std::size_t n = 100, N = 20;
  double alpha = 0.8, r = 0.9, C = 1.0, delta = 0.01, R = 0.1;
  double epsilon = 0.4, varsigma = 0.3, crho = 1.0;
  double cap_lead = 0.9, cap_decay = 0.8;
  std::string output;
};

void run_sep_bound(const SepBoundArgs& a) {
  std::ostringstream out;
  if (a.theorem == "1") {
    out << theorem1_bound(a.n, a.alpha, a.r, a.C, a.delta).format() << "\n";
  } else if (a.theorem == "1c") {
    out << corollary1_bound(a.n, a.alpha, a.r, a.C, a.delta).format() << "\n";
  } else if (a.theorem == "2") {
    const double xi = granule_xi(a.alpha, a.R);
    if (xi >= 1.0)
      std::cerr << "warning: xi = " << format_double(xi, 6)
                << " >= 1; granule separation bounds do not apply\n";
    out << theorem2_bound(a.n, a.alpha, a.R, a.r, a.C, a.delta).format()
        << "\n";
  } else if (a.theorem == "2c") {
    out << corollary2_bound(a.n, a.alpha, a.R, a.r, a.C, a.delta).format()
        << "\n";
  } else if (a.theorem == "cap") {
    out << format_double(lemma1_cap_bound(a.n, a.epsilon, a.crho), 6) << "\n";
  } else if (a.theorem == "3" || a.theorem == "4") {
    const auto caps = make_caps(a.cap_lead, a.cap_decay, 1,
                                a.epsilon / (1.0 + std::sqrt(2.0)));
    const TailBound bound =
        a.theorem == "3"
            ? theorem3_probability(a.n, a.N, caps, a.epsilon, a.varsigma,
                                   a.crho)
            : theorem4_probability(a.n, a.N, caps, a.epsilon, a.varsigma,
                                   a.crho);
    out << "raw=" << format_double(bound.raw, 6)
        << " clamped=" << format_double(bound.clamped, 6) << " k=" << bound.k
        << "\n";
  } else {
    throw ParameterOutOfRange("theorem must be one of 1, 1c, 2, 2c, 3, 4, cap");
  }
  std::cout << out.str();
  if (!a.output.empty()) save_text(resolve_output(a.output), out.str());
}

void run_sep_tables(int table, const std::string& output) {
  std::ostringstream out;
  out << "n,bound\n";
  if (table == 1) {
    for (std::size_t n : {10, 25, 50, 100, 150, 200})
      out << n << ',' << theorem1_bound(n, 0.8, 0.9, 1.0, 0.01).format() << "\n";
  } else if (table == 2) {
    for (std::size_t n : {10, 25, 50, 100, 150, 200})
      out << n << ',' << corollary1_bound(n, 0.8, 0.9, 1.0, 0.01).format()
          << "\n";
  } else if (table == 3) {
    for (std::size_t n : {25, 50, 100, 150, 200})
      out << n << ','
          << theorem2_bound(n, 0.9, 0.1, 0.9, 1.0, 0.01).format() << "\n";
  } else {
    throw ParameterOutOfRange("table must be 1, 2 or 3");
  }
  std::cout << out.str();
  if (!output.empty()) save_text(resolve_output(output), out.str());
}

struct SepMcArgs {
  std::string scenario = "point_vs_points";
  std::size_t n = 100, set_size = 1000;
  double alpha = 0.8, radius = 0.1, epsilon = 0.4, varsigma = 0.3;
  double C = 1.0, r = 1.0;
  double cap_lead = 0.9, cap_decay = 0.8;
  std::uint64_t trials = 1000, seed = 0;
  std::size_t threads = 0;
  std::string output;
};

void run_sep_mc(const SepMcArgs& a) {
  McParams params;
  params.n = a.n;
  params.set_size = a.set_size;
  params.alpha = a.alpha;
  params.granule_radius = a.radius;
  params.epsilon = a.epsilon;
  params.varsigma = a.varsigma;
  params.density_C = a.C;
  params.density_r = a.r;
  const McScenario scenario = scenario_from_name(a.scenario);
  if (scenario == McScenario::PointVsEllipsoids ||
      scenario == McScenario::RandomGranuleVsEllipsoids ||
      scenario == McScenario::LogconcaveGranules)
    params.cap_sequence = make_caps(a.cap_lead, a.cap_decay, a.n,
                                    a.epsilon / (1.0 + std::sqrt(2.0)));
  const SeparabilityReport report = monte_carlo_separation(
      scenario, params, a.trials, a.seed, env_threads(a.threads));
  const std::string text = report_to_json(report);
  std::cout << text;
  if (!a.output.empty()) save_text(resolve_output(a.output), text);
}

// --- universe --------------------------------------------------------------

struct UniverseArgs {
  std::string kind = "clusters", output, config;
  std::size_t n = 10, count = 10, classes = 2, clusters_per_class = 1,
              points = 100;
  double spread = 0.1, radius = 0.1, C = 1.0, r = 1.0;
  double cap_lead = 0.9, cap_decay = 0.8;
  std::string shape = "ellipsoid";
  std::uint64_t seed = 0;
};

json granules_to_json(const std::vector<Ellipsoid>& granules,
                      std::uint64_t seed) {
  json obj;
  obj["schema"] = "granules/1";
  obj["seed"] = seed;
  json list = json::array();
  for (const Ellipsoid& g : granules) {
    json item;
    json center = json::array();
    for (Eigen::Index i = 0; i < g.center.size(); ++i)
      center.push_back(g.center[i]);
    item["center"] = center;
    json semi = json::array();
    for (Eigen::Index i = 0; i < g.semi_axes.size(); ++i)
      semi.push_back(g.semi_axes[i]);
    item["semi_axes"] = semi;
    item["residual_bound"] = g.residual_bound;
    json axes = json::array();
    for (Eigen::Index r = 0; r < g.axes.rows(); ++r)
      for (Eigen::Index c = 0; c < g.axes.cols(); ++c)
        axes.push_back(g.axes(r, c));
    item["axes"] = axes;  // row-major, listed_axes x dim
    list.push_back(item);
  }
  obj["granules"] = list;
  return obj;
}

GranuleUniverseSpec spec_from_json(const json& obj) {
  GranuleUniverseSpec spec;
  spec.n = obj.at("n").get<std::size_t>();
  spec.count = obj.at("count").get<std::size_t>();
  const std::string shape = obj.value("shape", "sphere");
  if (shape == "sphere") spec.shape = GranuleUniverseSpec::Shape::Sphere;
  else if (shape == "ellipsoid") spec.shape = GranuleUniverseSpec::Shape::Ellipsoid;
  else if (shape == "gaussian") spec.shape = GranuleUniverseSpec::Shape::Gaussian;
  else throw ParameterOutOfRange("shape must be sphere|ellipsoid|gaussian");
  spec.sphere_radius = obj.value("radius", 0.1);
  if (obj.contains("cap_sequence"))
    spec.cap_sequence = obj.at("cap_sequence").get<std::vector<double>>();
  else
    spec.cap_sequence =
        geometric_caps(obj.value("cap_lead", 0.9), obj.value("cap_decay", 0.8),
                       spec.n);
  const std::string law = obj.value("center_law", "uniform_ball");
  if (law == "uniform_ball")
    spec.center_law = GranuleUniverseSpec::CenterLaw::UniformBall;
  else if (law == "bounded_ratio")
    spec.center_law = GranuleUniverseSpec::CenterLaw::BoundedRatio;
  else throw ParameterOutOfRange("center_law must be uniform_ball|bounded_ratio");
  spec.density_C = obj.value("C", 1.0);
  spec.density_r = obj.value("r", 1.0);
  spec.seed = obj.value("seed", std::uint64_t{0});
  return spec;
}

void run_universe(const UniverseArgs& a) {
  if (a.kind == "clusters") {
    const DataMatrix data = generate_labeled_clusters(
        a.n, a.classes, a.clusters_per_class, a.points, a.spread, a.seed);
    SaveOptions save;
    save.comment = "master_seed=" + std::to_string(a.seed);
    save_matrix(resolve_output(a.output), data, save);
    std::cout << "universe: " << data.rows() << " labeled points in dimension "
              << a.n << "\n";
    return;
  }
  if (a.kind == "granules") {
    GranuleUniverseSpec spec;
    if (!a.config.empty()) {
      spec = spec_from_json(json::parse(load_text(a.config)));
    } else {
      spec.n = a.n;
      spec.count = a.count;
      if (a.shape == "sphere") spec.shape = GranuleUniverseSpec::Shape::Sphere;
      else if (a.shape == "ellipsoid") spec.shape = GranuleUniverseSpec::Shape::Ellipsoid;
      else if (a.shape == "gaussian") spec.shape = GranuleUniverseSpec::Shape::Gaussian;
      else throw ParameterOutOfRange("shape must be sphere|ellipsoid|gaussian");
      spec.sphere_radius = a.radius;
      spec.cap_sequence = geometric_caps(a.cap_lead, a.cap_decay, a.n);
      spec.density_C = a.C;
      spec.density_r = a.r;
      spec.seed = a.seed;
    }
    const auto granules = generate_granules(spec);
    save_text(resolve_output(a.output),
              granules_to_json(granules, spec.seed).dump(2) + "\n");
    std::cout << "universe: " << granules.size() << " granules in dimension "
              << spec.n << "\n";
    return;
  }
  if (a.kind == "ball" || a.kind == "bounded") {
    DataMatrix data;
    data.values = a.kind == "ball"
                      ? sample_uniform_ball(a.n, a.count, a.seed)
                      : sample_bounded_ratio(a.n, a.count, a.C, a.r, a.seed);
    SaveOptions save;
    save.comment = "master_seed=" + std::to_string(a.seed);
    save_matrix(resolve_output(a.output), data, save);
    std::cout << "universe: " << data.rows() << " points in dimension " << a.n
              << "\n";
    return;
  }
  throw ParameterOutOfRange("kind must be clusters|granules|ball|bounded");
}

// --- corrector ---------------------------------------------------------------

struct CorrectorTrainArgs {
  std::string x_path, y_path, output;
  std::size_t k = 1, components = 0;
  std::string rule = "condition";
  double kappa = 10.0, theta = 0.0, specificity = -1.0;
  std::uint64_t seed = 0;
  bool binary = false;
};

void run_corrector_train(const CorrectorTrainArgs& a) {
  const DataMatrix X = load_with_columns(a.x_path, "", "", a.binary);
  const DataMatrix Y = load_with_columns(a.y_path, "", "", a.binary);
  const SelectionRule rule = a.components > 0
                                 ? SelectionRule::fixed(a.components)
                                 : make_rule(a.rule, a.components, a.kappa);
  const ThresholdSpec theta = a.specificity >= 0.0
                                  ? ThresholdSpec::specificity(a.specificity)
                                  : ThresholdSpec::global(a.theta);
  const CorrectorModel model =
      train_corrector(X, Y, a.k, rule, theta, a.seed);
  save_text(resolve_output(a.output), corrector_to_json(model));
  std::cout << "corrector: trained " << model.cluster_count()
            << " clusters over " << model.reduced_dim() << " components\n";
}

void run_corrector_decide(const std::string& model_path,
                          const std::string& input, const std::string& output,
                          bool binary) {
  const CorrectorModel model = corrector_from_json(load_text(model_path));
  const DataMatrix points = load_with_columns(input, "", "", binary);
  std::ostringstream out;
  out << "cluster,score,association\n";
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const Decision d = decide(model, points.values.row(i));
    out << d.cluster << ',' << format_double(d.score) << ','
        << (d.association == Association::NormalSetY ? "normal" : "error")
        << "\n";
  }
  std::cout << out.str();
  if (!output.empty()) save_text(resolve_output(output), out.str());
}

void run_corrector_update(const std::string& model_path,
                          const std::string& errors, const std::string& output,
                          bool binary) {
  CorrectorModel model = corrector_from_json(load_text(model_path));
  const DataMatrix points = load_with_columns(errors, "", "", binary);
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    online_update(model, points.values.row(i));
  save_text(resolve_output(output), corrector_to_json(model));
  std::cout << "corrector: absorbed " << points.rows() << " new errors\n";
}

void run_corrector_roc(const std::string& model_path, const std::string& x_path,
                       const std::string& y_path, std::size_t grid,
                       const std::string& output, bool binary) {
  const CorrectorModel model = corrector_from_json(load_text(model_path));
  const DataMatrix X = load_with_columns(x_path, "", "", binary);
  const DataMatrix Y = load_with_columns(y_path, "", "", binary);
  const RocCurve curve = roc_sweep(model, X, Y, grid);
  std::ostringstream out;
  out << "fpr,tpr,offset\n";
  for (const RocPoint& p : curve.points)
    out << format_double(p.false_positive_rate) << ','
        << format_double(p.true_positive_rate) << ','
        << format_double(p.offset) << "\n";
  std::cout << "auc=" << format_double(curve.auc, 6) << "\n";
  if (!output.empty()) save_text(resolve_output(output), out.str());
}

}  // namespace

int run_cli(const std::vector<std::string>& argv) {
  CLI::App app{"granular: weighted-PCA preprocessing, high-dimensional "
               "separability analysis, and few-shot correctors"};
  app.require_subcommand(1);

  // preprocess
  PreprocessArgs pre;
  auto* cmd_pre = app.add_subcommand("preprocess",
                                     "center/standardize a data matrix");
  cmd_pre->add_option("--input", pre.input)->required();
  cmd_pre->add_option("--output", pre.output)->required();
  cmd_pre->add_option("--report", pre.report_path);
  cmd_pre->add_option("--gram-output", pre.gram_output,
                      "also emit the cross-correlation Gram matrix");
  cmd_pre->add_option("--label-col", pre.label);
  cmd_pre->add_option("--domain-col", pre.domain);
  cmd_pre->add_option("--length-mode", pre.length_mode, "unit|mean|none");
  cmd_pre->add_flag("--no-centralize", pre.no_centralize);
  cmd_pre->add_flag("--no-standardize", pre.no_standardize);
  cmd_pre->add_flag("--binary", pre.binary);

  // pca
  PcaArgs pca;
  auto* cmd_pca = app.add_subcommand("pca", "weighted PCA projector");
  cmd_pca->add_option("--input", pca.input)->required();
  cmd_pca->add_option("--output", pca.output)->required();
  cmd_pca->add_option("--scores", pca.scores);
  cmd_pca->add_option("--scheme", pca.scheme,
                      "classical|supervised|semisupervised|tca");
  cmd_pca->add_option("--alpha", pca.alpha);
  cmd_pca->add_option("--beta", pca.beta);
  cmd_pca->add_option("--rule", pca.rule, "fixed|kaiser|broken-stick|condition");
  cmd_pca->add_option("--components", pca.components);
  cmd_pca->add_option("--kappa", pca.kappa);
  cmd_pca->add_option("--label-col", pca.label);
  cmd_pca->add_option("--domain-col", pca.domain);
  cmd_pca->add_flag("--binary", pca.binary);

  // dapca
  DapcaArgs dapca;
  auto* cmd_dapca = app.add_subcommand("dapca", "iterative domain-adaptation PCA");
  cmd_dapca->add_option("--source", dapca.source)->required();
  cmd_dapca->add_option("--target", dapca.target)->required();
  cmd_dapca->add_option("--output", dapca.output)->required();
  cmd_dapca->add_option("--history", dapca.history);
  cmd_dapca->add_option("--label-col", dapca.label);
  cmd_dapca->add_option("--alpha", dapca.alpha);
  cmd_dapca->add_option("--beta", dapca.beta);
  cmd_dapca->add_option("--gamma", dapca.gamma);
  cmd_dapca->add_option("--neighbors", dapca.neighbors);
  cmd_dapca->add_option("--rule", dapca.rule);
  cmd_dapca->add_option("--components", dapca.components);
  cmd_dapca->add_option("--kappa", dapca.kappa);
  cmd_dapca->add_option("--max-iter", dapca.max_iter);
  cmd_dapca->add_flag("--binary", dapca.binary);

  // sep
  auto* cmd_sep = app.add_subcommand("sep", "separability bounds and trials");
  cmd_sep->require_subcommand(1);

  SepBoundArgs bound;
  auto* cmd_bound = cmd_sep->add_subcommand("bound", "closed-form bounds");
  cmd_bound->add_option("--theorem", bound.theorem, "1|1c|2|2c|3|4|cap");
  cmd_bound->add_option("--n", bound.n);
  cmd_bound->add_option("--N", bound.N);
  cmd_bound->add_option("--alpha", bound.alpha);
  cmd_bound->add_option("--r", bound.r);
  cmd_bound->add_option("--C", bound.C);
  cmd_bound->add_option("--delta", bound.delta);
  cmd_bound->add_option("--R", bound.R);
  cmd_bound->add_option("--epsilon", bound.epsilon);
  cmd_bound->add_option("--varsigma", bound.varsigma);
  cmd_bound->add_option("--crho", bound.crho);
  cmd_bound->add_option("--cap-lead", bound.cap_lead);
  cmd_bound->add_option("--cap-decay", bound.cap_decay);
  cmd_bound->add_option("--output", bound.output);

  int table = 1;
  std::string table_output;
  auto* cmd_tables = cmd_sep->add_subcommand("tables", "reference bound tables");
  cmd_tables->add_option("--table", table, "1|2|3")->required();
  cmd_tables->add_option("--output", table_output);

  SepMcArgs mc;
  auto* cmd_mc = cmd_sep->add_subcommand("mc", "Monte Carlo verification");
  cmd_mc->add_option("--scenario", mc.scenario);
  cmd_mc->add_option("--n", mc.n);
  cmd_mc->add_option("--set-size", mc.set_size);
  cmd_mc->add_option("--alpha", mc.alpha);
  cmd_mc->add_option("--radius", mc.radius);
  cmd_mc->add_option("--epsilon", mc.epsilon);
  cmd_mc->add_option("--varsigma", mc.varsigma);
  cmd_mc->add_option("--C", mc.C);
  cmd_mc->add_option("--r", mc.r);
  cmd_mc->add_option("--cap-lead", mc.cap_lead);
  cmd_mc->add_option("--cap-decay", mc.cap_decay);
  cmd_mc->add_option("--trials", mc.trials);
  cmd_mc->add_option("--seed", mc.seed);
  cmd_mc->add_option("--threads", mc.threads);
  cmd_mc->add_option("--output", mc.output);

  // universe
  UniverseArgs uni;
  auto* cmd_uni = app.add_subcommand("universe", "synthetic data generators");
  cmd_uni->require_subcommand(1);
  auto* cmd_gen = cmd_uni->add_subcommand("gen", "generate a dataset");
  cmd_gen->add_option("--kind", uni.kind, "clusters|granules|ball|bounded");
  cmd_gen->add_option("--config", uni.config, "JSON universe spec");
  cmd_gen->add_option("--output", uni.output)->required();
  cmd_gen->add_option("--n", uni.n);
  cmd_gen->add_option("--count", uni.count);
  cmd_gen->add_option("--classes", uni.classes);
  cmd_gen->add_option("--clusters-per-class", uni.clusters_per_class);
  cmd_gen->add_option("--points", uni.points);
  cmd_gen->add_option("--spread", uni.spread);
  cmd_gen->add_option("--shape", uni.shape);
  cmd_gen->add_option("--radius", uni.radius);
  cmd_gen->add_option("--C", uni.C);
  cmd_gen->add_option("--r", uni.r);
  cmd_gen->add_option("--cap-lead", uni.cap_lead);
  cmd_gen->add_option("--cap-decay", uni.cap_decay);
  cmd_gen->add_option("--seed", uni.seed);

  // corrector
  auto* cmd_cor = app.add_subcommand("corrector", "few-shot corrector");
  cmd_cor->require_subcommand(1);

  CorrectorTrainArgs train;
  auto* cmd_train = cmd_cor->add_subcommand("train");
  cmd_train->add_option("--x", train.x_path, "error/new-class set")->required();
  cmd_train->add_option("--y", train.y_path, "normal set")->required();
  cmd_train->add_option("--output", train.output)->required();
  cmd_train->add_option("--k", train.k);
  cmd_train->add_option("--components", train.components,
                        "fixed component count (overrides --rule)");
  cmd_train->add_option("--rule", train.rule);
  cmd_train->add_option("--kappa", train.kappa);
  cmd_train->add_option("--theta", train.theta);
  cmd_train->add_option("--specificity", train.specificity,
                        "calibrate thresholds to this Y-retention rate");
  cmd_train->add_option("--seed", train.seed);
  cmd_train->add_flag("--binary", train.binary);

  std::string decide_model, decide_input, decide_output;
  bool decide_binary = false;
  auto* cmd_decide = cmd_cor->add_subcommand("decide");
  cmd_decide->add_option("--model", decide_model)->required();
  cmd_decide->add_option("--input", decide_input)->required();
  cmd_decide->add_option("--output", decide_output);
  cmd_decide->add_flag("--binary", decide_binary);

  std::string update_model, update_errors, update_output;
  bool update_binary = false;
  auto* cmd_update = cmd_cor->add_subcommand("update");
  cmd_update->add_option("--model", update_model)->required();
  cmd_update->add_option("--errors", update_errors)->required();
  cmd_update->add_option("--output", update_output)->required();
  cmd_update->add_flag("--binary", update_binary);

  std::string roc_model, roc_x, roc_y, roc_output;
  std::size_t roc_grid = 256;
  bool roc_binary = false;
  auto* cmd_roc = cmd_cor->add_subcommand("roc");
  cmd_roc->add_option("--model", roc_model)->required();
  cmd_roc->add_option("--x", roc_x)->required();
  cmd_roc->add_option("--y", roc_y)->required();
  cmd_roc->add_option("--grid", roc_grid);
  cmd_roc->add_option("--output", roc_output);
  cmd_roc->add_flag("--binary", roc_binary);

  std::vector<std::string> args = argv;
  std::reverse(args.begin(), args.end());  // CLI11 wants reversed argv
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_pre->parsed()) run_preprocess(pre);
    else if (cmd_pca->parsed()) run_pca(pca);
    else if (cmd_dapca->parsed()) run_dapca(dapca);
    else if (cmd_sep->parsed()) {
      if (cmd_bound->parsed()) run_sep_bound(bound);
      else if (cmd_tables->parsed()) run_sep_tables(table, table_output);
      else if (cmd_mc->parsed()) run_sep_mc(mc);
    } else if (cmd_uni->parsed()) {
      run_universe(uni);
    } else if (cmd_cor->parsed()) {
      if (cmd_train->parsed()) run_corrector_train(train);
      else if (cmd_decide->parsed())
        run_corrector_decide(decide_model, decide_input, decide_output,
                             decide_binary);
      else if (cmd_update->parsed())
        run_corrector_update(update_model, update_errors, update_output,
                             update_binary);
      else if (cmd_roc->parsed())
        run_corrector_roc(roc_model, roc_x, roc_y, roc_grid, roc_output,
                          roc_binary);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << " (command: " << join_args(argv)
              << ")\n";
    return 2;
  }
  return 0;
}

}  // namespace granular

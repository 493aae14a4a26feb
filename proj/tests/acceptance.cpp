// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each, nonzero exit if anything fails. Run through ctest or directly:
//   ./build/tests/acceptance

#include <chrono>
#include <unistd.h>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "granular/bounds.hpp"
#include "granular/cli.hpp"
#include "granular/corrector.hpp"
#include "granular/linalg.hpp"
#include "granular/matrix_io.hpp"
#include "granular/monte_carlo.hpp"
#include "granular/rng.hpp"
#include "granular/separability.hpp"
#include "granular/serialization.hpp"
#include "granular/universe.hpp"
#include "granular/weighted_pca.hpp"

using namespace granular;
namespace fs = std::filesystem;

namespace {

int failures = 0;

// The CLI chats on stdout; the acceptance log should stay one line per
// criterion.
struct QuietCout {
  std::streambuf* saved;
  std::ostringstream sink;
  QuietCout() : saved(std::cout.rdbuf(sink.rdbuf())) {}
  ~QuietCout() { std::cout.rdbuf(saved); }
};

int run_cli_quiet(const std::vector<std::string>& args) {
  QuietCout quiet;
  return run_cli(args);
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

struct PrintedEntry {
  std::size_t n;
  double value;
  double ulp;  // one unit of the last printed digit
};

// Published tables were rounded to their printed digits; the granule table
// additionally shows the drift of a growth base rounded to four significant
// digits before exponentiation, hence the per-power allowance.
bool table_matches(const std::vector<PrintedEntry>& printed,
                   const std::vector<double>& computed, double base_drift,
                   std::string& detail) {
  for (std::size_t i = 0; i < printed.size(); ++i) {
    const double allowance =
        printed[i].ulp +
        base_drift * static_cast<double>(printed[i].n) * printed[i].value;
    if (std::abs(computed[i] - printed[i].value) > allowance) {
      std::ostringstream oss;
      oss << "n=" << printed[i].n << " computed " << computed[i]
          << " vs printed " << printed[i].value;
      detail = oss.str();
      return false;
    }
  }
  return true;
}

std::vector<double> parse_table_csv(const fs::path& path) {
  const std::string text = load_text(path);
  std::vector<double> values;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  return values;
}

// ---- criterion 1: closed-form table reproduction through the CLI ----------

void criterion_tables(const fs::path& dir) {
  const auto start = std::chrono::steady_clock::now();
  for (int t : {1, 2, 3})
    run_cli_quiet({"sep", "tables", "--table", std::to_string(t), "--output",
             (dir / ("table" + std::to_string(t) + ".csv")).string()});
  const double seconds = elapsed_seconds(start);

  const std::vector<PrintedEntry> table1 = {
      {10, 0.38, 0.01},     {25, 91.0, 1.0},      {50, 8.28e5, 1e3},
      {100, 6.85e13, 1e11}, {150, 5.68e21, 1e19}, {200, 4.70e29, 1e27}};
  const std::vector<PrintedEntry> table2 = {
      {10, 0.61, 0.01},   {25, 9.5, 0.1},      {50, 910.0, 1.0},
      {100, 8.28e6, 1e4}, {150, 7.53e10, 1e8}, {200, 6.85e14, 1e12}};
  const std::vector<PrintedEntry> table3 = {{25, 0.55, 0.01},
                                            {50, 30.0, 1.0},
                                            {100, 9.26e4, 1e2},
                                            {150, 2.81e8, 1e6},
                                            {200, 8.58e11, 1e9}};
  std::string detail;
  bool ok = true;
  ok = ok && table_matches(table1, parse_table_csv(dir / "table1.csv"), 0.0,
                           detail);
  ok = ok && table_matches(table2, parse_table_csv(dir / "table2.csv"), 0.0,
                           detail);
  ok = ok && table_matches(table3, parse_table_csv(dir / "table3.csv"), 1e-4,
                           detail);
  ok = ok && seconds < 1.0;
  std::ostringstream oss;
  oss << "tables 1-3 reproduce the printed entries (" << seconds << " s)";
  if (!detail.empty()) oss << " -- " << detail;
  report(1, ok, oss.str());
}

// ---- criterion 2: point separation Monte Carlo ----------------------------

void criterion_point_mc() {
  const auto start = std::chrono::steady_clock::now();
  McParams params;
  params.n = 100;
  params.set_size = 10000;
  params.alpha = 0.8;
  const SeparabilityReport rpt = monte_carlo_separation(
      McScenario::PointVsPoints, params, 1000, 20240101);
  const double seconds = elapsed_seconds(start);
  const bool ok = rpt.empirical_frequency >= 0.99 && seconds < 300.0;
  std::ostringstream oss;
  oss << "point vs 10^4 cloud at n=100: frequency " << rpt.empirical_frequency
      << " >= 0.99 (" << seconds << " s)";
  report(2, ok, oss.str());
}

// ---- criterion 3: quasiorthogonality cap bound -----------------------------

void criterion_quasiorthogonality() {
  const auto start = std::chrono::steady_clock::now();
  const double bound = lemma1_cap_bound(50, 0.3, 1.0);
  const std::size_t trials = 100000;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(31415926, stream::kTrial, t);
    const Vector x = sample_uniform_ball_point(50, rng);
    if (x[0] >= 0.3) ++hits;
  }
  const double freq = static_cast<double>(hits) / static_cast<double>(trials);
  const double seconds = elapsed_seconds(start);
  const bool ok =
      freq <= bound && freq >= bound / 50.0 && seconds < 30.0;
  std::ostringstream oss;
  oss << "P((x,e) >= 0.3) at n=50: " << freq << " within (" << bound / 50.0
      << ", " << bound << "] (" << seconds << " s)";
  report(3, ok, oss.str());
}

// ---- criterion 4: ellipsoid support oracle ---------------------------------

double projected_gradient_support(const Vector& x, const Ellipsoid& g) {
  const Eigen::Index k = g.listed_axes();
  const Vector c = g.axes * x;
  const Vector a2 = g.semi_axes.cwiseProduct(g.semi_axes);
  auto project = [&](const Vector& p) {
    if ((p.cwiseQuotient(g.semi_axes)).squaredNorm() <= 1.0) return p;
    double lo = 0.0, hi = 1.0;
    auto level = [&](double lambda) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) {
        const double y = a2[i] * p[i] / (a2[i] + lambda);
        s += y * y / a2[i];
      }
      return s;
    };
    while (level(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (level(mid) > 1.0 ? lo : hi) = mid;
    }
    Vector y(k);
    const double lambda = 0.5 * (lo + hi);
    for (Eigen::Index i = 0; i < k; ++i) y[i] = a2[i] * p[i] / (a2[i] + lambda);
    return y;
  };
  Vector delta = Vector::Zero(k);
  const double step = 0.25 * g.semi_axes.minCoeff() * g.semi_axes.minCoeff() /
                      std::max(c.norm(), 1e-12);
  double value = 0.0;
  for (int it = 0; it < 200000; ++it) {
    const Vector next = project(delta + step * c);
    const double next_value = c.dot(next);
    if (next_value - value <= 1e-15 * std::max(1.0, std::abs(value)) &&
        it > 100)
      break;
    delta = next;
    value = next_value;
  }
  return x.dot(g.center) + value;
}

void criterion_support_oracle() {
  Rng rng(271828);
  bool ok = true;
  std::string detail = "closed form matches projected gradient on 100 cases";
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(19);
    Ellipsoid g;
    g.center = sample_uniform_ball_point(n, rng);
    g.axes = random_orthonormal_rows(n, n, rng);
    Vector semi(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < semi.size(); ++i)
      semi[i] = rng.uniform(0.1, 1.0);
    std::sort(semi.data(), semi.data() + semi.size(), std::greater<>());
    g.semi_axes = semi;

    Vector x(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.gaussian();

    const SupportResult closed = ellipsoid_support_max(x, g);
    const double numeric = projected_gradient_support(x, g);
    if (std::abs(closed.value - numeric) >
        1e-6 * std::max(1.0, std::abs(closed.value))) {
      ok = false;
      detail = "value mismatch at trial " + std::to_string(trial);
    }
    const Vector delta = g.axes * (closed.argmax - g.center);
    const double level = (delta.cwiseQuotient(g.semi_axes)).squaredNorm();
    if (std::abs(level - 1.0) > 1e-10) {
      ok = false;
      detail = "argmax off the boundary at trial " + std::to_string(trial);
    }
  }
  report(4, ok, detail);
}

// ---- criterion 5: granule tail estimates -----------------------------------

void criterion_tail_bounds() {
  const std::vector<double> caps = geometric_caps(0.9, 0.8, 500);
  bool ok = true;
  std::ostringstream oss;
  oss << "bounds over n in {50,100,200,400}:";
  double prev3 = -1e300, prev4 = -1e300;
  for (std::size_t n : {50, 100, 200, 400}) {
    const TailBound t3 = theorem3_probability(n, 20, caps, 0.4, 0.3, 1.0);
    const TailBound t4 = theorem4_probability(n, 20, caps, 0.4, 0.3, 1.0);
    ok = ok && t3.raw >= prev3 && t4.raw >= prev4;
    prev3 = t3.raw;
    prev4 = t4.raw;
    oss << " n=" << n << " (" << t3.raw << ", " << t4.raw << ")";

    for (int which = 3; which <= 4; ++which) {
      const TailBound& bound = which == 3 ? t3 : t4;
      if (bound.clamped <= 0.0) continue;  // vacuous here; nothing to verify
      McParams params;
      params.n = n;
      params.set_size = 20;
      params.epsilon = 0.4;
      params.varsigma = 0.3;
      params.cap_sequence = std::vector<double>(caps.begin(),
                                                caps.begin() + n);
      const SeparabilityReport rpt = monte_carlo_separation(
          which == 3 ? McScenario::PointVsEllipsoids
                     : McScenario::RandomGranuleVsEllipsoids,
          params, 2000, 5150 + n);
      ok = ok && rpt.empirical_frequency >= bound.clamped - 0.02;
    }
  }
  oss << " -- non-decreasing; MC checked wherever a bound is positive";
  report(5, ok, oss.str());
}

// ---- criterion 6: weighted-PCA equivalences --------------------------------

double oracle_pair_weight(const WeightScheme& scheme, const DataMatrix& data,
                          const NeighborMap* neighbors, Eigen::Index i,
                          Eigen::Index j) {
  auto is_target = [&](Eigen::Index r) {
    return data.has_domains() && data.domain(r) == Domain::Target;
  };
  switch (scheme.kind) {
    case WeightKind::Classical:
      return 1.0;
    case WeightKind::Supervised:
      return data.label(i) == data.label(j) ? -scheme.alpha : 1.0;
    case WeightKind::Tca:
    case WeightKind::Semisupervised: {
      const bool li = data.label(i) >= 0, lj = data.label(j) >= 0;
      if (li && lj)
        return data.label(i) == data.label(j) ? -scheme.alpha : 1.0;
      if (!li && !lj) return 1.0;
      return 0.0;
    }
    case WeightKind::Dapca: {
      const bool ti = is_target(i), tj = is_target(j);
      if (ti && tj) return scheme.beta;
      if (!ti && !tj)
        return data.label(i) == data.label(j) ? -scheme.alpha : 1.0;
      const Eigen::Index target = ti ? i : j;
      const Eigen::Index source = ti ? j : i;
      Eigen::Index target_pos = 0, source_pos = 0;
      for (Eigen::Index r = 0; r < target; ++r)
        if (is_target(r)) ++target_pos;
      for (Eigen::Index r = 0; r < source; ++r)
        if (!is_target(r)) ++source_pos;
      const auto& list = (*neighbors)[static_cast<std::size_t>(target_pos)];
      for (std::size_t s : list)
        if (s == static_cast<std::size_t>(source_pos)) return -scheme.gamma;
      return 0.0;
    }
  }
  return 0.0;
}

void criterion_weighted_pca() {
  bool ok = true;
  std::string detail;

  // classical weights recover the covariance eigenspace
  Rng rng(606);
  DataMatrix data;
  data.values.resize(200, 10);
  for (Eigen::Index i = 0; i < 200; ++i)
    for (Eigen::Index j = 0; j < 10; ++j)
      data.values(i, j) = rng.gaussian() * (1.0 + 0.4 * static_cast<double>(j));
  data.values.rowwise() -= data.values.colwise().mean().eval();
  const Matrix qw_classical = build_qw(data, WeightScheme::classical());
  const Matrix cov = data.values.transpose() * data.values / 199.0;
  const double angle = max_principal_angle(
      eigen_select(qw_classical, SelectionRule::fixed(4)).basis,
      eigen_select(cov, SelectionRule::fixed(4)).basis);
  if (angle > 1e-6) {
    ok = false;
    detail = "principal angle " + std::to_string(angle);
  }

  // every scheme matches the O(N^2 d^2) double sum
  std::vector<int> labels(200);
  std::vector<Domain> domains(200, Domain::Source);
  for (std::size_t i = 0; i < 200; ++i) {
    labels[i] = static_cast<int>(rng.uniform_index(3));
    if (rng.uniform01() < 0.35) {
      domains[i] = Domain::Target;
      labels[i] = kUnlabeled;
    }
  }
  for (WeightKind kind :
       {WeightKind::Classical, WeightKind::Supervised,
        WeightKind::Semisupervised, WeightKind::Tca, WeightKind::Dapca}) {
    DataMatrix case_data = data;
    case_data.labels = labels;
    if (kind == WeightKind::Supervised)
      for (auto& l : *case_data.labels)
        if (l < 0) l = 1;
    if (kind == WeightKind::Tca || kind == WeightKind::Dapca)
      case_data.domains = domains;

    WeightScheme scheme;
    scheme.kind = kind;
    scheme.alpha = 0.8;
    scheme.beta = 0.6;
    scheme.gamma = 1.1;
    scheme.k = 4;

    NeighborMap neighbors;
    const NeighborMap* neighbors_ptr = nullptr;
    if (kind == WeightKind::Dapca) {
      DataMatrix target, source;
      std::vector<Eigen::Index> t_rows, s_rows;
      for (Eigen::Index i = 0; i < case_data.rows(); ++i)
        (case_data.domain(i) == Domain::Target ? t_rows : s_rows).push_back(i);
      target.values.resize(static_cast<Eigen::Index>(t_rows.size()), 10);
      source.values.resize(static_cast<Eigen::Index>(s_rows.size()), 10);
      for (std::size_t r = 0; r < t_rows.size(); ++r)
        target.values.row(static_cast<Eigen::Index>(r)) =
            case_data.values.row(t_rows[r]);
      for (std::size_t r = 0; r < s_rows.size(); ++r)
        source.values.row(static_cast<Eigen::Index>(r)) =
            case_data.values.row(s_rows[r]);
      neighbors = knn_source_neighbors(target, source, 4);
      neighbors_ptr = &neighbors;
    }

    const Matrix fast = build_qw(case_data, scheme, neighbors_ptr);

    Matrix w(200, 200);
    for (Eigen::Index i = 0; i < 200; ++i)
      for (Eigen::Index j = 0; j < 200; ++j)
        w(i, j) = oracle_pair_weight(scheme, case_data, neighbors_ptr, i, j);
    Matrix slow = Matrix::Zero(10, 10);
    for (Eigen::Index i = 0; i < 200; ++i) {
      const double row_sum = w.row(i).sum();
      for (Eigen::Index l = 0; l < 10; ++l)
        for (Eigen::Index m = 0; m < 10; ++m)
          slow(l, m) += row_sum * case_data.values(i, l) * case_data.values(i, m);
    }
    for (Eigen::Index i = 0; i < 200; ++i)
      for (Eigen::Index j = 0; j < 200; ++j)
        for (Eigen::Index l = 0; l < 10; ++l)
          for (Eigen::Index m = 0; m < 10; ++m)
            slow(l, m) -=
                w(i, j) * case_data.values(i, l) * case_data.values(j, m);
    if (scheme.kind == WeightKind::Tca) {
      Vector mu_l = Vector::Zero(10), mu_u = Vector::Zero(10);
      double nl = 0, nu = 0;
      for (Eigen::Index i = 0; i < 200; ++i) {
        if (case_data.domain(i) == Domain::Source) {
          mu_l += case_data.values.row(i);
          ++nl;
        } else {
          mu_u += case_data.values.row(i);
          ++nu;
        }
      }
      const Vector diff = mu_l / nl - mu_u / nu;
      slow -= scheme.beta * diff * diff.transpose();
    }

    const double rel = (fast - slow).norm() / slow.norm();
    if (rel > 1e-8) {
      ok = false;
      detail = std::string("double-sum mismatch for ") +
               weight_kind_name(kind) + ": " + std::to_string(rel);
    }
  }
  report(6, ok,
         ok ? "classical = covariance PCA; Q^W = brute-force double sum for "
              "all five schemes"
            : detail);
}

// ---- criterion 7: iterative DAPCA ------------------------------------------

void criterion_dapca() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10 && ok; ++seed) {
    DataMatrix source = generate_labeled_clusters(15, 2, 2, 50, 0.25, seed);
    DataMatrix target =
        generate_labeled_clusters(15, 1, 3, 40, 0.25, seed + 1000);
    target.labels.reset();
    target.values.array() += 0.3;
    const DapcaResult result =
        iterative_dapca(source, target, WeightScheme::dapca(1.0, 0.5, 1.2, 4),
                        SelectionRule::fixed(4));
    if (result.iterations > 100) {
      ok = false;
      detail = "did not terminate within 100 iterations";
    }
    for (std::size_t i = 1; i < result.history.size(); ++i) {
      const double prev = result.history[i - 1];
      const double now = result.history[i];
      if (now < prev - 1e-9 * std::max({std::abs(prev), std::abs(now), 1.0})) {
        ok = false;
        detail = "H decreased at seed " + std::to_string(seed);
      }
    }
  }

  // empty target: exactly the semi-supervised projector
  DataMatrix source = generate_labeled_clusters(15, 2, 2, 60, 0.25, 77);
  DataMatrix empty;
  empty.values.resize(0, 15);
  const DapcaResult degenerate =
      iterative_dapca(source, empty, WeightScheme::dapca(1.0, 0.5, 1.2, 4),
                      SelectionRule::fixed(4));
  const Projector semi = weighted_pca(
      source, WeightScheme::semisupervised(1.0, 0.5), SelectionRule::fixed(4));
  if (!(degenerate.projector.basis == semi.basis) ||
      !(degenerate.projector.eigenvalues == semi.eigenvalues)) {
    ok = false;
    detail = "empty-target degeneration differs from semi-supervised PCA";
  }
  report(7, ok,
         ok ? "H history non-decreasing on 10 seeds, termination <= 100, "
              "empty-target degeneration exact"
            : detail);
}

// ---- criterion 8: corrector experiment at desk scale -----------------------

struct SplitData {
  DataMatrix train, eval;
};

SplitData parity_split(const DataMatrix& all) {
  SplitData out;
  const Eigen::Index half = all.rows() / 2;
  out.train.values.resize(half, all.cols());
  out.eval.values.resize(all.rows() - half, all.cols());
  Eigen::Index t = 0, e = 0;
  for (Eigen::Index i = 0; i < all.rows(); ++i) {
    if (i % 2 == 0)
      out.train.values.row(t++) = all.values.row(i);
    else
      out.eval.values.row(e++) = all.values.row(i);
  }
  return out;
}

void criterion_corrector_experiment() {
  const SplitData y =
      parity_split(generate_labeled_clusters(393, 9, 1, 4000, 0.04, 42));
  const SplitData x =
      parity_split(generate_labeled_clusters(393, 10, 1, 4000, 0.04, 1042));

  const auto start = std::chrono::steady_clock::now();
  const CorrectorModel ten =
      train_corrector(x.train, y.train, 10, SelectionRule::fixed(20),
                      ThresholdSpec::specificity(0.9), 4242);
  const double train_seconds = elapsed_seconds(start);

  const CorrectorModel one =
      train_corrector(x.train, y.train, 1, SelectionRule::fixed(20),
                      ThresholdSpec::specificity(0.9), 4242);

  const double auc_ten = roc_sweep(ten, x.eval, y.eval, 512).auc;
  const double auc_one = roc_sweep(one, x.eval, y.eval, 512).auc;
  const bool ok =
      auc_ten >= auc_one && auc_ten >= 0.90 && train_seconds < 60.0;
  std::ostringstream oss;
  oss << "n=393 synthetic clusters: AUC(k=10) = " << auc_ten
      << " >= AUC(k=1) = " << auc_one << ", >= 0.90, trained in "
      << train_seconds << " s";
  report(8, ok, oss.str());
}

// ---- criterion 9: online-update consistency --------------------------------

void criterion_online_updates() {
  const SplitData y =
      parity_split(generate_labeled_clusters(60, 5, 1, 400, 0.15, 314));
  const SplitData x =
      parity_split(generate_labeled_clusters(60, 4, 1, 400, 0.15, 315));
  CorrectorModel model =
      train_corrector(x.train, y.train, 5, SelectionRule::fixed(12),
                      ThresholdSpec::specificity(0.9), 2718);
  const CorrectorModel before = model;

  const Vector probe = y.eval.values.row(0);
  const Decision before_decision = decide(model, probe);

  const DataMatrix updates = generate_labeled_clusters(60, 1, 5, 20, 0.2, 999);
  std::vector<Vector> sums(model.cluster_count(),
                           Vector::Zero(model.reduced_dim()));
  std::vector<std::size_t> taken(model.cluster_count(), 0);
  for (Eigen::Index i = 0; i < updates.rows(); ++i) {
    const Vector point = updates.values.row(i);
    const std::size_t c = online_update(model, point);
    sums[c] += model.projection.project_whiten(point);
    ++taken[c];
  }

  bool ok = updates.rows() == 100;
  std::string detail = "100 online updates match batch cluster means <= 1e-8";
  for (std::size_t c = 0; c < model.cluster_count(); ++c) {
    const Vector batch =
        (before.clusters.row(static_cast<Eigen::Index>(c)).transpose() *
             static_cast<double>(before.counts[c]) +
         sums[c]) /
        static_cast<double>(before.counts[c] + taken[c]);
    const double gap =
        (model.clusters.row(static_cast<Eigen::Index>(c)).transpose() - batch)
            .cwiseAbs()
            .maxCoeff();
    if (gap > 1e-8) {
      ok = false;
      detail = "cluster " + std::to_string(c) + " drifted by " +
               std::to_string(gap);
    }
  }

  const Decision after_decision = decide(model, probe);
  const Decision after_again = decide(model, probe);
  if (after_decision.score != after_again.score ||
      before_decision.score != decide(before, probe).score) {
    ok = false;
    detail = "decide became nondeterministic";
  }
  report(9, ok, detail);
}

// ---- criterion 10: byte-identical replays ----------------------------------

void criterion_determinism(const fs::path& dir) {
  bool ok = true;
  std::string detail = "mc report, universe, corrector model replay "
                       "byte-identically";

  auto same_bytes = [&](const std::vector<std::string>& args,
                        const fs::path& a, const fs::path& b) {
    std::vector<std::string> first = args, second = args;
    first.push_back(a.string());
    second.push_back(b.string());
    if (run_cli_quiet(first) != 0 || run_cli_quiet(second) != 0) return false;
    return load_text(a) == load_text(b);
  };

  if (!same_bytes({"sep", "mc", "--scenario", "point_vs_sphere_granules",
                   "--n", "60", "--set-size", "50", "--alpha", "0.9",
                   "--radius", "0.05", "--trials", "400", "--seed", "123",
                   "--output"},
                  dir / "mc_a.json", dir / "mc_b.json")) {
    ok = false;
    detail = "sep mc replay differs";
  }
  if (!same_bytes({"universe", "gen", "--kind", "granules", "--n", "16",
                   "--count", "5", "--shape", "ellipsoid", "--seed", "9",
                   "--output"},
                  dir / "g_a.json", dir / "g_b.json")) {
    ok = false;
    detail = "universe replay differs";
  }

  // corrector training replay through the CLI
  const fs::path xcsv = dir / "x.csv", ycsv = dir / "y.csv";
  DataMatrix x, y;
  x.values = generate_labeled_clusters(20, 3, 1, 100, 0.15, 5).values;
  y.values = generate_labeled_clusters(20, 4, 1, 100, 0.15, 6).values;
  save_matrix(xcsv, x);
  save_matrix(ycsv, y);
  if (!same_bytes({"corrector", "train", "--x", xcsv.string(), "--y",
                   ycsv.string(), "--k", "4", "--components", "6",
                   "--specificity", "0.9", "--seed", "11", "--output"},
                  dir / "m_a.json", dir / "m_b.json")) {
    ok = false;
    detail = "corrector train replay differs";
  }
  report(10, ok, detail);
}

}  // namespace

int main() {
  const fs::path dir =
      fs::temp_directory_path() /
      ("granular_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  criterion_tables(dir);
  criterion_point_mc();
  criterion_quasiorthogonality();
  criterion_support_oracle();
  criterion_tail_bounds();
  criterion_weighted_pca();
  criterion_dapca();
  criterion_corrector_experiment();
  criterion_online_updates();
  criterion_determinism(dir);

  fs::remove_all(dir);
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}

#include "granular/weighted_pca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <utility>

#include "granular/errors.hpp"
#include "granular/linalg.hpp"

namespace granular {

WeightScheme WeightScheme::classical() { return {}; }

WeightScheme WeightScheme::supervised(double alpha) {
  WeightScheme s;
  s.kind = WeightKind::Supervised;
  s.alpha = alpha;
  return s;
}

WeightScheme WeightScheme::semisupervised(double alpha, double beta) {
  WeightScheme s;
  s.kind = WeightKind::Semisupervised;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

WeightScheme WeightScheme::tca(double alpha, double beta) {
  WeightScheme s;
  s.kind = WeightKind::Tca;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

WeightScheme WeightScheme::dapca(double alpha, double beta, double gamma,
                                 std::size_t k) {
  WeightScheme s;
  s.kind = WeightKind::Dapca;
  s.alpha = alpha;
  s.beta = beta;
  s.gamma = gamma;
  s.k = k;
  return s;
}

const char* weight_kind_name(WeightKind kind) {
  switch (kind) {
    case WeightKind::Classical: return "classical";
    case WeightKind::Supervised: return "supervised";
    case WeightKind::Semisupervised: return "semisupervised";
    case WeightKind::Tca: return "tca";
    case WeightKind::Dapca: return "dapca";
  }
  return "?";
}

WeightKind weight_kind_from_name(const std::string& name) {
  if (name == "classical") return WeightKind::Classical;
  if (name == "supervised") return WeightKind::Supervised;
  if (name == "semisupervised") return WeightKind::Semisupervised;
  if (name == "tca") return WeightKind::Tca;
  if (name == "dapca") return WeightKind::Dapca;
  throw ParameterOutOfRange("unknown weight scheme '" + name + "'");
}

WeightScheme assign_weights_semisupervised(const std::vector<int>& labels,
                                           double alpha, double beta) {
  if (labels.empty())
    throw ParameterOutOfRange(
        "assign_weights_semisupervised needs at least one sample");
  return WeightScheme::semisupervised(alpha, beta);
}

namespace {

// Pairwise weights are block-constant over row groups (classes, the
// unlabeled pool, the target domain), optionally corrected by the sparse
// target-to-source kNN links of dapca. Everything downstream (Q^W, H)
// works off this resolved form so the dense W never exists.
struct ResolvedScheme {
  std::vector<int> group;        // per-row group id
  Eigen::Index num_groups = 0;
  Matrix block;                  // group-to-group weight
  double link_weight = 0.0;      // -gamma on kNN pairs
  const NeighborMap* neighbors = nullptr;
  std::vector<Eigen::Index> target_rows;   // global ids, target row order
  std::vector<Eigen::Index> source_rows;   // global ids, source row order
  bool mean_term = false;        // tca attraction between domain means
  double mean_coeff = 0.0;
  Vector mean_diff;
};

Matrix supervised_block(Eigen::Index classes, double alpha) {
  Matrix block = Matrix::Ones(classes, classes);
  block.diagonal().setConstant(-alpha);
  return block;
}

ResolvedScheme resolve_classical(const DataMatrix& data) {
  ResolvedScheme r;
  r.group.assign(static_cast<std::size_t>(data.rows()), 0);
  r.num_groups = 1;
  r.block = Matrix::Ones(1, 1);
  return r;
}

ResolvedScheme resolve_supervised(const DataMatrix& data,
                                  const WeightScheme& scheme) {
  if (!data.has_labels())
    throw MissingLabels("supervised scheme needs labels on every sample");
  const Eigen::Index n = data.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    if (data.label(i) < 0)
      throw MissingLabels("supervised scheme: sample " + std::to_string(i) +
                          " is unlabeled");
  ResolvedScheme r;
  const int classes = data.num_classes();
  r.group.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    r.group[static_cast<std::size_t>(i)] = data.label(i);
  r.num_groups = classes;
  r.block = supervised_block(classes, scheme.alpha);
  return r;
}

ResolvedScheme resolve_semisupervised(const DataMatrix& data,
                                      const WeightScheme& scheme) {
  const Eigen::Index n = data.rows();
  const int classes = data.num_classes();
  bool any_unlabeled = false;
  for (Eigen::Index i = 0; i < n; ++i)
    if (data.label(i) < 0) any_unlabeled = true;

  ResolvedScheme r;
  const Eigen::Index groups = classes + (any_unlabeled ? 1 : 0);
  r.num_groups = std::max<Eigen::Index>(groups, 1);
  r.block = Matrix::Zero(r.num_groups, r.num_groups);
  r.block.topLeftCorner(classes, classes) =
      supervised_block(classes, scheme.alpha);
  if (any_unlabeled) {
    // unlabeled pool: classical repulsion inside, no coupling to labels
    r.block(classes, classes) = 1.0;
  }
  if (groups == 0) {
    // no labels at all and n == 0 cannot happen (validate runs earlier);
    // a single all-unlabeled group behaves classically
    r.block(0, 0) = 1.0;
  }
  r.group.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const int label = data.label(i);
    r.group[static_cast<std::size_t>(i)] = label >= 0 ? label : classes;
  }
  return r;
}

std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_domains(
    const DataMatrix& data) {
  std::vector<Eigen::Index> source, target;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    if (data.has_domains() && data.domain(i) == Domain::Target)
      target.push_back(i);
    else if (!data.has_domains() && data.label(i) < 0)
      target.push_back(i);  // no tags: unlabeled rows act as the target side
    else
      source.push_back(i);
  }
  return {std::move(source), std::move(target)};
}

ResolvedScheme resolve_tca(const DataMatrix& data, const WeightScheme& scheme,
                           bool allow_degeneracy) {
  auto [source_rows, target_rows] = split_domains(data);
  ResolvedScheme r = resolve_semisupervised(data, scheme);
  if (source_rows.empty() || target_rows.empty()) {
    if (!allow_degeneracy)
      throw EmptyDomain(source_rows.empty() ? "tca: source domain is empty"
                                            : "tca: target domain is empty");
    return r;  // mean term vanishes with a single domain
  }
  Vector mu_labeled = Vector::Zero(data.cols());
  Vector mu_unlabeled = Vector::Zero(data.cols());
  for (Eigen::Index i : source_rows) mu_labeled += data.values.row(i);
  for (Eigen::Index i : target_rows) mu_unlabeled += data.values.row(i);
  mu_labeled /= static_cast<double>(source_rows.size());
  mu_unlabeled /= static_cast<double>(target_rows.size());
  r.mean_term = true;
  r.mean_coeff = scheme.beta;
  r.mean_diff = mu_labeled - mu_unlabeled;
  return r;
}

ResolvedScheme resolve_scheme(const DataMatrix& data,
                              const WeightScheme& scheme,
                              const NeighborMap* neighbors,
                              bool allow_degeneracy);

ResolvedScheme resolve_dapca(const DataMatrix& data,
                             const WeightScheme& scheme,
                             const NeighborMap* neighbors,
                             bool allow_degeneracy) {
  auto [source_rows, target_rows] = split_domains(data);
  if (target_rows.empty()) {
    if (!allow_degeneracy) throw EmptyDomain("dapca: target domain is empty");
    return resolve_scheme(
        data, WeightScheme::semisupervised(scheme.alpha, scheme.beta), nullptr,
        allow_degeneracy);
  }
  if (source_rows.empty()) {
    if (!allow_degeneracy) throw EmptyDomain("dapca: source domain is empty");
    return resolve_classical(data);
  }
  for (Eigen::Index i : source_rows)
    if (data.label(i) < 0)
      throw MissingLabels("dapca: source sample " + std::to_string(i) +
                          " is unlabeled");
  if (neighbors == nullptr)
    throw MissingNeighborMap("dapca scheme needs a target-to-source kNN map");
  if (neighbors->size() != target_rows.size())
    throw DimensionMismatch("neighbor map covers " +
                            std::to_string(neighbors->size()) +
                            " targets, data has " +
                            std::to_string(target_rows.size()));
  for (const auto& list : *neighbors)
    for (std::size_t s : list)
      if (s >= source_rows.size())
        throw ParameterOutOfRange("neighbor index " + std::to_string(s) +
                                  " exceeds the source row count");

  ResolvedScheme r;
  const Eigen::Index n = data.rows();
  int classes = 0;
  for (Eigen::Index i : source_rows)
    classes = std::max(classes, data.label(i) + 1);
  r.num_groups = classes + 1;  // last group: target domain
  r.block = Matrix::Zero(r.num_groups, r.num_groups);
  r.block.topLeftCorner(classes, classes) =
      supervised_block(classes, scheme.alpha);
  r.block(classes, classes) = scheme.beta;
  r.group.assign(static_cast<std::size_t>(n), classes);
  for (Eigen::Index i : source_rows)
    r.group[static_cast<std::size_t>(i)] = data.label(i);
  r.link_weight = -scheme.gamma;
  r.neighbors = neighbors;
  r.source_rows = std::move(source_rows);
  r.target_rows = std::move(target_rows);
  return r;
}

ResolvedScheme resolve_scheme(const DataMatrix& data,
                              const WeightScheme& scheme,
                              const NeighborMap* neighbors,
                              bool allow_degeneracy) {
  switch (scheme.kind) {
    case WeightKind::Classical: return resolve_classical(data);
    case WeightKind::Supervised: return resolve_supervised(data, scheme);
    case WeightKind::Semisupervised:
      return resolve_semisupervised(data, scheme);
    case WeightKind::Tca: return resolve_tca(data, scheme, allow_degeneracy);
    case WeightKind::Dapca:
      return resolve_dapca(data, scheme, neighbors, allow_degeneracy);
  }
  throw ParameterOutOfRange("unknown weight kind");
}

// Row sums of the implied W: s_i = sum_r W_ir, block part plus link part.
Vector weight_row_sums(const ResolvedScheme& r, Eigen::Index n) {
  Vector group_count = Vector::Zero(r.num_groups);
  for (int g : r.group) group_count[g] += 1.0;
  const Vector per_group = r.block * group_count;
  Vector s(n);
  for (Eigen::Index i = 0; i < n; ++i)
    s[i] = per_group[r.group[static_cast<std::size_t>(i)]];
  if (r.neighbors) {
    for (std::size_t t = 0; t < r.neighbors->size(); ++t) {
      const auto& list = (*r.neighbors)[t];
      s[r.target_rows[t]] += r.link_weight * static_cast<double>(list.size());
      for (std::size_t sp : list) s[r.source_rows[sp]] += r.link_weight;
    }
  }
  return s;
}

}  // namespace

double pair_weight(const WeightScheme& scheme, const DataMatrix& data,
                   const NeighborMap* neighbors, Eigen::Index i,
                   Eigen::Index j) {
  const ResolvedScheme r = resolve_scheme(data, scheme, neighbors, true);
  double w = r.block(r.group[static_cast<std::size_t>(i)],
                     r.group[static_cast<std::size_t>(j)]);
  if (r.neighbors) {
    auto linked = [&](Eigen::Index target, Eigen::Index other) {
      for (std::size_t t = 0; t < r.target_rows.size(); ++t) {
        if (r.target_rows[t] != target) continue;
        for (std::size_t sp : (*r.neighbors)[t])
          if (r.source_rows[sp] == other) return true;
      }
      return false;
    };
    if (linked(i, j) || linked(j, i)) w = r.link_weight;
  }
  return w;
}

Matrix materialize_weights(const WeightScheme& scheme, const DataMatrix& data,
                           const NeighborMap* neighbors) {
  const Eigen::Index n = data.rows();
  Matrix w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      w(i, j) = pair_weight(scheme, data, neighbors, i, j);
  return w;
}

Matrix build_qw(const DataMatrix& data, const WeightScheme& scheme,
                const NeighborMap* neighbors, bool allow_domain_degeneracy) {
  data.validate();
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  const Matrix& x = data.values;
  const ResolvedScheme r =
      resolve_scheme(data, scheme, neighbors, allow_domain_degeneracy);

  const Vector s = weight_row_sums(r, n);
  Matrix q = x.transpose() * s.asDiagonal() * x;

  Matrix group_sums = Matrix::Zero(r.num_groups, d);
  for (Eigen::Index i = 0; i < n; ++i)
    group_sums.row(r.group[static_cast<std::size_t>(i)]) += x.row(i);
  q.noalias() -= group_sums.transpose() * r.block * group_sums;

  if (r.neighbors) {
    Matrix cross = Matrix::Zero(d, d);
    for (std::size_t t = 0; t < r.neighbors->size(); ++t) {
      const auto& list = (*r.neighbors)[t];
      if (list.empty()) continue;
      Vector u = Vector::Zero(d);
      for (std::size_t sp : list) u += x.row(r.source_rows[sp]);
      cross.noalias() +=
          x.row(r.target_rows[t]).transpose() * u.transpose();
    }
    q.noalias() -= r.link_weight * (cross + cross.transpose());
  }

  if (r.mean_term)
    q.noalias() -= r.mean_coeff * r.mean_diff * r.mean_diff.transpose();

  return 0.5 * (q + q.transpose());
}

SelectionRule SelectionRule::fixed(std::size_t m) {
  SelectionRule rule;
  rule.kind = Kind::Fixed;
  rule.components = m;
  return rule;
}

SelectionRule SelectionRule::kaiser() {
  SelectionRule rule;
  rule.kind = Kind::Kaiser;
  return rule;
}

SelectionRule SelectionRule::broken_stick() {
  SelectionRule rule;
  rule.kind = Kind::BrokenStick;
  return rule;
}

SelectionRule SelectionRule::condition(double kappa) {
  SelectionRule rule;
  rule.kind = Kind::Condition;
  rule.kappa = kappa;
  return rule;
}

Vector Projector::project(const Vector& x) const {
  if (x.size() != dim())
    throw DimensionMismatch("projector expects dimension " +
                            std::to_string(dim()) + ", got " +
                            std::to_string(x.size()));
  return basis * (x - mean);
}

Matrix Projector::project_rows(const Matrix& rows) const {
  if (rows.cols() != dim())
    throw DimensionMismatch("projector expects dimension " +
                            std::to_string(dim()) + ", got " +
                            std::to_string(rows.cols()));
  return (rows.rowwise() - mean.transpose()) * basis.transpose();
}

Vector Projector::project_whiten(const Vector& x) const {
  return whitening_scales.asDiagonal() * project(x);
}

Matrix Projector::project_whiten_rows(const Matrix& rows) const {
  return project_rows(rows) * whitening_scales.asDiagonal();
}

Projector eigen_select(const Matrix& qw, const SelectionRule& rule,
                       const Vector* mean) {
  if (qw.rows() != qw.cols())
    throw DimensionMismatch("Q^W must be square");
  const double scale = std::max(1.0, qw.cwiseAbs().maxCoeff());
  if ((qw - qw.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ParameterOutOfRange("Q^W is not symmetric within tolerance");

  const SymmetricEigen eig = symmetric_eigen_desc(qw);
  const Eigen::Index p = eig.eigenvalues.size();

  // Components at or below zero never enter, whatever the rule says; values
  // that are zero to machine precision count as zero.
  const double floor = std::max(eig.eigenvalues[0], 0.0) * 1e-14;
  Eigen::Index positive = 0;
  while (positive < p && eig.eigenvalues[positive] > floor) ++positive;
  if (positive == 0)
    throw NoPositiveEigenvalues("no strictly positive eigenvalues in Q^W");

  Eigen::Index m = positive;
  switch (rule.kind) {
    case SelectionRule::Kind::Fixed:
      m = std::min<Eigen::Index>(
          positive, static_cast<Eigen::Index>(rule.components));
      break;
    case SelectionRule::Kind::Kaiser: {
      const double mean_eig = eig.eigenvalues.mean();
      Eigen::Index kept = 0;
      while (kept < positive && eig.eigenvalues[kept] > mean_eig) ++kept;
      m = std::max<Eigen::Index>(kept, 1);
      break;
    }
    case SelectionRule::Kind::BrokenStick: {
      const double total = eig.eigenvalues.head(positive).sum();
      double stick = 0.0;
      std::vector<double> threshold(static_cast<std::size_t>(positive));
      for (Eigen::Index i = positive - 1; i >= 0; --i) {
        stick += 1.0 / static_cast<double>(i + 1);
        threshold[static_cast<std::size_t>(i)] =
            stick / static_cast<double>(positive);
      }
      Eigen::Index kept = 0;
      while (kept < positive &&
             eig.eigenvalues[kept] / total >
                 threshold[static_cast<std::size_t>(kept)])
        ++kept;
      m = std::max<Eigen::Index>(kept, 1);
      break;
    }
    case SelectionRule::Kind::Condition: {
      if (rule.kappa <= 1.0)
        throw ParameterOutOfRange("condition rule needs kappa > 1");
      Eigen::Index kept = 1;
      while (kept < positive &&
             eig.eigenvalues[0] / eig.eigenvalues[kept] < rule.kappa)
        ++kept;
      m = kept;
      break;
    }
  }
  if (m < 1) throw NoPositiveEigenvalues("selection rule kept no components");

  if (mean && mean->size() != qw.rows())
    throw DimensionMismatch("mean length does not match Q^W dimension");
  Projector proj;
  proj.mean = mean ? *mean : Vector::Zero(qw.rows());
  proj.basis = eig.eigenvectors.leftCols(m).transpose();
  proj.eigenvalues = eig.eigenvalues.head(m);
  proj.whitening_scales = proj.eigenvalues.cwiseSqrt().cwiseInverse();
  return proj;
}

Projector weighted_pca(const DataMatrix& data, const WeightScheme& scheme,
                       const SelectionRule& rule,
                       const NeighborMap* neighbors) {
  data.validate();
  const Vector mean = data.values.colwise().mean();
  DataMatrix centered = data;
  centered.values.rowwise() -= mean.transpose();
  const Matrix qw = build_qw(centered, scheme, neighbors, true);
  return eigen_select(qw, rule, &mean);
}

NeighborMap knn_source_neighbors(const DataMatrix& target,
                                 const DataMatrix& source, std::size_t k,
                                 const Projector* projector) {
  if (source.rows() == 0) throw EmptySource("no source samples for kNN");
  if (k < 1 || static_cast<Eigen::Index>(k) > source.rows())
    throw ParameterOutOfRange("k must satisfy 1 <= k <= " +
                              std::to_string(source.rows()));
  if (target.cols() != source.cols())
    throw DimensionMismatch("target and source dimensions differ");

  const Matrix source_coords =
      projector ? projector->project_rows(source.values) : source.values;
  const Matrix target_coords =
      projector ? projector->project_rows(target.values) : target.values;

  const Eigen::Index n_source = source_coords.rows();
  NeighborMap neighbors(static_cast<std::size_t>(target_coords.rows()));
  std::vector<std::pair<double, std::size_t>> dist(
      static_cast<std::size_t>(n_source));
  for (Eigen::Index t = 0; t < target_coords.rows(); ++t) {
    for (Eigen::Index s = 0; s < n_source; ++s)
      dist[static_cast<std::size_t>(s)] = {
          (source_coords.row(s) - target_coords.row(t)).squaredNorm(),
          static_cast<std::size_t>(s)};
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k),
                      dist.end());
    auto& list = neighbors[static_cast<std::size_t>(t)];
    list.resize(k);
    for (std::size_t j = 0; j < k; ++j) list[j] = dist[j].second;
  }
  return neighbors;
}

double scatter_value(const Projector& projector, const DataMatrix& data,
                     const WeightScheme& scheme,
                     const NeighborMap* neighbors) {
  const ResolvedScheme r = resolve_scheme(data, scheme, neighbors, true);
  const Eigen::Index n = data.rows();
  const Matrix p = projector.project_rows(data.values);

  const Vector s = weight_row_sums(r, n);
  double h = (p.rowwise().squaredNorm().array() * s.array()).sum();

  Matrix group_sums = Matrix::Zero(r.num_groups, p.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    group_sums.row(r.group[static_cast<std::size_t>(i)]) += p.row(i);
  h -= (group_sums.transpose() * r.block * group_sums).trace();

  if (r.neighbors) {
    double cross = 0.0;
    for (std::size_t t = 0; t < r.neighbors->size(); ++t)
      for (std::size_t sp : (*r.neighbors)[t])
        cross += p.row(r.target_rows[t]).dot(p.row(r.source_rows[sp]));
    h -= 2.0 * r.link_weight * cross;
  }

  if (r.mean_term)
    h -= r.mean_coeff * (projector.basis * r.mean_diff).squaredNorm();
  return h;
}

namespace {

std::uint64_t hash_assignment(const NeighborMap& neighbors) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(neighbors.size());
  for (const auto& list : neighbors) {
    mix(0xfeedULL);
    for (std::size_t s : list) mix(s + 1);
  }
  return h;
}

}  // namespace

DapcaResult iterative_dapca(const DataMatrix& source, const DataMatrix& target,
                            const WeightScheme& scheme,
                            const SelectionRule& rule, std::size_t max_iter) {
  if (scheme.kind != WeightKind::Dapca)
    throw ParameterOutOfRange("iterative_dapca needs a dapca scheme");
  if (max_iter < 1) throw ParameterOutOfRange("max_iter must be >= 1");

  DapcaResult result;
  if (target.rows() == 0) {
    const WeightScheme fallback =
        WeightScheme::semisupervised(scheme.alpha, scheme.beta);
    result.projector = weighted_pca(source, fallback, rule);
    result.history.push_back(scatter_value(result.projector, source, fallback));
    result.iterations = 1;
    return result;
  }
  if (source.rows() == 0) {
    const WeightScheme fallback = WeightScheme::classical();
    result.projector = weighted_pca(target, fallback, rule);
    result.history.push_back(scatter_value(result.projector, target, fallback));
    result.iterations = 1;
    return result;
  }

  for (Eigen::Index i = 0; i < source.rows(); ++i)
    if (source.label(i) < 0)
      throw MissingLabels("dapca: source sample " + std::to_string(i) +
                          " is unlabeled");

  const DataMatrix combined = concat_domains(source, target);
  const Vector mean = combined.values.colwise().mean();
  DataMatrix centered = combined;
  centered.values.rowwise() -= mean.transpose();

  DataMatrix source_c;
  source_c.values = centered.values.topRows(source.rows());
  DataMatrix target_c;
  target_c.values = centered.values.bottomRows(target.rows());

  NeighborMap neighbors = knn_source_neighbors(target_c, source_c, scheme.k);
  std::unordered_set<std::uint64_t> seen{hash_assignment(neighbors)};

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    const Matrix qw = build_qw(centered, scheme, &neighbors, true);
    Projector proj = eigen_select(qw, rule);
    proj.mean = mean;
    const double h = scatter_value(proj, combined, scheme, &neighbors);
    result.projector = std::move(proj);
    result.history.push_back(h);
    result.iterations = iter;
    result.neighbors = neighbors;

    if (result.history.size() >= 2) {
      const double prev = result.history[result.history.size() - 2];
      if (h - prev < 1e-9 * std::max({std::abs(h), std::abs(prev), 1.0}))
        break;
    }
    if (iter == max_iter) break;

    NeighborMap next =
        knn_source_neighbors(target_c, source_c, scheme.k, &result.projector);
    const std::uint64_t signature = hash_assignment(next);
    if (!seen.insert(signature).second) break;  // assignment cycle
    neighbors = std::move(next);
  }
  return result;
}

}  // namespace granular

#include "granular/kmeans.hpp"

#include <limits>
#include <string>

#include "granular/errors.hpp"
#include "granular/rng.hpp"

namespace granular {

namespace {

Matrix kmeanspp_init(const Matrix& points, std::size_t k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Matrix centroids(static_cast<Eigen::Index>(k), points.cols());
  centroids.row(0) = points.row(static_cast<Eigen::Index>(
      rng.uniform_index(static_cast<std::size_t>(n))));

  Vector best_dist =
      (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (std::size_t c = 1; c < k; ++c) {
    const double total = best_dist.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      // D^2 sampling over the cumulative distance mass
      const double target = rng.uniform01() * total;
      double cumulative = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += best_dist[i];
        if (cumulative > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(
          rng.uniform_index(static_cast<std::size_t>(n)));
    }
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(pick);
    best_dist = best_dist.cwiseMin(
        (points.rowwise() - centroids.row(static_cast<Eigen::Index>(c)))
            .rowwise()
            .squaredNorm());
  }
  return centroids;
}

}  // namespace

KmeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter, std::size_t restarts) {
  const Eigen::Index n = points.rows();
  if (k < 1) throw ParameterOutOfRange("k must be >= 1");
  if (n < static_cast<Eigen::Index>(k))
    throw InsufficientData("k-means needs at least k points (" +
                           std::to_string(k) + " > " + std::to_string(n) + ")");

  for (std::size_t attempt = 0; attempt <= restarts; ++attempt) {
    Rng rng = Rng::derive(seed, stream::kKmeansInit, attempt);
    KmeansResult result;
    result.centroids = kmeanspp_init(points, k, rng);
    result.assignment.assign(static_cast<std::size_t>(n), -1);
    result.counts.assign(k, 0);

    bool collapsed = false;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
      bool changed = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          const double d =
              (points.row(i) -
               result.centroids.row(static_cast<Eigen::Index>(c)))
                  .squaredNorm();
          if (d < best_d) {  // strict: ties keep the lower index
            best_d = d;
            best = static_cast<int>(c);
          }
        }
        if (result.assignment[static_cast<std::size_t>(i)] != best) {
          result.assignment[static_cast<std::size_t>(i)] = best;
          changed = true;
        }
      }
      result.iterations = iter;

      Matrix sums = Matrix::Zero(static_cast<Eigen::Index>(k), points.cols());
      std::vector<std::size_t> counts(k, 0);
      for (Eigen::Index i = 0; i < n; ++i) {
        const int c = result.assignment[static_cast<std::size_t>(i)];
        sums.row(c) += points.row(i);
        ++counts[static_cast<std::size_t>(c)];
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
          collapsed = true;
          break;
        }
        result.centroids.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) /
            static_cast<double>(counts[c]);
      }
      if (collapsed) break;
      result.counts = counts;
      if (!changed) break;
    }
    if (!collapsed) return result;
  }
  throw ClusterCollapse("k-means produced an empty cluster in every restart");
}

}  // namespace granular

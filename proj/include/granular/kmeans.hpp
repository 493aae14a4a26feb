#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "granular/types.hpp"

namespace granular {

struct KmeansResult {
  Matrix centroids;  // k x dim
  std::vector<int> assignment;
  std::vector<std::size_t> counts;
  std::size_t iterations = 0;
};

/// Seeded Lloyd iterations with kmeans++ initialization. Assignment ties go
/// to the lower centroid index. An empty cluster restarts the whole run with
/// a fresh derived seed, up to `restarts` times, then throws ClusterCollapse.
KmeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter = 300, std::size_t restarts = 10);

}  // namespace granular

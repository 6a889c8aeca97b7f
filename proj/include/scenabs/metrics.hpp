#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>

#include "scenabs/errors.hpp"
#include "scenabs/jlss.hpp"

namespace scenabs {

enum class TrajectoryMetric { Sup, DirectionalHausdorff };
enum class PointMetric { Euclidean, HybridEuclidean };

/// Which trajectory functional D and which instantaneous metric d to use.
/// The hybrid metric requires mode labels on both trajectories and returns
/// +inf whenever the modes differ.
struct DistanceSpec {
  TrajectoryMetric kind = TrajectoryMetric::Sup;
  PointMetric point_metric = PointMetric::Euclidean;
};

namespace detail {

inline double point_distance(const DistanceSpec& spec, const Trajectory& a, std::size_t i,
                             const Trajectory& b, std::size_t j) {
  if (spec.point_metric == PointMetric::HybridEuclidean &&
      (*a.mode)[i] != (*b.mode)[j])
    return std::numeric_limits<double>::infinity();
  return (a.values.col(static_cast<Eigen::Index>(i)) - b.values.col(static_cast<Eigen::Index>(j)))
      .norm();
}

}  // namespace detail

/// D(yS, yM). Sup requires identical grids (it compares instants pairwise);
/// the directional Hausdorff distance accepts any pair of grids and is the
/// max over yS instants of the min distance to any yM instant.
inline double distance(const DistanceSpec& spec, const Trajectory& ys, const Trajectory& ym) {
  if (ys.values.cols() != static_cast<Eigen::Index>(ys.grid.size()) ||
      ym.values.cols() != static_cast<Eigen::Index>(ym.grid.size()))
    throw invalid_input("distance: trajectory values/grid size mismatch");
  if (spec.point_metric == PointMetric::HybridEuclidean) {
    if (!ys.mode || !ym.mode) throw invalid_input("distance: hybrid metric requires mode labels");
    if (ys.mode->size() != ys.grid.size() || ym.mode->size() != ym.grid.size())
      throw invalid_input("distance: mode label count mismatch");
  }
  if (ys.values.rows() != ym.values.rows())
    throw invalid_input("distance: output dimensions differ");

  if (spec.kind == TrajectoryMetric::Sup) {
    if (ys.grid.size() != ym.grid.size() || !std::equal(ys.grid.begin(), ys.grid.end(), ym.grid.begin()))
      throw invalid_input("distance: sup metric requires identical grids");
    double d = 0.0;
    for (std::size_t i = 0; i < ys.grid.size(); ++i)
      d = std::max(d, detail::point_distance(spec, ys, i, ym, i));
    return d;
  }

  double d = 0.0;
  for (std::size_t i = 0; i < ys.grid.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ym.grid.size(); ++j)
      best = std::min(best, detail::point_distance(spec, ys, i, ym, j));
    d = std::max(d, best);
  }
  return d;
}

}  // namespace scenabs

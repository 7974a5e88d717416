#pragma once

#include <map>
#include <optional>
#include <vector>

#include "radiant/rtp.hpp"
#include "radiant/splat_config.hpp"

namespace radiant {

struct PlannerParams {
  double step_d = 1.0;       // boundary move distance, meters
  double threshold_s = 1.0;  // stop once max |T^m - mean| drops below this
  int max_iterations = 200;
  int retrain_epochs = 10;
  std::uint64_t seed = 0;
};

struct Scenario {
  CameraSet cameras;
  std::vector<EdgeProfile> edges;  // ascending edge_id
  BoundingBox bounding_box;
  PlannerParams params;
  std::optional<CostCurve> cloud_aggregate_curve;  // absent: merge-mode cloud
  SplatConfig splat;
};

struct EdgeTimeBreakdown {
  double train = 0.0;      // slowest device of the region
  double aggregate = 0.0;  // F_m(|C^m|)
  double upload = 0.0;     // sum of device model sizes / edge bandwidth
  double total = 0.0;
};

/// Predicted completion breakdown for an edge handling cams, using the
/// min-max device allocation for the train and upload components.
EdgeTimeBreakdown edge_time(const EdgeProfile& edge, const CameraSet& cams);

struct Plan {
  WeightedPartition partition;
  std::map<std::int64_t, RegionPlan> per_edge;
  std::map<std::int64_t, EdgeTimeBreakdown> predicted_edge_times;
  int iterations_used = 0;
  std::vector<double> residual_ratio_history;  // (max |T^m - mean|) / mean
  bool even = false;
};

/// Adaptive region planning: starts from the plain Voronoi partition of the
/// edge sites and repeatedly moves the most deviant edge's boundary by
/// adjusting its cell weight, until the per-edge completion times agree
/// within threshold_s or max_iterations is hit. Returns the iterate with the
/// smallest recorded residual ratio.
Plan plan(const Scenario& scenario);

/// Baseline: plain Voronoi regions and per-edge camera counts split as evenly
/// as the caps allow across devices (remainders to the lowest device ids).
Plan plan_even(const Scenario& scenario);

}  // namespace radiant

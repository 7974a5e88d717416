#pragma once

#include <map>
#include <vector>

#include "radiant/costmodel.hpp"
#include "radiant/geometry.hpp"

namespace radiant {

struct DeviceAllocation {
  std::int64_t device_id = 0;
  std::int64_t camera_count = 0;
  double predicted_init = 0.0;    // seconds
  double predicted_train = 0.0;   // seconds
  double predicted_upload = 0.0;  // seconds
  double predicted_total = 0.0;   // init + train + upload
};

struct RegionPlan {
  std::int64_t edge_id = 0;
  std::vector<DeviceAllocation> allocations;      // ascending device_id
  std::map<std::int64_t, CameraSet> sub_regions;  // contiguous chunks per device
  double predicted_makespan = 0.0;                // max predicted_total
};

/// Counts-only allocation; shared by solve_rtp, estimate_makespan and the
/// region planner (which only needs camera counts per device).
struct CountAllocation {
  std::vector<std::int64_t> device_ids;  // every device of the edge, ascending
  std::vector<std::int64_t> counts;      // aligned; 0 for unusable devices
  double makespan = 0.0;
};

/// Predicted timeline of one device handling camera_count cameras:
/// init = G(n), train = F_n(n), upload = H(n) / bandwidth.
DeviceAllocation device_time(const DeviceProfile& profile, std::int64_t camera_count);

/// Minimizes the edge's makespan max_n(init + train + upload) over integer
/// camera counts subject to per-device caps. The returned makespan equals the
/// exhaustive min-max optimum; devices with cap 0 are excluded (count 0).
CountAllocation solve_rtp_counts(const EdgeProfile& edge, std::int64_t camera_count);

/// Full region plan: optimal counts plus contiguous sub-regions carved from
/// longest_axis_order(cams) in ascending device order.
RegionPlan solve_rtp(const EdgeProfile& edge, const CameraSet& cams);

/// Optimal makespan for a synthetic region of the given size.
double estimate_makespan(const EdgeProfile& edge, std::int64_t camera_count);

}  // namespace radiant

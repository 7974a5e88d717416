#include "radiant/rtp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace radiant {

DeviceAllocation device_time(const DeviceProfile& profile, std::int64_t camera_count) {
  if (camera_count < 0) {
    throw std::invalid_argument("device_time: negative camera count");
  }
  if (camera_count > profile.max_cameras) {
    throw std::invalid_argument("device_time: count " + std::to_string(camera_count) +
                                " exceeds max_cameras " + std::to_string(profile.max_cameras) +
                                " of device " + std::to_string(profile.device_id));
  }
  if (!(profile.bandwidth_mb_s > 0.0)) {
    throw std::invalid_argument("device_time: device " + std::to_string(profile.device_id) +
                                " has non-positive bandwidth");
  }
  DeviceAllocation a;
  a.device_id = profile.device_id;
  a.camera_count = camera_count;
  a.predicted_init = profile.init_curve.eval(camera_count);
  a.predicted_train = profile.train_curve.eval(camera_count);
  a.predicted_upload = profile.size_curve.eval(camera_count) / profile.bandwidth_mb_s;
  a.predicted_total = a.predicted_init + a.predicted_train + a.predicted_upload;
  return a;
}

namespace {

double total_time(const DeviceProfile& d, std::int64_t count) {
  return d.init_curve.eval(count) + d.train_curve.eval(count) +
         d.size_curve.eval(count) / d.bandwidth_mb_s;
}

// Largest count in [0, max_cameras] whose total time stays within budget.
std::int64_t capacity_at(const DeviceProfile& d, double budget) {
  if (total_time(d, d.max_cameras) <= budget) return d.max_cameras;
  std::int64_t lo = 0;              // total_time(0) == 0
  std::int64_t hi = d.max_cameras;  // over budget
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (total_time(d, mid) <= budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Smallest total time strictly above the threshold, or +inf.
double next_value_above(const DeviceProfile& d, double threshold) {
  if (!(total_time(d, d.max_cameras) > threshold)) {
    return std::numeric_limits<double>::infinity();
  }
  std::int64_t lo = 0;              // t(0) == 0 <= threshold
  std::int64_t hi = d.max_cameras;  // t(hi) > threshold
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (total_time(d, mid) > threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return total_time(d, hi);
}

}  // namespace

CountAllocation solve_rtp_counts(const EdgeProfile& edge, std::int64_t camera_count) {
  if (camera_count < 0) {
    throw std::invalid_argument("solve_rtp: negative camera count");
  }
  CountAllocation out;
  out.device_ids.reserve(edge.devices.size());
  for (const DeviceProfile& d : edge.devices) out.device_ids.push_back(d.device_id);
  out.counts.assign(edge.devices.size(), 0);
  if (camera_count == 0) return out;

  std::vector<std::size_t> usable;  // indices into edge.devices
  std::int64_t cap_total = 0;
  for (std::size_t i = 0; i < edge.devices.size(); ++i) {
    if (edge.devices[i].max_cameras > 0) {
      usable.push_back(i);
      cap_total += edge.devices[i].max_cameras;
    }
  }
  if (usable.empty()) {
    throw std::invalid_argument("solve_rtp: edge " + std::to_string(edge.edge_id) +
                                " has no usable devices");
  }
  if (cap_total < camera_count) {
    throw std::invalid_argument("solve_rtp: edge " + std::to_string(edge.edge_id) +
                                " is infeasible: total capacity " + std::to_string(cap_total) +
                                " < " + std::to_string(camera_count) + " cameras");
  }

  const auto feasible = [&](double budget) {
    std::int64_t sum = 0;
    for (std::size_t i : usable) {
      sum += capacity_at(edge.devices[i], budget);
      if (sum >= camera_count) return true;
    }
    return false;
  };

  // Bisect the budget down to double precision, then pin the makespan to an
  // exactly achievable device time. Any feasible budget below the optimum
  // would yield an allocation beating it, so the first feasible achievable
  // value is the exact min-max.
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i : usable) {
    hi = std::max(hi, total_time(edge.devices[i], edge.devices[i].max_cameras));
  }
  if (feasible(lo)) {
    hi = lo;
  } else {
    for (;;) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo) || !(mid < hi)) break;
      if (feasible(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    for (;;) {
      double candidate = std::numeric_limits<double>::infinity();
      for (std::size_t i : usable) {
        candidate = std::min(candidate, next_value_above(edge.devices[i], lo));
      }
      if (!(candidate <= hi)) break;  // keep the bisection bound
      if (feasible(candidate)) {
        hi = candidate;
        break;
      }
      lo = candidate;
    }
  }
  const double target = hi;

  std::vector<std::int64_t> counts(edge.devices.size(), 0);
  std::int64_t assigned = 0;
  for (std::size_t i : usable) {
    counts[i] = capacity_at(edge.devices[i], target);
    assigned += counts[i];
  }

  // Trim surplus off whichever device currently runs longest.
  while (assigned > camera_count) {
    std::size_t worst = edge.devices.size();
    double worst_time = -1.0;
    for (std::size_t i : usable) {
      if (counts[i] == 0) continue;
      const double t = total_time(edge.devices[i], counts[i]);
      if (t > worst_time) {
        worst_time = t;
        worst = i;
      }
    }
    --counts[worst];
    --assigned;
  }

  // 1-move local search: certifies that shifting any single camera between
  // two devices cannot strictly reduce the makespan.
  for (;;) {
    double makespan = 0.0;
    for (std::size_t i : usable) {
      makespan = std::max(makespan, total_time(edge.devices[i], counts[i]));
    }
    bool improved = false;
    for (std::size_t a : usable) {
      if (counts[a] == 0) continue;
      for (std::size_t b : usable) {
        if (a == b || counts[b] >= edge.devices[b].max_cameras) continue;
        double moved = 0.0;
        for (std::size_t i : usable) {
          const std::int64_t c = counts[i] - (i == a ? 1 : 0) + (i == b ? 1 : 0);
          moved = std::max(moved, total_time(edge.devices[i], c));
        }
        if (moved < makespan) {
          --counts[a];
          ++counts[b];
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
    if (!improved) {
      out.makespan = makespan;
      break;
    }
  }

  out.counts = std::move(counts);
  return out;
}

RegionPlan solve_rtp(const EdgeProfile& edge, const CameraSet& cams) {
  const CountAllocation counts = solve_rtp_counts(edge, static_cast<std::int64_t>(cams.size()));

  RegionPlan rp;
  rp.edge_id = edge.edge_id;
  rp.predicted_makespan = counts.makespan;
  for (std::size_t i = 0; i < edge.devices.size(); ++i) {
    rp.allocations.push_back(device_time(edge.devices[i], counts.counts[i]));
  }

  const CameraSet ordered = longest_axis_order(cams);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < edge.devices.size(); ++i) {
    CameraSet chunk;
    const std::size_t n = static_cast<std::size_t>(counts.counts[i]);
    chunk.cameras.assign(ordered.cameras.begin() + offset, ordered.cameras.begin() + offset + n);
    offset += n;
    rp.sub_regions[edge.devices[i].device_id] = std::move(chunk);
  }
  return rp;
}

double estimate_makespan(const EdgeProfile& edge, std::int64_t camera_count) {
  return solve_rtp_counts(edge, camera_count).makespan;
}

}  // namespace radiant

#include "radiant/arp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace radiant {

namespace {

EdgeTimeBreakdown breakdown_from_counts(const EdgeProfile& edge, const CountAllocation& alloc,
                                        std::int64_t total_cameras) {
  EdgeTimeBreakdown t;
  t.train = alloc.makespan;
  t.aggregate = edge.aggregate_curve.eval(total_cameras);
  double size_sum = 0.0;
  for (std::size_t i = 0; i < edge.devices.size(); ++i) {
    size_sum += edge.devices[i].size_curve.eval(alloc.counts[i]);
  }
  if (size_sum > 0.0) {
    if (!(edge.bandwidth_to_cloud_mb_s > 0.0)) {
      throw std::invalid_argument("edge_time: edge " + std::to_string(edge.edge_id) +
                                  " has non-positive cloud bandwidth");
    }
    t.upload = size_sum / edge.bandwidth_to_cloud_mb_s;
  }
  t.total = t.train + t.aggregate + t.upload;
  return t;
}

std::int64_t usable_capacity(const EdgeProfile& edge) {
  std::int64_t cap = 0;
  for (const DeviceProfile& d : edge.devices) {
    if (d.max_cameras > 0) cap += d.max_cameras;
  }
  return cap;
}

WeightedPartition make_partition(const Scenario& scenario, const std::vector<double>& weights) {
  WeightedPartition part;
  part.bounding_box = scenario.bounding_box;
  part.sites.reserve(scenario.edges.size());
  for (std::size_t i = 0; i < scenario.edges.size(); ++i) {
    part.sites.push_back({scenario.edges[i].edge_id, scenario.edges[i].position, weights[i]});
  }
  return part;
}

struct IterationState {
  bool feasible = false;
  std::vector<std::int64_t> counts;  // cameras per edge, by edge index
  std::vector<EdgeTimeBreakdown> times;
  double mean_total = 0.0;
  double residual_abs = 0.0;
  double residual_ratio = 0.0;
  std::size_t outlier = 0;           // argmax |T - mean|, or worst overflow when infeasible
  std::int64_t worst_overflow = 0;
};

IterationState evaluate(const Scenario& scenario, const std::vector<double>& weights,
                        const std::vector<std::int64_t>& capacities) {
  const WeightedPartition part = make_partition(scenario, weights);
  const auto by_site = partition_cameras(part, scenario.cameras);

  IterationState st;
  st.counts.resize(scenario.edges.size(), 0);
  for (std::size_t i = 0; i < scenario.edges.size(); ++i) {
    st.counts[i] =
        static_cast<std::int64_t>(by_site.at(scenario.edges[i].edge_id).size());
  }

  std::int64_t worst = 0;
  std::size_t worst_idx = 0;
  for (std::size_t i = 0; i < scenario.edges.size(); ++i) {
    const std::int64_t overflow = st.counts[i] - capacities[i];
    if (overflow > worst) {
      worst = overflow;
      worst_idx = i;
    }
  }
  if (worst > 0) {
    st.feasible = false;
    st.outlier = worst_idx;
    st.worst_overflow = worst;
    return st;
  }

  st.feasible = true;
  st.times.resize(scenario.edges.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < scenario.edges.size(); ++i) {
    const CountAllocation alloc = solve_rtp_counts(scenario.edges[i], st.counts[i]);
    st.times[i] = breakdown_from_counts(scenario.edges[i], alloc, st.counts[i]);
    sum += st.times[i].total;
  }
  st.mean_total = sum / static_cast<double>(scenario.edges.size());
  for (std::size_t i = 0; i < scenario.edges.size(); ++i) {
    const double dev = std::abs(st.times[i].total - st.mean_total);
    if (dev > st.residual_abs) {
      st.residual_abs = dev;
      st.outlier = i;
    }
  }
  st.residual_ratio = st.mean_total > 0.0 ? st.residual_abs / st.mean_total : 0.0;
  return st;
}

Plan build_plan(const Scenario& scenario, const std::vector<double>& weights) {
  Plan p;
  p.partition = make_partition(scenario, weights);
  const auto by_site = partition_cameras(p.partition, scenario.cameras);
  for (const EdgeProfile& edge : scenario.edges) {
    const CameraSet& cams = by_site.at(edge.edge_id);
    RegionPlan rp = solve_rtp(edge, cams);
    CountAllocation alloc;
    alloc.makespan = rp.predicted_makespan;
    for (const DeviceAllocation& a : rp.allocations) {
      alloc.device_ids.push_back(a.device_id);
      alloc.counts.push_back(a.camera_count);
    }
    p.predicted_edge_times[edge.edge_id] =
        breakdown_from_counts(edge, alloc, static_cast<std::int64_t>(cams.size()));
    p.per_edge[edge.edge_id] = std::move(rp);
  }
  return p;
}

void check_scenario_basics(const Scenario& scenario, const char* who) {
  if (scenario.edges.empty()) {
    throw std::invalid_argument(std::string(who) + ": scenario has no edges");
  }
  if (!(scenario.params.step_d > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": step_d must be > 0");
  }
  if (!(scenario.params.threshold_s > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": threshold_s must be > 0");
  }
}

}  // namespace

EdgeTimeBreakdown edge_time(const EdgeProfile& edge, const CameraSet& cams) {
  const std::int64_t n = static_cast<std::int64_t>(cams.size());
  return breakdown_from_counts(edge, solve_rtp_counts(edge, n), n);
}

Plan plan(const Scenario& scenario) {
  check_scenario_basics(scenario, "plan");
  const std::size_t m = scenario.edges.size();

  std::vector<std::int64_t> capacities(m);
  for (std::size_t i = 0; i < m; ++i) capacities[i] = usable_capacity(scenario.edges[i]);

  std::vector<double> weights(m, 0.0);
  std::vector<double> step(m, scenario.params.step_d);
  std::vector<int> last_sign(m, 0);
  std::vector<int> flips(m, 0);

  std::vector<double> history;
  std::vector<double> best_weights;
  double best_ratio = std::numeric_limits<double>::infinity();
  bool have_best = false;
  std::int64_t best_overflow = std::numeric_limits<std::int64_t>::max();
  std::string overflow_note;
  int iterations = 0;

  IterationState st = evaluate(scenario, weights, capacities);
  for (;;) {
    history.push_back(st.feasible ? st.residual_ratio
                                  : std::numeric_limits<double>::infinity());
    if (st.feasible && st.residual_ratio < best_ratio) {
      best_ratio = st.residual_ratio;
      best_weights = weights;
      have_best = true;
    }
    if (!st.feasible && st.worst_overflow < best_overflow) {
      best_overflow = st.worst_overflow;
      overflow_note =
          "edge " + std::to_string(scenario.edges[st.outlier].edge_id) + " holds " +
          std::to_string(st.counts[st.outlier]) + " cameras against capacity " +
          std::to_string(capacities[st.outlier]);
    }
    if (st.feasible && st.residual_abs <= scenario.params.threshold_s) break;
    if (iterations >= scenario.params.max_iterations) break;

    const std::size_t mover = st.outlier;
    // Too slow (or over capacity): shrink the cell. Too fast: expand it.
    const int sign =
        (!st.feasible || st.times[mover].total > st.mean_total) ? -1 : +1;

    std::vector<double> trial = weights;
    trial[mover] += sign * step[mover];
    IterationState trial_st = evaluate(scenario, trial, capacities);
    ++iterations;

    if (!trial_st.feasible && st.feasible) {
      step[mover] *= 0.5;  // rejected move; retry the edge with a finer step
      continue;
    }
    if (last_sign[mover] != 0 && sign != last_sign[mover]) {
      if (++flips[mover] >= 2) {
        step[mover] *= 0.5;  // oscillating around the balance point
        flips[mover] = 0;
      }
    } else {
      flips[mover] = 0;
    }
    last_sign[mover] = sign;
    weights = std::move(trial);
    st = trial_st;
  }

  if (!have_best) {
    throw std::runtime_error("plan: no feasible partition found in " +
                             std::to_string(iterations) + " iterations; best iterate: " +
                             overflow_note);
  }

  Plan p = build_plan(scenario, best_weights);
  p.iterations_used = iterations;
  p.residual_ratio_history = std::move(history);
  return p;
}

namespace {

std::vector<std::int64_t> water_fill_equal(const EdgeProfile& edge, std::int64_t n) {
  std::vector<std::int64_t> counts(edge.devices.size(), 0);
  if (n == 0) return counts;

  std::vector<std::size_t> active;
  std::int64_t cap_total = 0;
  for (std::size_t i = 0; i < edge.devices.size(); ++i) {
    if (edge.devices[i].max_cameras > 0) {
      active.push_back(i);
      cap_total += edge.devices[i].max_cameras;
    }
  }
  if (cap_total < n) {
    throw std::invalid_argument("plan_even: edge " + std::to_string(edge.edge_id) +
                                " capacity " + std::to_string(cap_total) +
                                " cannot hold " + std::to_string(n) + " cameras");
  }

  std::int64_t remaining = n;
  while (remaining > 0) {
    const std::int64_t k = static_cast<std::int64_t>(active.size());
    const std::int64_t share = remaining / k;
    const std::int64_t extra = remaining % k;
    for (std::size_t idx = 0; idx < active.size(); ++idx) {
      const std::size_t i = active[idx];
      const std::int64_t want = share + (static_cast<std::int64_t>(idx) < extra ? 1 : 0);
      const std::int64_t give = std::min(want, edge.devices[i].max_cameras - counts[i]);
      counts[i] += give;
      remaining -= give;
    }
    std::vector<std::size_t> still;
    for (std::size_t i : active) {
      if (counts[i] < edge.devices[i].max_cameras) still.push_back(i);
    }
    active = std::move(still);
  }
  return counts;
}

}  // namespace

Plan plan_even(const Scenario& scenario) {
  check_scenario_basics(scenario, "plan_even");

  Plan p;
  p.even = true;
  std::vector<double> weights(scenario.edges.size(), 0.0);
  p.partition = make_partition(scenario, weights);
  const auto by_site = partition_cameras(p.partition, scenario.cameras);

  double sum = 0.0;
  std::vector<double> totals;
  for (const EdgeProfile& edge : scenario.edges) {
    const CameraSet& cams = by_site.at(edge.edge_id);
    const std::int64_t n = static_cast<std::int64_t>(cams.size());
    const std::vector<std::int64_t> counts = water_fill_equal(edge, n);

    RegionPlan rp;
    rp.edge_id = edge.edge_id;
    CountAllocation alloc;
    for (std::size_t i = 0; i < edge.devices.size(); ++i) {
      DeviceAllocation a = device_time(edge.devices[i], counts[i]);
      rp.predicted_makespan = std::max(rp.predicted_makespan, a.predicted_total);
      rp.allocations.push_back(a);
      alloc.device_ids.push_back(edge.devices[i].device_id);
      alloc.counts.push_back(counts[i]);
    }
    alloc.makespan = rp.predicted_makespan;
    const CameraSet ordered = longest_axis_order(cams);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < edge.devices.size(); ++i) {
      CameraSet chunk;
      const std::size_t c = static_cast<std::size_t>(counts[i]);
      chunk.cameras.assign(ordered.cameras.begin() + offset,
                           ordered.cameras.begin() + offset + c);
      offset += c;
      rp.sub_regions[edge.devices[i].device_id] = std::move(chunk);
    }

    const EdgeTimeBreakdown t = breakdown_from_counts(edge, alloc, n);
    p.predicted_edge_times[edge.edge_id] = t;
    p.per_edge[edge.edge_id] = std::move(rp);
    totals.push_back(t.total);
    sum += t.total;
  }

  const double mean = sum / static_cast<double>(totals.size());
  double residual = 0.0;
  for (double t : totals) residual = std::max(residual, std::abs(t - mean));
  p.residual_ratio_history.push_back(mean > 0.0 ? residual / mean : 0.0);
  p.iterations_used = 0;
  return p;
}

}  // namespace radiant

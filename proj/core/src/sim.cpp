#include "radiant/sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace radiant {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::device_init_done: return "device_init_done";
    case EventKind::device_train_done: return "device_train_done";
    case EventKind::device_upload_done: return "device_upload_done";
    case EventKind::edge_aggregate_done: return "edge_aggregate_done";
    case EventKind::edge_upload_done: return "edge_upload_done";
    case EventKind::cloud_aggregate_done: return "cloud_aggregate_done";
  }
  return "device_init_done";
}

LatencyReport simulate(const Scenario& scenario, const Plan& plan,
                       const std::optional<CostCurve>& cloud_curve) {
  if (plan.per_edge.size() != scenario.edges.size()) {
    throw std::invalid_argument("simulate: plan covers " + std::to_string(plan.per_edge.size()) +
                                " edges but the scenario has " +
                                std::to_string(scenario.edges.size()));
  }

  LatencyReport report;
  double last_edge_upload = 0.0;
  std::int64_t total_cameras = 0;

  for (const EdgeProfile& edge : scenario.edges) {
    const auto it = plan.per_edge.find(edge.edge_id);
    if (it == plan.per_edge.end()) {
      throw std::invalid_argument("simulate: plan is missing edge " +
                                  std::to_string(edge.edge_id));
    }
    const RegionPlan& rp = it->second;

    EdgeTimeline et;
    et.edge_id = edge.edge_id;
    std::int64_t edge_cameras = 0;
    double size_sum = 0.0;

    for (const DeviceAllocation& a : rp.allocations) {
      const DeviceProfile* profile = nullptr;
      for (const DeviceProfile& d : edge.devices) {
        if (d.device_id == a.device_id) {
          profile = &d;
          break;
        }
      }
      if (profile == nullptr) {
        throw std::invalid_argument("simulate: plan references unknown device " +
                                    std::to_string(a.device_id) + " on edge " +
                                    std::to_string(edge.edge_id));
      }
      edge_cameras += a.camera_count;
      size_sum += profile->size_curve.eval(a.camera_count);
      if (a.camera_count == 0) continue;

      const DeviceAllocation d = device_time(*profile, a.camera_count);
      DeviceTimeline dt;
      dt.edge_id = edge.edge_id;
      dt.device_id = d.device_id;
      dt.camera_count = d.camera_count;
      dt.init = d.predicted_init;
      dt.train = d.predicted_train;
      dt.upload = d.predicted_upload;
      dt.total = d.predicted_total;
      report.per_device.push_back(dt);

      const double init_done = dt.init;
      const double train_done = init_done + dt.train;
      const double upload_done = train_done + dt.upload;
      report.events.push_back({init_done, EventKind::device_init_done, edge.edge_id, d.device_id});
      report.events.push_back({train_done, EventKind::device_train_done, edge.edge_id, d.device_id});
      report.events.push_back({upload_done, EventKind::device_upload_done, edge.edge_id, d.device_id});
      et.train = std::max(et.train, upload_done);
    }

    total_cameras += edge_cameras;
    et.aggregate_start = et.train;
    et.aggregate = edge.aggregate_curve.eval(edge_cameras);
    if (size_sum > 0.0) {
      if (!(edge.bandwidth_to_cloud_mb_s > 0.0)) {
        throw std::invalid_argument("simulate: edge " + std::to_string(edge.edge_id) +
                                    " has non-positive cloud bandwidth");
      }
      et.upload = size_sum / edge.bandwidth_to_cloud_mb_s;
    }
    const double aggregate_done = et.aggregate_start + et.aggregate;
    et.upload_done = aggregate_done + et.upload;
    et.total = et.train + et.aggregate + et.upload;
    report.events.push_back({aggregate_done, EventKind::edge_aggregate_done, edge.edge_id, -1});
    report.events.push_back({et.upload_done, EventKind::edge_upload_done, edge.edge_id, -1});
    last_edge_upload = std::max(last_edge_upload, et.upload_done);
    report.per_edge.push_back(et);
  }

  report.cloud_start = last_edge_upload;
  report.cloud_merge_mode = !cloud_curve.has_value();
  report.cloud_duration = cloud_curve ? cloud_curve->eval(total_cameras) : 0.0;
  report.end_to_end = report.cloud_start + report.cloud_duration;
  report.events.push_back({report.end_to_end, EventKind::cloud_aggregate_done, -1, -1});

  std::stable_sort(report.events.begin(), report.events.end(),
                   [](const Event& a, const Event& b) {
                     if (a.time != b.time) return a.time < b.time;
                     if (a.edge_id != b.edge_id) return a.edge_id < b.edge_id;
                     if (a.device_id != b.device_id) return a.device_id < b.device_id;
                     return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                   });
  return report;
}

LatencyReport simulate(const Scenario& scenario, const Plan& plan) {
  return simulate(scenario, plan, scenario.cloud_aggregate_curve);
}

StrategyComparison compare_strategies(const Scenario& scenario) {
  StrategyComparison cmp;

  const Plan even_plan = plan_even(scenario);
  const LatencyReport even_report = simulate(scenario, even_plan);
  cmp.even.strategy = "even";
  cmp.even.end_to_end = even_report.end_to_end;
  cmp.even.per_edge = even_report.per_edge;

  const Plan arp_plan = plan(scenario);
  const LatencyReport arp_report = simulate(scenario, arp_plan);
  cmp.arp.strategy = "arp";
  cmp.arp.end_to_end = arp_report.end_to_end;
  cmp.arp.per_edge = arp_report.per_edge;

  cmp.reduction_percent =
      cmp.even.end_to_end > 0.0
          ? 100.0 * (cmp.even.end_to_end - cmp.arp.end_to_end) / cmp.even.end_to_end
          : 0.0;
  return cmp;
}

}  // namespace radiant

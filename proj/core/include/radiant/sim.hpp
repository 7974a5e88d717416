#pragma once

#include <optional>
#include <string>
#include <vector>

#include "radiant/arp.hpp"

namespace radiant {

enum class EventKind {
  device_init_done,
  device_train_done,
  device_upload_done,
  edge_aggregate_done,
  edge_upload_done,
  cloud_aggregate_done,
};

std::string to_string(EventKind kind);

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::device_init_done;
  std::int64_t edge_id = -1;    // -1 for the cloud event
  std::int64_t device_id = -1;  // -1 for edge / cloud scope
};

struct DeviceTimeline {
  std::int64_t edge_id = 0;
  std::int64_t device_id = 0;
  std::int64_t camera_count = 0;
  double init = 0.0;
  double train = 0.0;
  double upload = 0.0;
  double total = 0.0;
};

struct EdgeTimeline {
  std::int64_t edge_id = 0;
  double train = 0.0;            // last device upload (all devices start at 0)
  double aggregate = 0.0;
  double upload = 0.0;
  double total = 0.0;
  double aggregate_start = 0.0;  // equals train
  double upload_done = 0.0;
};

struct LatencyReport {
  std::vector<Event> events;  // ordered by (time, edge, device, kind)
  std::vector<DeviceTimeline> per_device;
  std::vector<EdgeTimeline> per_edge;
  double cloud_start = 0.0;
  double cloud_duration = 0.0;
  bool cloud_merge_mode = false;
  double end_to_end = 0.0;  // cloud_aggregate_done time
};

/// Replays a plan as a deterministic timeline: devices start at t = 0, each
/// edge aggregates once its last device upload lands, the cloud aggregates
/// once the last edge upload lands. cloud_curve absent means merge-mode
/// (zero-duration cloud stage). No link contention is modeled.
LatencyReport simulate(const Scenario& scenario, const Plan& plan,
                       const std::optional<CostCurve>& cloud_curve);

/// Uses the scenario's own cloud curve (merge-mode when absent).
LatencyReport simulate(const Scenario& scenario, const Plan& plan);

struct StrategyRow {
  std::string strategy;
  double end_to_end = 0.0;
  std::vector<EdgeTimeline> per_edge;
};

struct StrategyComparison {
  StrategyRow even;
  StrategyRow arp;
  double reduction_percent = 0.0;  // 100 * (even - arp) / even
};

StrategyComparison compare_strategies(const Scenario& scenario);

}  // namespace radiant

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radiant/geometry.hpp"

namespace radiant {

enum class CurveKind { train_time, init_time, model_size, aggregate_time };

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& s);

struct ProfileSample {
  std::int64_t image_count = 0;  // >= 1
  double value = 0.0;            // seconds or megabytes, > 0
};

/// Offline profile points: image_count strictly increasing, values
/// non-decreasing.
struct ProfileSamples {
  std::vector<ProfileSample> points;
  CurveKind kind = CurveKind::train_time;
};

/// Monotone piecewise-linear curve through profile samples. Left of the first
/// sample it runs linearly through the origin; right of the last it
/// extrapolates with the final segment's slope. eval(0) == 0 and eval
/// reproduces every sample exactly.
class CostCurve {
 public:
  CostCurve() = default;

  double eval(std::int64_t image_count) const;
  double extrapolation_slope() const { return extrapolation_slope_; }
  const ProfileSamples& samples() const { return samples_; }
  bool valid() const { return samples_.points.size() >= 2; }

 private:
  friend CostCurve fit_curve(const ProfileSamples& samples);

  ProfileSamples samples_;
  double extrapolation_slope_ = 0.0;
};

/// Throws std::invalid_argument on fewer than 2 samples or a non-monotone
/// pair (named in the message).
CostCurve fit_curve(const ProfileSamples& samples);

double eval_curve(const CostCurve& curve, std::int64_t image_count);

struct InvertResult {
  std::int64_t count = 0;
  bool saturated = false;  // budget admits every count up to the scan bound
};

/// Largest integer n with eval(n) <= budget. When the budget is not exceeded
/// anywhere below scan_bound the bound itself is returned and flagged.
InvertResult invert_curve(const CostCurve& curve, double budget,
                          std::int64_t scan_bound = 10'000'000);

struct DeviceProfile {
  std::int64_t device_id = 0;
  CostCurve train_curve;   // seconds vs image count (F_n)
  CostCurve init_curve;    // seconds vs image count (G)
  CostCurve size_curve;    // megabytes vs image count (H)
  double bandwidth_mb_s = 0.0;   // device -> edge link
  std::int64_t max_cameras = 0;  // video-memory cap; 0 means unusable
};

struct EdgeProfile {
  std::int64_t edge_id = 0;
  Point2 position;
  double bandwidth_to_cloud_mb_s = 0.0;
  CostCurve aggregate_curve;           // seconds vs region camera count (F_m)
  std::vector<DeviceProfile> devices;  // ascending device_id
};

}  // namespace radiant

#include "radiant/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radiant {

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::train_time: return "train_time";
    case CurveKind::init_time: return "init_time";
    case CurveKind::model_size: return "model_size";
    case CurveKind::aggregate_time: return "aggregate_time";
  }
  return "train_time";
}

CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "train_time") return CurveKind::train_time;
  if (s == "init_time") return CurveKind::init_time;
  if (s == "model_size") return CurveKind::model_size;
  if (s == "aggregate_time") return CurveKind::aggregate_time;
  throw std::invalid_argument("unknown curve kind: " + s);
}

namespace {

std::string sample_str(const ProfileSample& p) {
  return "(" + std::to_string(p.image_count) + ", " + std::to_string(p.value) + ")";
}

}  // namespace

CostCurve fit_curve(const ProfileSamples& samples) {
  const auto& pts = samples.points;
  if (pts.size() < 2) {
    throw std::invalid_argument("fit_curve: need at least 2 samples, got " +
                                std::to_string(pts.size()));
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].image_count < 1) {
      throw std::invalid_argument("fit_curve: image_count must be >= 1 at sample " +
                                  sample_str(pts[k]));
    }
    if (!(pts[k].value > 0.0) || !std::isfinite(pts[k].value)) {
      throw std::invalid_argument("fit_curve: values must be finite and > 0 at sample " +
                                  sample_str(pts[k]));
    }
    if (k > 0) {
      if (pts[k].image_count <= pts[k - 1].image_count) {
        throw std::invalid_argument("fit_curve: image counts not strictly increasing between " +
                                    sample_str(pts[k - 1]) + " and " + sample_str(pts[k]));
      }
      if (pts[k].value < pts[k - 1].value) {
        throw std::invalid_argument("fit_curve: values decrease between " +
                                    sample_str(pts[k - 1]) + " and " + sample_str(pts[k]));
      }
    }
  }
  CostCurve curve;
  curve.samples_ = samples;
  const ProfileSample& a = pts[pts.size() - 2];
  const ProfileSample& b = pts[pts.size() - 1];
  curve.extrapolation_slope_ =
      (b.value - a.value) / static_cast<double>(b.image_count - a.image_count);
  return curve;
}

double CostCurve::eval(std::int64_t image_count) const {
  if (image_count < 0) {
    throw std::invalid_argument("CostCurve::eval: negative image count " +
                                std::to_string(image_count));
  }
  if (!valid()) {
    throw std::logic_error("CostCurve::eval: curve was not fitted");
  }
  if (image_count == 0) return 0.0;

  const auto& pts = samples_.points;
  // exact sample hits return the stored value untouched
  auto it = std::lower_bound(pts.begin(), pts.end(), image_count,
                             [](const ProfileSample& p, std::int64_t c) {
                               return p.image_count < c;
                             });
  if (it != pts.end() && it->image_count == image_count) return it->value;

  if (it == pts.begin()) {
    // origin-anchored segment from (0,0) to the first sample
    const ProfileSample& first = pts.front();
    return first.value * (static_cast<double>(image_count) /
                          static_cast<double>(first.image_count));
  }
  if (it == pts.end()) {
    const ProfileSample& last = pts.back();
    return last.value +
           extrapolation_slope_ * static_cast<double>(image_count - last.image_count);
  }
  const ProfileSample& lo = *(it - 1);
  const ProfileSample& hi = *it;
  const double t = static_cast<double>(image_count - lo.image_count) /
                   static_cast<double>(hi.image_count - lo.image_count);
  return lo.value + (hi.value - lo.value) * t;
}

double eval_curve(const CostCurve& curve, std::int64_t image_count) {
  return curve.eval(image_count);
}

InvertResult invert_curve(const CostCurve& curve, double budget, std::int64_t scan_bound) {
  if (budget < 0.0) return {0, false};
  if (curve.eval(scan_bound) <= budget) return {scan_bound, true};
  std::int64_t lo = 0;          // eval(0) == 0 <= budget
  std::int64_t hi = scan_bound; // eval(hi) > budget
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (curve.eval(mid) <= budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, false};
}

}  // namespace radiant

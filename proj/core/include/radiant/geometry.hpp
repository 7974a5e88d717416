#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace radiant {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  bool contains(const Point2& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

struct Camera {
  std::int64_t id = 0;
  Point2 position;
};

/// Ordered camera list; ids are unique and list order is stable.
struct CameraSet {
  std::vector<Camera> cameras;

  std::size_t size() const { return cameras.size(); }
  bool empty() const { return cameras.empty(); }
};

struct Site {
  std::int64_t id = 0;
  Point2 position;
  double weight = 0.0;  // meters; raising it grows the cell uniformly
};

/// Additively weighted Voronoi partition of the bounding box. A point belongs
/// to the site minimizing euclidean_distance(p, site) - weight, so the cells
/// cover the box and never overlap by construction.
struct WeightedPartition {
  std::vector<Site> sites;  // unique ids
  BoundingBox bounding_box;
};

/// Site owning point p; ties go to the lowest site id.
std::int64_t assign_cell(const WeightedPartition& partition, const Point2& p);

/// Splits cams into one CameraSet per site (empty sets included). Throws if a
/// camera lies outside the bounding box, naming the camera id.
std::map<std::int64_t, CameraSet> partition_cameras(const WeightedPartition& partition,
                                                    const CameraSet& cams);

/// Closed polyline tracing the cell of site_id, sampled on a
/// (resolution+1)^2 node grid over the bounding box. Every vertex is a grid
/// node assigned to site_id; an empty cell yields an empty polyline.
std::vector<Point2> cell_boundary_polyline(const WeightedPartition& partition,
                                           std::int64_t site_id, int resolution);

/// Cameras sorted along the longer axis of their bounding rectangle
/// (x if width >= height, else y); coordinate ties break by camera id.
CameraSet longest_axis_order(const CameraSet& cams);

}  // namespace radiant

#include "radiant/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace radiant {

double distance(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

std::int64_t assign_cell(const WeightedPartition& partition, const Point2& p) {
  if (partition.sites.empty()) {
    throw std::invalid_argument("assign_cell: no sites");
  }
  double best_score = std::numeric_limits<double>::infinity();
  std::int64_t best_id = 0;
  bool have_best = false;
  for (const Site& s : partition.sites) {
    const double score = distance(p, s.position) - s.weight;
    if (!have_best || score < best_score || (score == best_score && s.id < best_id)) {
      best_score = score;
      best_id = s.id;
      have_best = true;
    }
  }
  return best_id;
}

std::map<std::int64_t, CameraSet> partition_cameras(const WeightedPartition& partition,
                                                    const CameraSet& cams) {
  std::map<std::int64_t, CameraSet> out;
  for (const Site& s : partition.sites) {
    out[s.id];  // every site gets an entry, possibly empty
  }
  for (const Camera& cam : cams.cameras) {
    if (!partition.bounding_box.contains(cam.position)) {
      throw std::invalid_argument("partition_cameras: camera " + std::to_string(cam.id) +
                                  " lies outside the bounding box");
    }
    out[assign_cell(partition, cam.position)].cameras.push_back(cam);
  }
  return out;
}

namespace {

struct Node {
  int i = 0;
  int j = 0;
  bool operator==(const Node& o) const { return i == o.i && j == o.j; }
};

// Clockwise 8-neighbor ring starting west (y grows upward).
constexpr int kRing[8][2] = {{-1, 0}, {-1, 1}, {0, 1}, {1, 1},
                             {1, 0},  {1, -1}, {0, -1}, {-1, -1}};

int ring_index(const Node& from, const Node& to) {
  const int di = to.i - from.i;
  const int dj = to.j - from.j;
  for (int k = 0; k < 8; ++k) {
    if (kRing[k][0] == di && kRing[k][1] == dj) return k;
  }
  throw std::logic_error("cell_boundary_polyline: non-adjacent backtrack node");
}

struct TraceStep {
  Node next;
  Node backtrack;
};

}  // namespace

std::vector<Point2> cell_boundary_polyline(const WeightedPartition& partition,
                                           std::int64_t site_id, int resolution) {
  if (partition.sites.empty()) {
    throw std::invalid_argument("cell_boundary_polyline: no sites");
  }
  if (resolution < 8) {
    throw std::invalid_argument("cell_boundary_polyline: resolution must be >= 8");
  }
  const bool known = std::any_of(partition.sites.begin(), partition.sites.end(),
                                 [&](const Site& s) { return s.id == site_id; });
  if (!known) {
    throw std::invalid_argument("cell_boundary_polyline: unknown site_id " +
                                std::to_string(site_id));
  }

  const BoundingBox& box = partition.bounding_box;
  const int n = resolution + 1;  // grid nodes per axis
  const double dx = box.width() / resolution;
  const double dy = box.height() / resolution;
  const auto node_point = [&](const Node& nd) {
    return Point2{box.min_x + nd.i * dx, box.min_y + nd.j * dy};
  };

  std::vector<char> owned(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      owned[static_cast<std::size_t>(j) * n + i] =
          assign_cell(partition, node_point({i, j})) == site_id;
    }
  }
  const auto is_owned = [&](const Node& nd) {
    return nd.i >= 0 && nd.j >= 0 && nd.i < n && nd.j < n &&
           owned[static_cast<std::size_t>(nd.j) * n + nd.i];
  };

  // Lexicographically first owned node (lowest row, then column); its west
  // neighbor is guaranteed background, which seeds the Moore trace.
  Node start{-1, -1};
  for (int j = 0; j < n && start.i < 0; ++j) {
    for (int i = 0; i < n; ++i) {
      if (owned[static_cast<std::size_t>(j) * n + i]) {
        start = {i, j};
        break;
      }
    }
  }
  if (start.i < 0) return {};

  const auto advance = [&](const Node& b, const Node& c) -> std::optional<TraceStep> {
    const int first = ring_index(b, c);
    for (int k = 1; k <= 8; ++k) {
      const int idx = (first + k) % 8;
      const Node cand{b.i + kRing[idx][0], b.j + kRing[idx][1]};
      if (is_owned(cand)) {
        const int prev = (first + k - 1) % 8;
        return TraceStep{cand, Node{b.i + kRing[prev][0], b.j + kRing[prev][1]}};
      }
    }
    return std::nullopt;  // isolated node
  };

  std::vector<Node> contour{start};
  const Node c0{start.i - 1, start.j};
  auto step = advance(start, c0);
  if (step) {
    const Node first_next = step->next;
    Node b = step->next;
    Node c = step->backtrack;
    std::size_t guard = static_cast<std::size_t>(8) * n * n + 16;
    while (guard-- > 0) {
      if (b == start) {
        auto probe = advance(b, c);
        if (!probe || probe->next == first_next) break;  // Jacob's criterion
        contour.push_back(b);
        b = probe->next;
        c = probe->backtrack;
        continue;
      }
      contour.push_back(b);
      auto nxt = advance(b, c);
      if (!nxt) break;
      b = nxt->next;
      c = nxt->backtrack;
    }
  }

  std::vector<Point2> poly;
  poly.reserve(contour.size() + 1);
  for (const Node& nd : contour) poly.push_back(node_point(nd));
  if (poly.size() > 1) poly.push_back(poly.front());  // explicit closure
  return poly;
}

CameraSet longest_axis_order(const CameraSet& cams) {
  if (cams.empty()) return {};
  double min_x = cams.cameras.front().position.x, max_x = min_x;
  double min_y = cams.cameras.front().position.y, max_y = min_y;
  for (const Camera& c : cams.cameras) {
    min_x = std::min(min_x, c.position.x);
    max_x = std::max(max_x, c.position.x);
    min_y = std::min(min_y, c.position.y);
    max_y = std::max(max_y, c.position.y);
  }
  const bool by_x = (max_x - min_x) >= (max_y - min_y);
  CameraSet out = cams;
  std::sort(out.cameras.begin(), out.cameras.end(), [&](const Camera& a, const Camera& b) {
    const double ka = by_x ? a.position.x : a.position.y;
    const double kb = by_x ? b.position.x : b.position.y;
    if (ka != kb) return ka < kb;
    return a.id < b.id;
  });
  return out;
}

}  // namespace radiant

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radiant/splat.hpp"
#include "splat_internal.hpp"

namespace radiant {

View full_view(const SplatModel& model) {
  return View{0, 0, model.canvas_width, model.canvas_height};
}

ImageBuffer crop(const ImageBuffer& img, const View& view) {
  if (view.x0 < 0 || view.y0 < 0 || view.width < 1 || view.height < 1 ||
      view.x0 + view.width > img.width || view.y0 + view.height > img.height) {
    throw std::invalid_argument("crop: view leaves the image");
  }
  ImageBuffer out = make_image(view.width, view.height);
  for (int y = 0; y < view.height; ++y) {
    for (int x = 0; x < view.width; ++x) {
      out.at(x, y) = img.at(view.x0 + x, view.y0 + y);
    }
  }
  return out;
}

Mat3 project_covariance(const Mat3& sigma, const Mat3& view_transform, const Mat3& jacobian) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double scale = std::max({1.0, std::abs(sigma[i][j]), std::abs(sigma[j][i])});
      if (std::abs(sigma[i][j] - sigma[j][i]) > 1e-9 * scale) {
        throw std::invalid_argument("project_covariance: sigma is not symmetric");
      }
    }
  }
  const auto mul = [](const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
        r[i][j] = s;
      }
    }
    return r;
  };
  const Mat3 jw = mul(jacobian, view_transform);
  Mat3 jwt{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) jwt[i][j] = jw[j][i];
  }
  Mat3 out = mul(mul(jw, sigma), jwt);
  // mirror the upper triangle so rounding cannot break symmetry
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) out[j][i] = out[i][j];
  }
  return out;
}

double opacity_at(const Gaussian2D& g, const Point2& p) {
  const double c = std::cos(g.rotation);
  const double s = std::sin(g.rotation);
  const double isx = 1.0 / (g.scale_x * g.scale_x);
  const double isy = 1.0 / (g.scale_y * g.scale_y);
  const double inv_xx = c * c * isx + s * s * isy;
  const double inv_yy = s * s * isx + c * c * isy;
  const double inv_xy = c * s * (isx - isy);
  const double qx = p.x - g.position.x;
  const double qy = p.y - g.position.y;
  const double quad = inv_xx * qx * qx + 2.0 * inv_xy * qx * qy + inv_yy * qy * qy;
  return g.opacity * std::exp(-0.5 * quad);
}

namespace detail {

void check_view(const SplatModel& model, const View& view) {
  if (view.x0 < 0 || view.y0 < 0 || view.width < 1 || view.height < 1 ||
      view.x0 + view.width > model.canvas_width ||
      view.y0 + view.height > model.canvas_height) {
    throw std::invalid_argument("render: view leaves the canvas");
  }
}

std::vector<PreparedGaussian> prepare(const SplatModel& model, const View& view) {
  std::vector<std::size_t> order(model.gaussians.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Gaussian2D& ga = model.gaussians[a];
    const Gaussian2D& gb = model.gaussians[b];
    if (ga.depth != gb.depth) return ga.depth < gb.depth;
    return ga.id < gb.id;
  });

  const double vx0 = view.x0;
  const double vy0 = view.y0;
  const double vx1 = view.x0 + view.width;
  const double vy1 = view.y0 + view.height;

  std::vector<PreparedGaussian> out;
  out.reserve(order.size());
  for (std::size_t idx : order) {
    const Gaussian2D& g = model.gaussians[idx];
    if (!(g.opacity >= kAlphaSkip)) continue;  // cannot contribute anywhere

    PreparedGaussian pg;
    pg.index = idx;
    pg.px = g.position.x;
    pg.py = g.position.y;
    pg.alpha = g.opacity;
    pg.intensity = g.intensity;
    pg.cos_r = std::cos(g.rotation);
    pg.sin_r = std::sin(g.rotation);
    pg.sx = g.scale_x;
    pg.sy = g.scale_y;

    const double isx = 1.0 / (g.scale_x * g.scale_x);
    const double isy = 1.0 / (g.scale_y * g.scale_y);
    pg.inv_xx = pg.cos_r * pg.cos_r * isx + pg.sin_r * pg.sin_r * isy;
    pg.inv_yy = pg.sin_r * pg.sin_r * isx + pg.cos_r * pg.cos_r * isy;
    pg.inv_xy = pg.cos_r * pg.sin_r * (isx - isy);

    // support radius where alpha * exp(-r^2/2) falls to kAlphaSkip
    const double rc = std::sqrt(std::max(0.0, 2.0 * std::log(g.opacity / kAlphaSkip)));
    const double sxx = pg.cos_r * pg.cos_r * g.scale_x * g.scale_x +
                       pg.sin_r * pg.sin_r * g.scale_y * g.scale_y;
    const double syy = pg.sin_r * pg.sin_r * g.scale_x * g.scale_x +
                       pg.cos_r * pg.cos_r * g.scale_y * g.scale_y;
    pg.min_x = g.position.x - rc * std::sqrt(sxx);
    pg.max_x = g.position.x + rc * std::sqrt(sxx);
    pg.min_y = g.position.y - rc * std::sqrt(syy);
    pg.max_y = g.position.y + rc * std::sqrt(syy);

    if (pg.max_x < vx0 || pg.min_x > vx1 || pg.max_y < vy0 || pg.min_y > vy1) continue;
    out.push_back(pg);
  }
  return out;
}

namespace {

struct Contribution {
  const PreparedGaussian* g = nullptr;
  double alpha_p = 0.0;      // blended opacity at the pixel
  double exp_v = 0.0;        // exp(-quad/2)
  double qx = 0.0, qy = 0.0; // pixel - center
  double transmittance = 0.0;
};

}  // namespace

void render_backward(const SplatModel& model, const View& view, const ImageBuffer& upstream,
                     std::vector<double>& grad) {
  check_view(model, view);
  const auto prepared = prepare(model, view);
  std::vector<Contribution> contribs;
  contribs.reserve(prepared.size());

  for (int y = 0; y < view.height; ++y) {
    for (int x = 0; x < view.width; ++x) {
      const double dpix = upstream.at(x, y);
      const double px = view.x0 + x + 0.5;
      const double py = view.y0 + y + 0.5;

      contribs.clear();
      double color = 0.0;
      double transmittance = 1.0;
      for (const PreparedGaussian& g : prepared) {
        if (px < g.min_x || px > g.max_x || py < g.min_y || py > g.max_y) continue;
        const double qx = px - g.px;
        const double qy = py - g.py;
        const double quad =
            g.inv_xx * qx * qx + 2.0 * g.inv_xy * qx * qy + g.inv_yy * qy * qy;
        const double exp_v = std::exp(-0.5 * quad);
        const double alpha_p = g.alpha * exp_v;
        if (alpha_p < kAlphaSkip) continue;
        contribs.push_back({&g, alpha_p, exp_v, qx, qy, transmittance});
        color += g.intensity * alpha_p * transmittance;
        transmittance *= 1.0 - alpha_p;
      }
      if (dpix == 0.0 || contribs.empty()) continue;
      if (color > 1.0) continue;  // clamped pixel: zero subgradient

      double suffix = 0.0;  // sum_{j>i} c_j alpha_j T_j
      for (std::size_t k = contribs.size(); k-- > 0;) {
        const Contribution& ct = contribs[k];
        const PreparedGaussian& g = *ct.g;
        const double t_i = ct.transmittance;

        const double d_intensity = dpix * ct.alpha_p * t_i;
        const double d_alpha_p =
            dpix * (g.intensity * t_i - suffix / (1.0 - ct.alpha_p));
        suffix += g.intensity * ct.alpha_p * t_i;

        const double d_logit = d_alpha_p * ct.exp_v * g.alpha * (1.0 - g.alpha);
        const double d_quad_half = d_alpha_p * g.alpha * ct.exp_v;  // d/d(-quad/2)

        const double gx = g.inv_xx * ct.qx + g.inv_xy * ct.qy;
        const double gy = g.inv_xy * ct.qx + g.inv_yy * ct.qy;
        const double r1 = g.cos_r * ct.qx + g.sin_r * ct.qy;
        const double r2 = -g.sin_r * ct.qx + g.cos_r * ct.qy;
        const double isx = 1.0 / (g.sx * g.sx);
        const double isy = 1.0 / (g.sy * g.sy);

        double* gp = grad.data() + g.index * kParamsPerGaussian;
        gp[0] += d_quad_half * gx;
        gp[1] += d_quad_half * gy;
        gp[2] += d_quad_half * r1 * r1 * isx;
        gp[3] += d_quad_half * r2 * r2 * isy;
        gp[4] += d_quad_half * r1 * r2 * (isy - isx);
        gp[5] += d_logit;
        gp[6] += d_intensity;
      }
    }
  }
}

}  // namespace detail

ImageBuffer render(const SplatModel& model, const View& view) {
  detail::check_view(model, view);
  const auto prepared = detail::prepare(model, view);

  ImageBuffer out = make_image(view.width, view.height);
  for (int y = 0; y < view.height; ++y) {
    for (int x = 0; x < view.width; ++x) {
      const double px = view.x0 + x + 0.5;
      const double py = view.y0 + y + 0.5;
      double color = 0.0;
      double transmittance = 1.0;
      for (const auto& g : prepared) {
        if (px < g.min_x || px > g.max_x || py < g.min_y || py > g.max_y) continue;
        const double qx = px - g.px;
        const double qy = py - g.py;
        const double quad =
            g.inv_xx * qx * qx + 2.0 * g.inv_xy * qx * qy + g.inv_yy * qy * qy;
        const double alpha_p = g.alpha * std::exp(-0.5 * quad);
        if (alpha_p < detail::kAlphaSkip) continue;
        color += g.intensity * alpha_p * transmittance;
        transmittance *= 1.0 - alpha_p;
      }
      out.at(x, y) = std::min(1.0, std::max(0.0, color));
    }
  }
  return out;
}

}  // namespace radiant

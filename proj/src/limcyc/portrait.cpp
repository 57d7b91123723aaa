#include "limcyc/portrait.hpp"

#include <algorithm>
#include <cstdio>

#include "limcyc/error.hpp"
#include "limcyc/ode.hpp"
#include "limcyc/serialize.hpp"

namespace limcyc {

namespace {

struct FieldRhs {
  const CompiledField* f;
  double sign;
  void operator()(const Point& z, Point& d) const {
    const Point v = (*f)(z);
    d = {sign * v[0], sign * v[1]};
  }
};

// Integrates until the horizon, the step budget, an integration failure or
// exit from the padded region, keeping points at least `spacing` apart.
std::vector<Trajectory::Sample> half_orbit(const CompiledField& f, const Point& seed, double sign, const Region& box,
                                           double spacing, const PortraitOptions& opts) {
  IntegratorOptions io;
  io.rtol = 1e-8;
  io.atol = 1e-10;
  DormandPrince<2, FieldRhs> dp(FieldRhs{&f, sign}, io);
  dp.start(0.0, seed);
  std::vector<Trajectory::Sample> out{{0.0, seed}};
  for (long k = 0; k < opts.max_steps && dp.t() < opts.horizon; ++k) {
    dp.limit_next_step(opts.horizon - dp.t());
    try {
      dp.step();
    } catch (const IntegrationError&) {
      break;
    }
    const Point& p = dp.y();
    const bool inside = box.contains(p);
    if (!inside || distance(p, out.back().point) >= spacing || dp.t() >= opts.horizon) {
      out.push_back({sign * dp.t(), p});
    }
    if (!inside) break;
    if (norm(f(p)) < 1e-12) break;
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

Portrait compute_portrait(const VectorField& x, const Region& region, const std::optional<Poly>& overlay,
                          const PortraitOptions& opts) {
  x.validate();
  region.validate();
  if (opts.lattice < 1 || opts.lattice > 256) throw Error(ErrorCode::InvalidArgument, "lattice must be in 1..256");
  Portrait out;
  out.region = region;
  const CompiledField f(x);
  const double pad = 0.1;
  const Region box{region.xmin - pad * region.width(), region.xmax + pad * region.width(),
                   region.ymin - pad * region.height(), region.ymax + pad * region.height()};
  const double spacing = std::hypot(region.width(), region.height()) / 400.0;
  const int n = opts.lattice;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Point seed{region.xmin + (i + 0.5) * region.width() / n, region.ymin + (j + 0.5) * region.height() / n};
      auto back = half_orbit(f, seed, -1.0, box, spacing, opts);
      const auto fwd = half_orbit(f, seed, 1.0, box, spacing, opts);
      std::reverse(back.begin(), back.end());
      back.insert(back.end(), fwd.begin() + 1, fwd.end());
      out.trajectories.push_back(std::move(back));
    }
  }
  out.cycles = count_cycles(x, region, opts.cycle_seeds);
  if (overlay) out.curve = contour_polylines(*overlay, region, opts.curve_grid);
  return out;
}

std::string portrait_csv(const Portrait& p) {
  std::string out;
  std::size_t rows = 0;
  for (std::size_t k = 0; k < p.trajectories.size(); ++k) {
    if (k) out += ',';
    out += "t" + std::to_string(k) + ",x" + std::to_string(k) + ",y" + std::to_string(k);
    rows = std::max(rows, p.trajectories[k].size());
  }
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < p.trajectories.size(); ++k) {
      if (k) out += ',';
      const auto& tr = p.trajectories[k];
      if (r < tr.size()) {
        out += format_double(tr[r].t) + "," + format_double(tr[r].point[0]) + "," + format_double(tr[r].point[1]);
      } else {
        out += ",,";
      }
    }
    out += '\n';
  }
  for (std::size_t c = 0; c < p.cycles.size(); ++c) {
    const auto& rep = p.cycles[c];
    out += "# cycle " + std::to_string(c) + " period=" + format_double(rep.period) +
           " exponent=" + format_double(rep.exponent) + "\n";
    out += "t,x,y\n";
    const std::size_t m = rep.orbit.size();
    for (std::size_t k = 0; k < m; ++k) {
      const double t = rep.period * static_cast<double>(k) / static_cast<double>(m);
      out += format_double(t) + "," + format_double(rep.orbit[k][0]) + "," + format_double(rep.orbit[k][1]) + "\n";
    }
  }
  return out;
}

std::string portrait_svg(const Portrait& p) {
  const Region& r = p.region;
  const double width = 800.0;
  const double height = width * r.height() / r.width();
  auto px = [&](const Point& q) {
    return fixed((q[0] - r.xmin) / r.width() * width) + "," + fixed((r.ymax - q[1]) / r.height() * height);
  };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" +
                    fixed(height) + "\" viewBox=\"0 0 " + fixed(width) + " " + fixed(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<clipPath id=\"frame\"><rect width=\"" + fixed(width) + "\" height=\"" + fixed(height) + "\"/></clipPath>\n";
  out += "<g clip-path=\"url(#frame)\" fill=\"none\">\n";
  for (const auto& tr : p.trajectories) {
    if (tr.size() < 2) continue;
    out += "<polyline class=\"trajectory\" stroke=\"#8899aa\" stroke-width=\"0.6\" points=\"";
    for (std::size_t k = 0; k < tr.size(); ++k) {
      if (k) out += ' ';
      out += px(tr[k].point);
    }
    out += "\"/>\n";
  }
  for (const auto& poly : p.curve) {
    if (poly.size() < 2) continue;
    out += "<polyline class=\"curve\" stroke=\"#2a7f2a\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\" points=\"";
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (k) out += ' ';
      out += px(poly[k]);
    }
    out += "\"/>\n";
  }
  for (const auto& c : p.cycles) {
    if (c.orbit.empty()) continue;
    out += std::string("<path class=\"cycle\" stroke=\"") + (c.stable ? "#c0392b" : "#2c3e99") +
           "\" stroke-width=\"2\" d=\"M";
    for (std::size_t k = 0; k < c.orbit.size(); ++k) {
      out += k ? " L" : "";
      out += px(c.orbit[k]);
    }
    out += " Z\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace limcyc

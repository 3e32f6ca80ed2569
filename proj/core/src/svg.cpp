#include "brinkstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "brinkstab/errors.hpp"

namespace brinkstab::svg {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Axis {
  double lo, hi;
  bool log;
  double to01(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return (x - a) / (b - a);
  }
};

std::vector<double> ticks(const Axis& ax, int want = 6) {
  std::vector<double> out;
  if (ax.log) {
    const int e0 = static_cast<int>(std::ceil(std::log10(ax.lo) - 1e-9));
    const int e1 = static_cast<int>(std::floor(std::log10(ax.hi) + 1e-9));
    int step = std::max(1, (e1 - e0) / want + ((e1 - e0) % want ? 1 : 0));
    for (int e = e0; e <= e1; e += step) out.push_back(std::pow(10.0, e));
    if (out.empty()) out = {ax.lo, ax.hi};
    return out;
  }
  const double span = ax.hi - ax.lo;
  const double raw = span / want;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (mag * m >= raw) { step = mag * m; break; }
  }
  const double first = std::ceil(ax.lo / step) * step;
  for (double v = first; v <= ax.hi + 1e-12 * span; v += step) out.push_back(v);
  return out;
}

std::string fmt_tick(double v) {
  std::ostringstream os;
  if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-3)) {
    os.setf(std::ios::scientific);
    os.precision(1);
  } else {
    os.precision(6);
  }
  os << v;
  return os.str();
}

}  // namespace

std::string line_plot(const std::vector<Series>& series, const PlotOptions& opts) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  std::size_t usable = 0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (opts.log_x && !(x > 0.0)) continue;
      if (opts.log_y && !(y > 0.0)) continue;
      xlo = std::min(xlo, x); xhi = std::max(xhi, x);
      ylo = std::min(ylo, y); yhi = std::max(yhi, y);
      ++usable;
    }
  }
  if (usable == 0) throw UsageError("svg: no drawable samples");
  if (xlo == xhi) { xlo -= 0.5; xhi += 0.5; }
  if (ylo == yhi) { ylo = ylo - 0.5 * std::abs(ylo) - 0.5; yhi = yhi + 0.5 * std::abs(yhi) + 0.5; }
  if (!opts.log_y) { const double pad = 0.05 * (yhi - ylo); ylo -= pad; yhi += pad; }
  else { ylo /= 1.5; yhi *= 1.5; }
  if (!opts.log_x) { const double pad = 0.02 * (xhi - xlo); xlo -= pad; xhi += pad; }

  const Axis X{xlo, xhi, opts.log_x};
  const Axis Y{ylo, yhi, opts.log_y};
  const double mL = 80, mR = 20, mT = 40, mB = 55;
  const double W = opts.width, H = opts.height;
  const double pw = W - mL - mR, ph = H - mT - mB;
  auto px = [&](double v) { return mL + X.to01(v) * pw; };
  auto py = [&](double v) { return mT + (1.0 - Y.to01(v)) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
     << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << mL << "\" y=\"" << mT << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(X)) {
    if (t < xlo || t > xhi) continue;
    const double x = px(t);
    os << "<line x1=\"" << x << "\" y1=\"" << mT + ph << "\" x2=\"" << x << "\" y2=\""
       << mT + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << mT + ph + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(t) << "</text>\n";
  }
  for (double t : ticks(Y)) {
    if (t < ylo || t > yhi) continue;
    const double y = py(t);
    os << "<line x1=\"" << mL - 5 << "\" y1=\"" << y << "\" x2=\"" << mL << "\" y2=\"" << y
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << mL - 8 << "\" y=\"" << y + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(t) << "</text>\n";
  }

  int ci = 0;
  for (const auto& s : series) {
    std::ostringstream path;
    bool pen_down = false;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const double x = s.x[i], y = s.y[i];
      const bool ok = std::isfinite(x) && std::isfinite(y) && (!opts.log_x || x > 0.0) &&
                      (!opts.log_y || y > 0.0);
      if (!ok) { pen_down = false; continue; }
      path << (pen_down ? " L " : " M ") << px(x) << ' ' << py(y);
      pen_down = true;
    }
    const std::string d = path.str();
    if (d.empty()) continue;
    const char* color = kColors[ci % 8];
    os << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"/>\n";
    if (!s.label.empty()) {
      const double lx = mL + pw - 150, ly = mT + 16 + 16 * ci;
      os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 24 << "\" y2=\""
         << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
      os << "<text x=\"" << lx + 30 << "\" y=\"" << ly << "\" font-size=\"12\">" << s.label
         << "</text>\n";
    }
    ++ci;
  }

  if (!opts.title.empty()) {
    os << "<text x=\"" << mL + pw / 2 << "\" y=\"" << mT - 12
       << "\" font-size=\"15\" text-anchor=\"middle\">" << opts.title << "</text>\n";
  }
  if (!opts.xlabel.empty()) {
    os << "<text x=\"" << mL + pw / 2 << "\" y=\"" << H - 14
       << "\" font-size=\"13\" text-anchor=\"middle\">" << opts.xlabel << "</text>\n";
  }
  if (!opts.ylabel.empty()) {
    os << "<text x=\"16\" y=\"" << mT + ph / 2 << "\" font-size=\"13\" text-anchor=\"middle\""
       << " transform=\"rotate(-90 16 " << mT + ph / 2 << ")\">" << opts.ylabel << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace brinkstab::svg

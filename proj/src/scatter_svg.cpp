#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "symreach/errors.hpp"
#include "symreach/explorer.hpp"

namespace symreach {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct AxisMap {
  std::string label;
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  double value(const ReachRecord& r, Axis which) const {
    const double v = which == Axis::Theta ? r.theta : which == Axis::Z ? r.z : r.phi;
    return log ? std::log10(v) : v;
  }
};

void fit(AxisMap& a, const std::vector<double>& values) {
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  a.lo = *mn;
  a.hi = *mx;
  const double pad = (a.hi > a.lo) ? 0.05 * (a.hi - a.lo) : 0.5;
  a.lo -= pad;
  a.hi += pad;
}

}  // namespace

Projection parse_projection(std::string_view s) {
  if (s == "theta-phi") return Projection::ThetaPhi;
  if (s == "z-theta") return Projection::ZTheta;
  if (s == "z-phi") return Projection::ZPhi;
  throw DomainError("unknown projection '" + std::string(s) + "'");
}

std::string_view to_string(Projection p) {
  switch (p) {
    case Projection::ThetaPhi:
      return "theta-phi";
    case Projection::ZTheta:
      return "z-theta";
    case Projection::ZPhi:
      return "z-phi";
  }
  return "unknown";
}

std::string scatter_svg(const std::vector<ReachRecord>& records, Projection projection) {
  if (records.empty()) throw EmptyInput("scatter: no records to plot");

  Axis xa = Axis::Theta;
  Axis ya = Axis::Phi;
  if (projection == Projection::ZTheta) {
    xa = Axis::Z;
    ya = Axis::Theta;
  } else if (projection == Projection::ZPhi) {
    xa = Axis::Z;
    ya = Axis::Phi;
  }
  AxisMap xm{xa == Axis::Z ? "log10 z" : std::string(to_string(xa)), xa == Axis::Z};
  AxisMap ym{std::string(to_string(ya)), false};
  std::vector<double> xs, ys;
  for (const ReachRecord& r : records) {
    xs.push_back(xm.value(r, xa));
    ys.push_back(ym.value(r, ya));
  }
  fit(xm, xs);
  fit(ym, ys);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double v) { return kLeft + (v - xm.lo) / (xm.hi - xm.lo) * pw; };
  const auto py = [&](double v) { return kTop + ph - (v - ym.lo) / (ym.hi - ym.lo) * ph; };

  std::size_t reached = 0;
  for (const ReachRecord& r : records) reached += r.reached();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << to_string(projection) << " projection: " << reached << " of " << records.size()
      << " reached</text>\n";
  svg << "<rect class=\"frame\" x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xm.lo + (xm.hi - xm.lo) * i / kTicks;
    const double fy = ym.lo + (ym.hi - ym.lo) * i / kTicks;
    const double tx = px(fx);
    const double ty = py(fy);
    svg << "<line x1=\"" << num(tx) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(tx)
        << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(tx) << "\" y=\"" << kTop + ph + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(xm.log ? std::pow(10.0, fx) : fx) << "</text>\n";
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(ty) << "\" x2=\"" << kLeft
        << "\" y2=\"" << num(ty) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(ty + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
        << "</text>\n";
  }
  svg << "<text class=\"xlabel\" x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << (xm.log ? "z (log scale)" : xm.label) << "</text>\n";
  svg << "<text class=\"ylabel\" x=\"20\" y=\"" << kTop + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 20 "
      << kTop + ph / 2 << ")\">" << ym.label << "</text>\n";

  // Unreached points first, reached ones on top.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const bool hit = records[i].reached();
      if (hit != (pass == 1)) continue;
      svg << "<circle class=\"" << (hit ? "reached" : "unreached") << "\" cx=\""
          << num(px(xs[i])) << "\" cy=\"" << num(py(ys[i])) << "\" r=\"" << (hit ? 4 : 3)
          << "\" "
          << (hit ? "fill=\"#1f5fbf\" stroke=\"#0b2f6b\""
                  : "fill=\"none\" stroke=\"#999999\"")
          << "/>\n";
    }
  }
  svg << "<circle cx=\"" << kLeft + pw - 110 << "\" cy=\"" << kTop + 14
      << "\" r=\"4\" fill=\"#1f5fbf\"/><text x=\"" << kLeft + pw - 100 << "\" y=\""
      << kTop + 18 << "\" font-family=\"sans-serif\" font-size=\"11\">reached</text>\n";
  svg << "<circle cx=\"" << kLeft + pw - 110 << "\" cy=\"" << kTop + 30
      << "\" r=\"3\" fill=\"none\" stroke=\"#999999\"/><text x=\"" << kLeft + pw - 100
      << "\" y=\"" << kTop + 34 << "\" font-family=\"sans-serif\" font-size=\"11\">not reached</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void render_scatter(const std::vector<ReachRecord>& records, Projection projection,
                    const std::filesystem::path& path) {
  const std::string text = scatter_svg(records, projection);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace symreach

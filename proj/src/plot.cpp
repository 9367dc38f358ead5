#include "velaid/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace velaid {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 48.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range finite_range(const std::vector<Series>& series, bool use_x) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const Series& s : series) {
    for (double v : use_x ? s.x : s.y) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) return {};
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + p.string() + "' failed");
}

}  // namespace

std::string render_svg(const LineChart& chart) {
  const Range xr = finite_range(chart.series, true);
  const Range yr = finite_range(chart.series, false);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(chart.title)
    << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    o << "<text x=\"" << sx(fx) << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"middle\">" << fx
      << "</text>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(fy) + 4 << "\" text-anchor=\"end\">" << fy << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
    << escape(chart.x_label) << "</text>\n";
  o << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kTop + ph / 2 << ")\">" << escape(chart.y_label) << "</text>\n";

  for (double m : chart.markers) {
    o << "<line class=\"jump-marker\" x1=\"" << sx(m) << "\" y1=\"" << kTop << "\" x2=\"" << sx(m) << "\" y2=\""
      << kTop + ph << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }

  std::size_t k = 0;
  for (const Series& s : chart.series) {
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      o << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
    }
    o << "\"/>\n";
    const double ly = kTop + 14 + 14.0 * static_cast<double>(k);
    o << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << ly << "\" text-anchor=\"end\" fill=\"" << color
      << "\">" << escape(s.label) << "</text>\n";
    ++k;
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<std::filesystem::path> emit_plots(const std::vector<CsvRow>& rows, const std::filesystem::path& out_dir) {
  if (rows.empty()) throw std::runtime_error("plot: no telemetry rows");
  // Plots are drawn against the ordinary time axis; t is shared across the
  // pre- and post-jump rows of an instant, so the jump shows as a vertical step.
  std::vector<double> t;
  std::vector<double> att;
  std::vector<double> bx, by, bz, bn;
  std::vector<double> ra;
  std::vector<double> markers;
  for (const CsvRow& r : rows) {
    t.push_back(r.t);
    att.push_back(r.attitude_error_deg);
    bx.push_back(r.b_tilde.x());
    by.push_back(r.b_tilde.y());
    bz.push_back(r.b_tilde.z());
    bn.push_back(r.b_tilde.norm());
    ra.push_back(r.r_a_tilde_norm);
    if (r.jump) markers.push_back(r.t);
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());

  const std::vector<std::pair<std::string, LineChart>> charts{
      {"attitude_error.svg",
       {"Attitude error", "t [s]", "angle [deg]", {{"attitude error", t, att}}, markers}},
      {"bias_error.svg",
       {"Gyro bias error",
        "t [s]",
        "[rad/s]",
        {{"x", t, bx}, {"y", t, by}, {"z", t, bz}, {"norm", t, bn}},
        markers}},
      {"accel_error.svg",
       {"Apparent acceleration error", "t [s]", "norm [m/s^2]", {{"accel error", t, ra}}, markers}},
  };

  std::vector<std::filesystem::path> written;
  for (const auto& [name, chart] : charts) {
    const auto p = out_dir / name;
    write_file(p, render_svg(chart));
    written.push_back(p);
  }
  return written;
}

std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv, const std::filesystem::path& out_dir) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + csv.string() + "'");
  return emit_plots(read_csv(in), out_dir);
}

}  // namespace velaid

#include "motifvar/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "motifvar/error.hpp"
#include "motifvar/timeutil.hpp"

namespace motifvar {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* colour(int label) { return kPalette[static_cast<std::size_t>(label - 1) % std::size(kPalette)]; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Svg {
 public:
  Svg(double width, double height) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
         << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }

  void circle(double x, double y, double r, const std::string& fill) {
    out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
         << "\" fill-opacity=\"0.6\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" fill=\"" << fill << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke, double width,
                double opacity) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width)
         << "\" stroke-opacity=\"" << num(opacity) << "\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i)
      out_ << (i ? " " : "") << num(points[i].first) << ',' << num(points[i].second);
    out_ << "\"/>\n";
  }

  void text(double x, double y, const std::string& s, const char* anchor = "start", int size = 11) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"" << size
         << "\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

std::string clock_label(double minutes) { return format_clock(static_cast<int>(std::lround(minutes))); }

// Row indices grouped by label, labels ascending, rows in input order.
std::map<int, std::vector<std::size_t>> members_by_label(const Partition& p) {
  std::map<int, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < p.size(); ++i) out[p.labels[i]].push_back(i);
  return out;
}

}  // namespace

std::string svg_timing_scatter(const Partition& partition, std::span<const MotifCatalog> catalogs,
                               int peak_start_minutes, int peak_end_minutes) {
  std::map<std::string, const MotifCatalog*> by_id;
  for (const auto& c : catalogs) by_id[c.household_id] = &c;

  const auto groups = members_by_label(partition);
  const double left = 60, top = 40, plot_h = 360, step = 6, gap = 14;
  const double plot_w = std::max(200.0, static_cast<double>(partition.size()) * step +
                                            static_cast<double>(groups.size()) * gap);
  Svg svg(left + plot_w + 20, top + plot_h + 50);
  svg.text(left, 20, "Top motif start times by cluster (" + partition.algorithm + ")", "start", 13);

  const double span = std::max(1, peak_end_minutes - peak_start_minutes);
  const auto y_of = [&](double minutes) { return top + plot_h * (1.0 - (minutes - peak_start_minutes) / span); };
  for (int m = peak_start_minutes; m <= peak_end_minutes; m += 60) {
    svg.line(left - 4, y_of(m), left + plot_w, y_of(m), "#dddddd");
    svg.text(left - 8, y_of(m) + 4, clock_label(m), "end");
  }

  double x = left + gap / 2;
  for (const auto& [label, rows] : groups) {
    const double group_start = x;
    for (std::size_t i : rows) {
      const auto it = by_id.find(partition.ids[i]);
      if (it != by_id.end()) {
        const auto ranked = rank_motifs(*it->second);
        if (!ranked.empty())
          for (const auto& o : it->second->entries.at(ranked.front().word))
            svg.circle(x, y_of(peak_start_minutes + o.start_clock), 2.0, colour(label));
      }
      x += step;
    }
    svg.text((group_start + x) / 2, top + plot_h + 18, "C" + std::to_string(label), "middle");
    x += gap;
  }
  svg.line(left, top + plot_h, left + plot_w, top + plot_h, "black");
  svg.line(left, top, left, top + plot_h, "black");
  svg.text(left + plot_w / 2, top + plot_h + 40, "households grouped by cluster", "middle");
  return svg.finish();
}

std::string svg_profile_overlay(const Partition& partition, const FeatureMatrix& profiles, int peak_start_minutes) {
  if (profiles.rows() != partition.size()) throw config_error("profile matrix does not match the partition");
  const auto groups = members_by_label(partition);
  const std::size_t slots = profiles.width();
  double y_max = 1.0;
  for (double v : profiles.data()) y_max = std::max(y_max, v);

  const double panel_w = 260, panel_h = 180, pad = 50;
  const std::size_t cols = std::min<std::size_t>(4, std::max<std::size_t>(1, groups.size()));
  const std::size_t rows = (groups.size() + cols - 1) / std::max<std::size_t>(1, cols);
  Svg svg(pad + static_cast<double>(cols) * (panel_w + pad), 40 + static_cast<double>(rows) * (panel_h + pad));
  svg.text(pad, 22, "Household load profiles by cluster (" + partition.algorithm + ")", "start", 13);

  std::size_t panel = 0;
  for (const auto& [label, members] : groups) {
    const double ox = pad + static_cast<double>(panel % cols) * (panel_w + pad);
    const double oy = 40 + static_cast<double>(panel / cols) * (panel_h + pad);
    const auto px = [&](std::size_t s) {
      return ox + (slots > 1 ? panel_w * static_cast<double>(s) / static_cast<double>(slots - 1) : 0.0);
    };
    const auto py = [&](double v) { return oy + panel_h * (1.0 - v / y_max); };
    svg.line(ox, oy + panel_h, ox + panel_w, oy + panel_h, "black");
    svg.line(ox, oy, ox, oy + panel_h, "black");
    svg.text(ox, oy - 6, "C" + std::to_string(label) + " (n=" + std::to_string(members.size()) + ")");
    svg.text(ox, oy + panel_h + 14, clock_label(peak_start_minutes));
    svg.text(ox + panel_w, oy + panel_h + 14,
             clock_label(peak_start_minutes + static_cast<double>(slots) * kSlotMinutes), "end");
    svg.text(ox - 4, oy + 10, num(y_max) + " W", "end", 9);

    std::vector<double> mean(slots, 0.0);
    for (std::size_t i : members) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t s = 0; s < slots; ++s) {
        pts.emplace_back(px(s), py(profiles(i, s)));
        mean[s] += profiles(i, s) / static_cast<double>(members.size());
      }
      svg.polyline(pts, colour(label), 1.0, 0.5);
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t s = 0; s < slots; ++s) pts.emplace_back(px(s), py(mean[s]));
    svg.polyline(pts, "black", 2.0, 1.0);
    ++panel;
  }
  return svg.finish();
}

std::string svg_cluster_summary(const Partition& partition, const FeatureMatrix& motif) {
  if (motif.rows() != partition.size()) throw config_error("motif matrix does not match the partition");
  const auto groups = members_by_label(partition);
  std::size_t largest = 1;
  std::map<int, double> mean_sd;
  double sd_max = 1.0;
  for (const auto& [label, rows] : groups) {
    largest = std::max(largest, rows.size());
    double s = 0.0;
    for (std::size_t i : rows) s += motif.width() > 1 ? motif(i, 1) : 0.0;
    mean_sd[label] = s / static_cast<double>(rows.size());
    sd_max = std::max(sd_max, mean_sd[label]);
  }

  const double left = 60, top = 40, plot_h = 260, bar = 40, gap = 20;
  const double plot_w = std::max(200.0, static_cast<double>(groups.size()) * (bar + gap) + gap);
  Svg svg(left + plot_w + 70, top + plot_h + 50);
  svg.text(left, 20, "Cluster sizes and mean top-motif timing sd (" + partition.algorithm + ")", "start", 13);
  svg.line(left, top + plot_h, left + plot_w, top + plot_h, "black");
  svg.line(left, top, left, top + plot_h, "black");
  svg.line(left + plot_w, top, left + plot_w, top + plot_h, "black");
  svg.text(left - 6, top + 4, std::to_string(largest), "end");
  svg.text(left - 6, top + plot_h, "0", "end");
  svg.text(left + plot_w + 6, top + 4, num(sd_max) + " min");
  svg.text(left + plot_w + 6, top + plot_h, "0 min");

  double x = left + gap;
  for (const auto& [label, rows] : groups) {
    const double h = plot_h * static_cast<double>(rows.size()) / static_cast<double>(largest);
    svg.rect(x, top + plot_h - h, bar, h, colour(label));
    svg.text(x + bar / 2, top + plot_h - h - 4, std::to_string(rows.size()), "middle", 10);
    svg.circle(x + bar / 2, top + plot_h * (1.0 - mean_sd[label] / sd_max), 5.0, "black");
    svg.text(x + bar / 2, top + plot_h + 16, "C" + std::to_string(label), "middle");
    x += bar + gap;
  }
  svg.text(left + plot_w / 2, top + plot_h + 40, "bars: households; dots: mean timing sd", "middle");
  return svg.finish();
}

}  // namespace motifvar

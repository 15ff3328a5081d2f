#include "motifvar/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "motifvar/error.hpp"

namespace motifvar {

namespace {

Error parse_error(std::size_t line, const std::string& what) {
  return Error("parse-error", "line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw parse_error(line, "not a number");
  return v;
}

int to_int(std::string_view s, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw parse_error(line, "not an integer");
  return v;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  if (v == 0.0) return "0";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void write_readings_csv(std::ostream& out, std::span<const RawReading> readings) {
  out << "household_id,timestamp,watts\n";
  for (const auto& r : readings) out << r.household_id << ',' << format_utc(r.timestamp) << ',' << format_number(r.watts) << '\n';
}

void write_windows_csv(std::ostream& out, std::span<const PeakDayWindow> windows) {
  const std::size_t len = windows.empty() ? 0 : windows.front().readings.size();
  out << "household_id,date,valid";
  for (std::size_t i = 0; i < len; ++i) out << ",r" << (i < 10 ? "0" : "") << i;
  out << '\n';
  for (const auto& w : windows) {
    out << w.household_id << ',' << format_date(w.date) << ',' << (w.valid ? 1 : 0);
    for (double v : w.readings) out << ',' << format_number(v);
    out << '\n';
  }
}

std::vector<PeakDayWindow> read_windows_csv(std::istream& in) {
  std::vector<PeakDayWindow> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto f = split_fields(view);
    if (line_no == 1) {
      if (f.size() < 3 || f[0] != "household_id") throw parse_error(line_no, "missing windows header");
      width = f.size() - 3;
      continue;
    }
    if (f.size() != width + 3) throw parse_error(line_no, "wrong field count");
    PeakDayWindow w;
    w.household_id = std::string(f[0]);
    const auto d = parse_date(f[1]);
    if (!d) throw parse_error(line_no, "bad date");
    w.date = *d;
    w.valid = f[2] == "1";
    for (std::size_t i = 0; i < width; ++i) w.readings.push_back(to_double(f[3 + i], line_no));
    out.push_back(std::move(w));
  }
  return out;
}

void write_feature_matrix_csv(std::ostream& out, const FeatureMatrix& matrix) {
  out << "household_id";
  for (const auto& c : matrix.columns()) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    out << matrix.ids()[i];
    for (double v : matrix.row(i)) out << ',' << format_number(v);
    out << '\n';
  }
}

FeatureMatrix read_feature_matrix_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<FeatureMatrix> m;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto f = split_fields(view);
    if (!m) {
      if (f.empty() || f[0] != "household_id") throw parse_error(line_no, "missing feature header");
      m.emplace(std::vector<std::string>{}, std::vector<std::string>(f.begin() + 1, f.end()));
      continue;
    }
    if (f.size() != m->width() + 1) throw parse_error(line_no, "wrong field count");
    row.clear();
    for (std::size_t i = 1; i < f.size(); ++i) row.push_back(to_double(f[i], line_no));
    m->append(std::string(f[0]), row);
  }
  if (!m) throw Error("parse-error", "empty feature file");
  return std::move(*m);
}

void write_partition_csv(std::ostream& out, const Partition& partition) {
  out << "household_id,algorithm,cluster\n";
  for (std::size_t i = 0; i < partition.size(); ++i)
    out << partition.ids[i] << ',' << partition.algorithm << ',' << partition.labels[i] << '\n';
}

Partition read_partition_csv(std::istream& in) {
  Partition p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto f = split_fields(view);
    if (line_no == 1) {
      if (f.size() != 3 || f[0] != "household_id") throw parse_error(line_no, "missing partition header");
      continue;
    }
    if (f.size() != 3) throw parse_error(line_no, "wrong field count");
    if (p.algorithm.empty()) p.algorithm = std::string(f[1]);
    p.ids.emplace_back(f[0]);
    const int label = to_int(f[2], line_no);
    if (label < 1) throw parse_error(line_no, "cluster labels start at 1");
    p.labels.push_back(label);
    p.k = std::max(p.k, label);
  }
  return p;
}

void write_catalog_csv(std::ostream& out, std::span<const MotifCatalog> catalogs) {
  out << "household_id,days_sampled,word,date,start_clock\n";
  for (const auto& c : catalogs)
    for (const auto& [word, occ] : c.entries)
      for (const auto& o : occ)
        out << c.household_id << ',' << c.days_sampled << ',' << word.str() << ',' << format_date(o.date) << ','
            << o.start_clock << '\n';
}

std::vector<MotifCatalog> read_catalog_csv(std::istream& in, int alphabet_size) {
  std::map<std::string, MotifCatalog> by_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty() || line_no == 1) continue;
    const auto f = split_fields(view);
    if (f.size() != 5) throw parse_error(line_no, "wrong field count");
    auto& c = by_id[std::string(f[0])];
    c.household_id = std::string(f[0]);
    c.days_sampled = to_int(f[1], line_no);
    const auto d = parse_date(f[3]);
    if (!d) throw parse_error(line_no, "bad date");
    c.entries[MotifWord(std::string(f[2]), alphabet_size)].push_back({*d, to_int(f[4], line_no)});
  }
  std::vector<MotifCatalog> out;
  for (auto& [id, c] : by_id) out.push_back(std::move(c));
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("input-not-found", "cannot open " + path.string());
  return in;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw Error("output-error", "cannot write " + path.string());
}

}  // namespace motifvar

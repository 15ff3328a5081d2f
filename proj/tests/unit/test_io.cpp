#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "motifvar/error.hpp"
#include "motifvar/io.hpp"
#include "motifvar/plot.hpp"
#include "motifvar/rng.hpp"

using namespace motifvar;

namespace {

Date day(int d) { return Date{std::chrono::year{2011}, std::chrono::month{3}, std::chrono::day{static_cast<unsigned>(d)}}; }

}  // namespace

TEST_CASE("format_number round trips") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_number(std::nan("")) == "NA");
  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    const double v = rng.normal(0.0, 1e4);
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("split_fields") {
  CHECK(split_fields("a,b,,c") == std::vector<std::string_view>{"a", "b", "", "c"});
  CHECK(split_fields("") == std::vector<std::string_view>{""});
}

TEST_CASE("windows csv round trip") {
  std::vector<PeakDayWindow> w{{"h1", day(7), {1.5, 2.25, 300}, true}, {"h2", day(8), {0, 0, 0.1}, false}};
  std::stringstream s;
  write_windows_csv(s, w);
  CHECK(s.str().rfind("household_id,date,valid,r00,r01,r02\nh1,2011-03-07,1,", 0) == 0);
  const auto back = read_windows_csv(s);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].household_id == w[i].household_id);
    CHECK(back[i].date == w[i].date);
    CHECK(back[i].readings == w[i].readings);
    CHECK(back[i].valid == w[i].valid);
  }
  std::istringstream bad("household_id,date,valid,r00\nh1,2011-13-01,1,5\n");
  CHECK_THROWS_AS(read_windows_csv(bad), Error);
}

TEST_CASE("feature matrix csv round trip") {
  const FeatureMatrix m({"a", "b"}, {"f1", "f2"}, {{1.0 / 3.0, 2}, {-4e-9, 1e12}});
  std::stringstream s;
  write_feature_matrix_csv(s, m);
  const auto back = read_feature_matrix_csv(s);
  CHECK(back.ids() == m.ids());
  CHECK(back.columns() == m.columns());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(back(i, j) == m(i, j));
  std::istringstream ragged("household_id,f1,f2\na,1\n");
  CHECK_THROWS_AS(read_feature_matrix_csv(ragged), Error);
}

TEST_CASE("partition csv round trip") {
  Partition p;
  p.algorithm = "kmeans";
  p.ids = {"h1", "h2", "h3"};
  p.labels = {2, 1, 3};
  p.k = 3;
  std::stringstream s;
  write_partition_csv(s, p);
  CHECK(s.str() == "household_id,algorithm,cluster\nh1,kmeans,2\nh2,kmeans,1\nh3,kmeans,3\n");
  const auto back = read_partition_csv(s);
  CHECK(back.algorithm == "kmeans");
  CHECK(back.ids == p.ids);
  CHECK(back.labels == p.labels);
  CHECK(back.k == 3);
}

TEST_CASE("catalog csv round trip") {
  MotifCatalog c;
  c.household_id = "h1";
  c.days_sampled = 12;
  c.entries[MotifWord("bbbbbe", 5)] = {{day(7), 60}, {day(9), 65}};
  c.entries[MotifWord("ddddda", 5)] = {{day(7), 120}};
  std::stringstream s;
  write_catalog_csv(s, std::vector<MotifCatalog>{c});
  const auto back = read_catalog_csv(s, 5);
  REQUIRE(back.size() == 1);
  CHECK(back[0].household_id == "h1");
  CHECK(back[0].days_sampled == 12);
  CHECK(back[0].entries == c.entries);
}

TEST_CASE("file helpers report their categories") {
  try {
    open_input("/nonexistent/readings.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == "input-not-found");
  }
  try {
    write_text_file("/nonexistent/dir/out.txt", "x");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == "output-error");
  }
}

TEST_CASE("svg plots are self-contained documents") {
  Partition p;
  p.algorithm = "k<means>";
  p.ids = {"h1", "h2", "h3"};
  p.labels = {1, 2, 1};
  p.k = 2;
  MotifCatalog c1{"h1", {{MotifWord("bbbbbe", 5), {{day(7), 60}}}}, 5};
  MotifCatalog c2{"h2", {}, 5};
  MotifCatalog c3{"h3", {{MotifWord("bbbbbe", 5), {{day(7), 70}, {day(8), 75}}}}, 5};
  const std::vector<MotifCatalog> catalogs{c1, c2, c3};
  const FeatureMatrix profiles({"h1", "h2", "h3"}, {"p00", "p01"}, {{100, 900}, {150, 150}, {120, 800}});
  const FeatureMatrix motif({"h1", "h2", "h3"}, {"f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"},
                            {{1, 0, 0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, 0, 0, 0}, {2, 2.5, 0, 0, 0, 0, 1, 1}});
  for (const auto& svg : {svg_timing_scatter(p, catalogs, 960, 1200), svg_profile_overlay(p, profiles, 960),
                          svg_cluster_summary(p, motif)}) {
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg ") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("k<means>") == std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
  }
}

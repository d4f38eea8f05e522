#include <gtest/gtest.h>

#include <sstream>

#include "pxt/experiment.hpp"
#include "test_util.hpp"

using namespace pxt;
using namespace pxt::testing;

TEST(Summary, OddAndEvenCounts) {
  auto s = summarize({5, 1, 3});
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.median, 3);
  EXPECT_EQ(s.max, 5);
  EXPECT_DOUBLE_EQ(summarize({4, 1, 3, 10}).median, 3.5);
  EXPECT_EQ(summarize({}).median, 0);
}

TEST(Compare, Bands) {
  EXPECT_EQ(compare(100, 100, 0).status, CellStatus::exact);
  EXPECT_EQ(compare(110, 100, 0.10).status, CellStatus::in_band);
  EXPECT_EQ(compare(90, 100, 0.10).status, CellStatus::in_band);
  EXPECT_EQ(compare(111, 100, 0.10).status, CellStatus::out_of_band);
  EXPECT_EQ(compare(101, 100, 0).status, CellStatus::out_of_band);
}

TEST(Schemes, NamesRoundTrip) {
  for (Scheme s : {Scheme::pxt, Scheme::one_plus_one, Scheme::shared_path})
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_FALSE(parse_scheme("ring"));
}

TEST(Run, CsvFormat) {
  ExperimentConfig cfg;
  cfg.graph = "k66";
  cfg.pattern = Pattern::neighbor;
  cfg.scheme = Scheme::one_plus_one;
  cfg.runs = 2;
  auto report = run(cfg);
  const std::string csv = report.csv();
  EXPECT_EQ(csv,
            "graph,pattern,scheme,seed,working,protection,total,runtime_ms\n"
            "k66,neighbor,one-plus-one,1,360,1080,1440,0.000\n"
            "k66,neighbor,one-plus-one,2,360,1080,1440,0.000\n");
  EXPECT_TRUE(report.clean());
}

TEST(Run, DeterministicAcrossCalls) {
  ExperimentConfig cfg;
  cfg.graph = "tietze";
  cfg.pattern = Pattern::unbalanced;
  cfg.seed = 5;
  cfg.runs = 2;
  EXPECT_EQ(run(cfg).csv(), run(cfg).csv());
}

TEST(Run, WorkingBandwidthIsSchemeIndependent) {
  ExperimentConfig cfg;
  cfg.graph = "cycle12plus3";
  cfg.pattern = Pattern::neighbor;
  std::vector<std::size_t> working;
  for (Scheme s : {Scheme::pxt, Scheme::one_plus_one, Scheme::shared_path}) {
    cfg.scheme = s;
    auto report = run(cfg);
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_EQ(report.rows[0].violations, 0u) << to_string(s);
    EXPECT_EQ(report.rows[0].audit_violations, 0u) << to_string(s);
    working.push_back(report.rows[0].bandwidth.working);
  }
  EXPECT_EQ(working, (std::vector<std::size_t>{150, 150, 150}));
}

TEST(Run, TimingColumnOnlyWhenAsked) {
  ExperimentConfig cfg;
  cfg.graph = "grid3x4";
  cfg.pattern = Pattern::neighbor;
  cfg.timing = true;
  auto report = run(cfg);
  EXPECT_GT(report.rows[0].runtime_ms, 0.0);
  report.timing = false;
  EXPECT_NE(report.csv().find(",0.000\n"), std::string::npos);
}

TEST(Run, GraphFileAndErrors) {
  ExperimentConfig cfg;
  cfg.graph = data_path("icosahedron.graph");
  cfg.pattern = Pattern::neighbor;
  cfg.scheme = Scheme::one_plus_one;
  auto report = run(cfg);
  EXPECT_EQ(report.rows[0].graph, "icosahedron");
  EXPECT_EQ(report.rows[0].bandwidth.protection, 600u);

  cfg.graph = data_path("missing.graph");
  EXPECT_THROW(run(cfg), IoError);
  cfg.graph = "icosahedron";
  cfg.runs = 0;
  EXPECT_THROW(run(cfg), Error);
  cfg.runs = 1;
  cfg.graph = "murakami_kim";
  EXPECT_THROW(run(cfg), Error);
}

TEST(Run, VerboseTraceGoesToStream) {
  ExperimentConfig cfg;
  cfg.graph = "k66";
  cfg.pattern = Pattern::neighbor;
  std::ostringstream trace;
  cfg.verbose = &trace;
  run(cfg);
  EXPECT_NE(trace.str().find("demand 0 "), std::string::npos);
  EXPECT_NE(trace.str().find("  protection "), std::string::npos);
}

TEST(Table1, MurakamiKimSkippedWithoutData) {
  Table1Options opt;
  opt.graph = "murakami_kim";
  auto rows = table1(opt);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.skipped);
    EXPECT_NE(r.notice.find("--murakami-kim"), std::string::npos);
  }
  EXPECT_NE(format_table1(rows).find("skipped: "), std::string::npos);
  const std::string csv = table1_csv(rows);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 1u + 3 * 4);
  EXPECT_NE(csv.find("murakami_kim,uniform,pxt,,,skipped\n"), std::string::npos);
}

TEST(Table1, NeighborRow) {
  Table1Options opt;
  opt.pattern = Pattern::neighbor;
  opt.graph = "icosahedron";
  opt.runs = 2;
  auto rows = table1(opt);
  ASSERT_EQ(rows.size(), 1u);
  const auto& r = rows[0];
  ASSERT_FALSE(r.skipped) << r.notice;
  EXPECT_EQ(r.working.status, CellStatus::exact);
  EXPECT_EQ(r.one_plus_one.status, CellStatus::exact);
  EXPECT_NE(r.path.status, CellStatus::out_of_band);
  EXPECT_NE(r.pxt.status, CellStatus::out_of_band);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.path_le_one_plus_one);
  EXPECT_EQ(r.runs.rows.size(), 4u);
  EXPECT_LE(r.pxt_summary.min, r.pxt_summary.median);
  EXPECT_LE(r.pxt_summary.median, r.pxt_summary.max);
}

TEST(Table1, PatternFilterKeepsSixRows) {
  Table1Options opt;
  opt.pattern = Pattern::neighbor;
  opt.runs = 1;
  opt.audit = false;
  auto rows = table1(opt);
  ASSERT_EQ(rows.size(), 6u);
  std::size_t skipped = 0;
  for (const auto& r : rows) {
    EXPECT_EQ(r.pattern, Pattern::neighbor);
    skipped += r.skipped;
  }
  EXPECT_EQ(skipped, 1u);
}

TEST(Table1, ReferenceLookup) {
  EXPECT_EQ(reference_row("k66", Pattern::uniform)->one_plus_one, 840u);
  EXPECT_EQ(reference_row("grid3x4", Pattern::unbalanced)->working, 704u);
  EXPECT_EQ(reference_row("petersen", Pattern::uniform), nullptr);
  EXPECT_EQ(kReferenceTable.size(), 18u);
}

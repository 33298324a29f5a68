#include <cstring>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "gravent/feasibility/presets.hpp"
#include "gravent/io/sweep_export.hpp"
#include "gravent/sweep.hpp"
#include "xml_check.hpp"

using namespace gravent;

namespace {

SweepSpec dx_pressure(int n1 = 9, int n2 = 13) {
  SweepSpec s{presets::silica_csign(), {Unknown::Pressure, 1e-17, 1e-13, n1}, {Unknown::DeltaX, 1e-7, 1e-4, n2}, {}, {}};
  return s;
}

std::string grid_text(const SweepGrid& g) {
  std::ostringstream os;
  io::write_grid_csv(os, g);
  return os.str();
}

}  // namespace

TEST(Axis, Coordinates) {
  const SweepAxis lg{Unknown::Pressure, 1e-17, 1e-13, 5};
  const auto v = lg.coordinates();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.front(), 1e-17);
  EXPECT_EQ(v.back(), 1e-13);
  EXPECT_NEAR(v[2] / 1e-15, 1.0, 1e-14);
  const SweepAxis ln{Unknown::TempEnvironment, 1.0, 3.0, 3, AxisScale::Linear};
  EXPECT_EQ(ln.coordinates(), (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(Axis, Invariants) {
  EXPECT_THROW((SweepAxis{Unknown::Pressure, 1.0, 1.0, 3}.validate("axis1")), ConfigError);
  EXPECT_THROW((SweepAxis{Unknown::Pressure, 1.0, 2.0, 1}.validate("axis1")), ConfigError);
  EXPECT_THROW((SweepAxis{Unknown::Pressure, 0.0, 2.0, 3}.validate("axis1")), ConfigError);
  EXPECT_NO_THROW((SweepAxis{Unknown::Pressure, 0.0, 2.0, 3, AxisScale::Linear}.validate("axis1")));
  SweepSpec s = dx_pressure();
  s.axis2.unknown = Unknown::Pressure;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(RunSweep, StraddlingCellsDisagree) {
  SweepSpec s{presets::silica_csign(), {Unknown::DeltaX, 1e-6, 4e-6, 2}, {Unknown::Pressure, 1e-16, 1e-14, 2}, {}, {}};
  const SweepGrid g = run_sweep(s);
  ASSERT_EQ(g.cells.size(), 4u);
  EXPECT_TRUE(g.at(0, 0).feasible);
  EXPECT_FALSE(g.at(0, 1).feasible);
  EXPECT_TRUE(g.at(1, 0).feasible);
  EXPECT_FALSE(g.at(1, 1).feasible);
  for (const auto& c : g.cells) {
    EXPECT_TRUE(c.valid);
    EXPECT_EQ(c.binding, ChannelId::GasScattering);
  }
}

TEST(RunSweep, AllFeasibleGrid) {
  SweepSpec s{presets::silica_csign(), {Unknown::DeltaX, 1e-5, 1e-4, 3}, {Unknown::Pressure, 1e-18, 1e-17, 3}, {}, {}};
  const SweepGrid g = run_sweep(s);
  for (const auto& c : g.cells) {
    EXPECT_TRUE(c.feasible);
    EXPECT_GT(c.min_margin, 1.0);
  }
  EXPECT_THROW(frontier(s, g), NumericalError);
}

TEST(RunSweep, InvalidCellsAreRecorded) {
  // R beyond d/2 = alpha R at fixed distance is not admissible.
  auto base = presets::silica_csign();
  base.geometry = PairGeometry::from_distance(300e-9, 2e-6);
  SweepSpec s{base, {Unknown::Radius, 50e-9, 200e-9, 4}, {Unknown::Pressure, 1e-16, 1e-14, 2}, {}, {}};
  const SweepGrid g = run_sweep(s);
  EXPECT_EQ(g.cells.size(), 8u);
  // Log axis: 50, 79, 126, 200 nm. Only the last exceeds 150 nm.
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(g.at(i, j).valid) << i;
    EXPECT_FALSE(g.at(3, j).valid);
    EXPECT_FALSE(g.at(3, j).error.empty());
  }
  EXPECT_NEAR(g.invalid_fraction(), 0.25, 1e-15);
}

TEST(RunSweep, SwappingAxesTransposes) {
  SweepSpec a = dx_pressure(5, 7);
  SweepSpec b = a;
  std::swap(b.axis1, b.axis2);
  const SweepGrid ga = run_sweep(a);
  const SweepGrid gb = run_sweep(b);
  ASSERT_EQ(ga.x1, gb.x2);
  ASSERT_EQ(ga.x2, gb.x1);
  for (std::size_t i = 0; i < ga.x1.size(); ++i)
    for (std::size_t j = 0; j < ga.x2.size(); ++j) {
      EXPECT_EQ(ga.at(i, j).feasible, gb.at(j, i).feasible);
      EXPECT_EQ(std::memcmp(&ga.at(i, j).min_margin, &gb.at(j, i).min_margin, sizeof(double)), 0);
    }
}

TEST(RunSweep, ThreadCountDoesNotChangeOutput) {
  const SweepSpec s = dx_pressure();
  const std::string ref = grid_text(run_sweep(s, 1));
  for (unsigned t : {2u, 3u, 8u, 0u}) EXPECT_EQ(grid_text(run_sweep(s, t)), ref) << t;
}

TEST(Frontier, GasLawAlongBoundary) {
  const SweepSpec s = dx_pressure();
  const SweepGrid g = run_sweep(s);
  const Frontier f = frontier(s, g);
  ASSERT_GE(f.points.size(), 5u);
  const double R = s.base.body.radius();
  const double first = R * f.points[0].axis2 * f.points[0].axis2 / f.points[0].axis1;
  for (std::size_t k = 0; k < f.points.size(); ++k) {
    const auto& p = f.points[k];
    EXPECT_EQ(p.binding, ChannelId::GasScattering);
    EXPECT_NEAR(R * p.axis2 * p.axis2 / p.axis1 / first, 1.0, 0.01);
    EXPECT_NEAR(p.min_margin, 1.0, 1e-2);
    if (k) {
      EXPECT_GT(p.axis1, f.points[k - 1].axis1);
      EXPECT_GT(p.axis2, f.points[k - 1].axis2);
    }
  }
}

TEST(Frontier, SkippedColumnsGetNotes) {
  // Low-pressure columns are feasible over the whole delta_x range.
  SweepSpec s{presets::silica_csign(), {Unknown::Pressure, 1e-22, 1e-14, 5}, {Unknown::DeltaX, 1e-7, 1e-5, 5}, {}, {}};
  const SweepGrid g = run_sweep(s);
  const Frontier f = frontier(s, g);
  EXPECT_FALSE(f.notes.empty());
  EXPECT_EQ(f.points.size() + f.notes.size(), 5u);
}

TEST(Export, GridCsvRoundTrip) {
  const SweepSpec s = dx_pressure(4, 6);
  const SweepGrid g = run_sweep(s);
  const std::string text = grid_text(g);
  EXPECT_EQ(text.substr(0, text.find("\r\n")), "axis1_pressure,axis2_delta_x,valid,feasible,min_margin,binding_channel,error");
  std::istringstream is(text);
  const SweepGrid back = io::read_grid_csv(is);
  ASSERT_EQ(back.x1, g.x1);
  ASSERT_EQ(back.x2, g.x2);
  ASSERT_EQ(back.cells.size(), g.cells.size());
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    EXPECT_EQ(back.cells[k].valid, g.cells[k].valid);
    EXPECT_EQ(back.cells[k].feasible, g.cells[k].feasible);
    EXPECT_EQ(back.cells[k].binding, g.cells[k].binding);
    EXPECT_EQ(std::memcmp(&back.cells[k].min_margin, &g.cells[k].min_margin, sizeof(double)), 0);
  }
  EXPECT_EQ(grid_text(back), text);
}

TEST(Export, GridCsvQuotesErrors) {
  auto base = presets::silica_csign();
  base.geometry = PairGeometry::from_distance(300e-9, 2e-6);
  SweepSpec s{base, {Unknown::Radius, 50e-9, 200e-9, 2}, {Unknown::Pressure, 1e-16, 1e-14, 2}, {}, {}};
  SweepGrid g = run_sweep(s);
  g.at(1, 0).error = "a, \"quoted\" message";
  std::istringstream is(grid_text(g));
  const SweepGrid back = io::read_grid_csv(is);
  EXPECT_EQ(back.at(1, 0).error, "a, \"quoted\" message");
  EXPECT_FALSE(back.at(1, 0).valid);
}

TEST(Export, MalformedGridCsv) {
  std::istringstream empty("");
  EXPECT_THROW(io::read_grid_csv(empty), ConfigError);
  std::istringstream bad_head("x,y\r\n");
  EXPECT_THROW(io::read_grid_csv(bad_head), ConfigError);
  std::istringstream short_row("axis1_pressure,axis2_delta_x,valid,feasible,min_margin,binding_channel,error\r\n1,2\r\n");
  EXPECT_THROW(io::read_grid_csv(short_row), ConfigError);
}

TEST(Export, EmptyFrontierIsHeaderOnly) {
  const SweepGrid g = run_sweep(dx_pressure(2, 2));
  std::ostringstream os;
  io::write_frontier_csv(os, g, Frontier{});
  EXPECT_EQ(os.str(), "axis1_pressure,axis2_delta_x,binding_channel,min_margin\r\n");
}

TEST(Export, FrontierCsvRows) {
  const SweepSpec s = dx_pressure();
  const SweepGrid g = run_sweep(s);
  const Frontier f = frontier(s, g);
  std::ostringstream os;
  io::write_frontier_csv(os, g, f);
  const std::string text = os.str();
  std::size_t rows = 0;
  for (std::size_t p = text.find("\r\n"); p != std::string::npos; p = text.find("\r\n", p + 2)) ++rows;
  EXPECT_EQ(rows, f.points.size() + 1);
}

TEST(Export, SvgIsWellFormedAndDeterministic) {
  const SweepSpec s = dx_pressure();
  const SweepGrid g = run_sweep(s);
  const Frontier f = frontier(s, g);
  std::ostringstream a, b;
  io::write_svg(a, g, f);
  io::write_svg(b, run_sweep(s, 4), frontier(s, run_sweep(s, 4)));
  EXPECT_EQ(a.str(), b.str());
  std::string why;
  EXPECT_TRUE(xml_check::well_formed(a.str(), &why)) << why;
  EXPECT_NE(a.str().find("id=\"frontier\""), std::string::npos);
  EXPECT_EQ(xml_check::count(a.str(), "<rect"), 1 + g.cells.size());

  const SweepSpec lin{presets::silica_csign(), {Unknown::TempEnvironment, 1.0, 60.0, 4, AxisScale::Linear},
                      {Unknown::DeltaX, 1e-7, 1e-4, 4}, {}, {}};
  std::ostringstream c;
  io::write_svg(c, run_sweep(lin), Frontier{});
  EXPECT_TRUE(xml_check::well_formed(c.str(), &why)) << why;
  EXPECT_EQ(c.str().find("id=\"frontier\""), std::string::npos);
}

TEST(XmlCheck, RejectsBrokenDocuments) {
  EXPECT_TRUE(xml_check::well_formed("<a><b/></a>"));
  EXPECT_FALSE(xml_check::well_formed("<a><b></a>"));
  EXPECT_FALSE(xml_check::well_formed("<a x=\"1></a>"));
  EXPECT_FALSE(xml_check::well_formed("<a></a><b></b>"));
  EXPECT_FALSE(xml_check::well_formed("<a>&</a>"));
}

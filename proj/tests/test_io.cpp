#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "bgk/io.hpp"

using namespace bgk;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("bgk_io_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// build_grid insists on a stencil-sized mesh; file formats do not care.
GridPtr tiny_grid(std::size_t nx, std::size_t nv) {
  auto g = build_grid(0, 1, -1, 1, 5, nv);
  g.n_x = nx;
  g.dx = 1.0 / static_cast<double>(nx);
  g.x_centers.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) g.x_centers[i] = (static_cast<double>(i) + 0.5) * g.dx;
  return std::make_shared<const PhaseSpaceGrid>(std::move(g));
}

}  // namespace

TEST(ParseConfig, EmptyGivesDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c.grid.n_x, 256u);
  EXPECT_EQ(c.grid.n_v, 128u);
  EXPECT_EQ(c.grid.x_low, -1.25);
  EXPECT_EQ(c.grid.x_high, 1.25);
  EXPECT_EQ(c.grid.v_low, -7.0);
  EXPECT_EQ(c.grid.v_high, 7.0);
  EXPECT_EQ(c.run.epsilon, 0.01);
  EXPECT_EQ(c.run.cfl, 1.95);
  EXPECT_EQ(c.run.final_time, 0.16);
  EXPECT_EQ(c.run.ic.inner_halfwidth, 0.5);
  EXPECT_EQ(c.run.ic.inner, (FluidState{1.0, 0.25, 1.0}));
  EXPECT_EQ(c.run.ic.outer, (FluidState{0.125, -0.1, 0.8}));
  EXPECT_TRUE(c.run.correction_enabled);
  EXPECT_EQ(c.run.output_every, 0u);
}

TEST(ParseConfig, PartialOverride) {
  auto c = parse_config("cfl = 1.0\ncorrection = false\n");
  SolverConfig expect;
  expect.run.cfl = 1.0;
  expect.run.correction_enabled = false;
  EXPECT_EQ(c, expect);
}

TEST(ParseConfig, AllKeysAndComments) {
  const auto c = parse_config(
      "# full override\n"
      "nx = 64   # spatial cells\n"
      "nv=32\n"
      "x_low = -2\n x_high = 3\n"
      "v_low = -5.5\nv_high = 6\n"
      "epsilon = 1e-3\ncfl = 0.5\nfinal_time = 0.25\n"
      "inner_halfwidth = 0.75\n"
      "rho_inner = 2\nu_inner = 0.5\nT_inner = 1.5\n"
      "rho_outer = 0.5\nu_outer = -0.5\nT_outer = 0.5\n"
      "correction = true\noutput_every = 10\noutput_dir = runs/a b\n\n");
  EXPECT_EQ(c.grid, (GridSpec{-2, 3, -5.5, 6, 64, 32}));
  EXPECT_EQ(c.run.epsilon, 1e-3);
  EXPECT_EQ(c.run.cfl, 0.5);
  EXPECT_EQ(c.run.final_time, 0.25);
  EXPECT_EQ(c.run.ic.inner_halfwidth, 0.75);
  EXPECT_EQ(c.run.ic.inner, (FluidState{2, 0.5, 1.5}));
  EXPECT_EQ(c.run.ic.outer, (FluidState{0.5, -0.5, 0.5}));
  EXPECT_EQ(c.run.output_every, 10u);
  EXPECT_EQ(c.output_dir, "runs/a b");
}

TEST(ParseConfig, RejectsBadValues) {
  EXPECT_THROW(parse_config("epsilon = 0"), ConfigError);
  EXPECT_THROW(parse_config("epsilon = -1"), ConfigError);
  EXPECT_THROW(parse_config("cfl = 2.5"), ConfigError);
  EXPECT_THROW(parse_config("final_time = 0"), ConfigError);
  EXPECT_THROW(parse_config("nx = 4"), ConfigError);
  EXPECT_THROW(parse_config("nx = -4"), ConfigError);
  EXPECT_THROW(parse_config("T_inner = 0"), ConfigError);
  EXPECT_THROW(parse_config("x_low = 2"), ConfigError);
  EXPECT_THROW(parse_config("correction = yes"), ConfigError);
  EXPECT_THROW(parse_config("cfl = 1.0x"), ConfigError);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  try {
    parse_config("cfl = 1\n\n# fine\nepsilom = 0.1\n");
    FAIL();
  } catch (const ConfigError& e) {
    ASSERT_TRUE(e.line().has_value());
    EXPECT_EQ(*e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("epsilom"), std::string::npos);
  }
  try {
    parse_config("nx = 32\njust some words\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line().value_or(0), 2u);
  }
  try {
    parse_config("cfl = abc\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line().value_or(0), 1u);
  }
}

TEST(FormatReal, CanonicalZeroAndRoundTrip) {
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(parse_real(format_real(1.0 / 3.0)), 1.0 / 3.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mant(-1, 1);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int k = 0; k < 5000; ++k) {
    const double x = std::ldexp(mant(rng), expo(rng));
    EXPECT_EQ(parse_real(format_real(x)), x) << format_real(x);
  }
  EXPECT_EQ(parse_real(format_real(5e-324)), 5e-324);
}

TEST(Snapshot, ZeroFieldLines) {
  const auto grid = tiny_grid(2, 3);
  DistributionField f(grid);
  const auto text = format_snapshot(f, 0.0);
  EXPECT_NE(text.find("\n0,0,0\n0,0,0\n"), std::string::npos);
  EXPECT_EQ(text.rfind("0,0,0\n"), text.size() - 6);
}

TEST(Snapshot, HeaderAndRoundTrip) {
  const auto grid = make_grid({-1.25, 1.25, -7, 7, 9, 7});
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N;
  DistributionField f(grid);
  for (auto& x : f.values()) x = N(rng) / 3.0;
  const auto dir = temp_dir("snap");
  write_snapshot(f, 0.16, dir / "pdf.csv");
  const auto d = read_snapshot(dir / "pdf.csv");
  EXPECT_EQ(d.time, 0.16);
  EXPECT_EQ(d.grid, grid->spec());
  ASSERT_EQ(d.values.size(), f.values().size());
  for (std::size_t k = 0; k < d.values.size(); ++k) EXPECT_EQ(d.values[k], f.values()[k]);
  const auto text = read_text_file(dir / "pdf.csv");
  EXPECT_TRUE(text.starts_with("# time = 0.16\n# n_x = 9\n# n_v = 7\n"));
}

TEST(Snapshot, MalformedInput) {
  EXPECT_THROW(parse_snapshot("1,2,3\n"), ConfigError);
  EXPECT_THROW(parse_snapshot("# time = 0\n# n_x = 1\n# n_v = 3\n# x_low = 0\n# x_high = 1\n"
                              "# v_low = -1\n# v_high = 1\n1,2\n"),
               ConfigError);
  EXPECT_THROW(parse_snapshot("# time = 0\n# n_x = 2\n# n_v = 2\n# x_low = 0\n# x_high = 1\n"
                              "# v_low = -1\n# v_high = 1\n1,2\n"),
               ConfigError);
  EXPECT_NO_THROW(parse_snapshot("# time = 0\n# n_x = 1\n# n_v = 2\n# x_low = 0\n# x_high = 1\n"
                                 "# v_low = -1\n# v_high = 1\n1,2\n"));
}

TEST(Moments, UniformStateRowsAndRoundTrip) {
  const auto grid = make_grid({-1.25, 1.25, -7, 7, 12, 64});
  InitialCondition ic;
  ic.inner = ic.outer = {1, 0, 1};
  const auto m = compute_moments(sample_initial_condition(grid, ic));
  const auto text = format_moments(m, *grid, 0.0);
  EXPECT_TRUE(text.starts_with("# time = 0\nx,rho,u,T,m,E\n"));
  const auto d = parse_moments(text);
  ASSERT_EQ(d.x.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(d.x[i], grid->x_centers[i]);
    EXPECT_EQ(d.moments.rho[i], m.rho[i]);
    EXPECT_EQ(d.moments.u[i], m.u[i]);
    EXPECT_EQ(d.moments.T[i], m.T[i]);
    EXPECT_EQ(d.moments.mom[i], m.mom[i]);
    EXPECT_EQ(d.moments.energy[i], m.energy[i]);
    EXPECT_EQ(d.moments.rho[i], d.moments.rho[0]);
    EXPECT_NEAR(d.moments.T[i], 1.0, 1e-9);
  }
}

TEST(Moments, DefaultInitialPlateaus) {
  const auto grid = make_grid({});
  const auto d = parse_moments(format_moments(compute_moments(sample_initial_condition(grid, {})), *grid, 0));
  for (std::size_t i = 0; i < grid->n_x; ++i) {
    const double expect = std::abs(d.x[i]) < 0.5 ? 1.0 : 0.125;
    EXPECT_NEAR(d.moments.rho[i], expect, 1e-9);
  }
}

TEST(Conservation, FormatAndRoundTrip) {
  const auto grid = make_grid({-1.25, 1.25, -7, 7, 16, 32});
  RunConfig c;
  c.final_time = 0.02;
  Solver solver(sample_initial_condition(grid, c.ic), c);
  solver.run_to_end();
  const auto text = format_conservation(solver.conservation());
  EXPECT_TRUE(text.starts_with("step,time,drho,dm,dE,min_f,min_mtilde\n0,0,0,0,0,"));
  const auto rows = parse_conservation(text);
  ASSERT_EQ(rows.size(), solver.conservation().records.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].step, k);
    EXPECT_EQ(rows[k].dE, solver.conservation().records[k].dE);
    EXPECT_EQ(rows[k].min_mtilde, solver.conservation().records[k].min_mtilde);
  }
}

TEST(Metadata, EchoesResolvedValues) {
  SolverConfig cfg;
  const auto g = build_grid(cfg.grid);
  const auto ts = plan_timestepping(g, cfg.run);
  const auto j = to_json(RunMetadata{cfg, ts, g.dx, g.dv, g.v_max_abs, 1.5});
  EXPECT_EQ(j["n_steps"].get<std::size_t>(), 59u);
  EXPECT_EQ(j["dt"].get<double>(), ts.dt);
  EXPECT_EQ(j["cfl_effective"].get<double>(), ts.cfl_effective);
  EXPECT_EQ(j["theta_half"].get<double>(), ts.theta_half);
  EXPECT_EQ(j["theta_formula"].get<std::string>(), "dt*(dt+24*eps)/((dt+6*eps)*(dt+8*eps))");
  EXPECT_EQ(j["grid"]["dx"].get<double>(), g.dx);
  EXPECT_TRUE(j["correction_enabled"].get<bool>());
}

TEST(Files, IoErrorsNameThePath) {
  const auto grid = tiny_grid(2, 3);
  DistributionField f(grid);
  try {
    write_snapshot(f, 0, "/nonexistent-dir/x/pdf.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x/pdf.csv"), std::string::npos);
  }
  EXPECT_THROW(load_config("/nonexistent-dir/cfg.txt"), IoError);
}

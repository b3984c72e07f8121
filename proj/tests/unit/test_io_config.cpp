#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "faddeev/config.hpp"
#include "faddeev/io.hpp"
#include "test_util.hpp"

using namespace faddeev;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidConfig);
    return e.what();
  }
  return "";
}

bool mentions(const std::string& msg, const std::string& key) { return msg.find(key) != std::string::npos; }

}  // namespace

TEST_CASE("empty config is the default") {
  const AppConfig a = parse_config("{}");
  const AppConfig d = default_config();
  CHECK(a.run.nx == d.run.nx);
  CHECK(a.run.t_final == d.run.t_final);
  CHECK(a.run.data.epsilon == d.run.data.epsilon);
  CHECK(a.run.model.kappa == 1.0);
  CHECK(a.fit.t0 == 10.0);
  CHECK(a.fit.t1 == 40.0);
}

TEST_CASE("config fields") {
  const AppConfig c = parse_config(R"({
    "grid": {"nx": 128, "L": 60},
    "time": {"t_final": 5, "cfl": 0.25, "snapshot_stride": 3, "diag_stride": 2},
    "data": {"profile": "gaussian", "epsilon": 0.02, "sigma": 3, "centers": [[0, 0], [1, 1]],
             "weights": [1, -1], "velocity": [0.5, 0], "noise": 0.1},
    "chart": {"r_max": 0.8},
    "model": {"kappa": -1, "det_floor": 1e-8},
    "norms": [{"p": "inf", "q": 2, "s": 1, "region": "ext"}],
    "fit": {"window": [2, 5]},
    "seed": 7})");
  CHECK(c.run.nx == 128);
  CHECK(*c.run.half_width == 60.0);
  CHECK(c.run.cfl == 0.25);
  CHECK(c.run.snapshot_stride == 3);
  CHECK(c.run.data.centers[1].y == 1.0);
  CHECK(c.run.data.weights[1] == -1.0);
  CHECK(c.run.data.seed == 7);
  CHECK(c.run.model.kappa == -1.0);
  CHECK(c.run.model.r_max == 0.8);
  REQUIRE(c.run.norms.size() == 1);
  CHECK(std::isinf(c.run.norms[0].p));
  CHECK(c.run.norms[0].region == Region::Exterior);
  CHECK(c.fit.t1 == 5.0);
}

TEST_CASE("config errors name the key") {
  CHECK(mentions(config_error(R"({"grid": {"nx": 127}})"), "grid.nx"));
  CHECK(mentions(config_error(R"({"grid": {"nx": 64.5}})"), "grid.nx"));
  CHECK(mentions(config_error(R"({"time": {"t_end": 3}})"), "time.t_end"));
  CHECK(mentions(config_error(R"({"bogus": 1})"), "bogus"));
  CHECK(mentions(config_error(R"({"data": {"profile": "sech"}})"), "data.profile"));
  CHECK(mentions(config_error(R"({"data": {"weights": [1]}})"), "data.weights"));
  CHECK(mentions(config_error(R"({"norms": [{"p": 0.5}]})"), "norms[0]"));
  CHECK(mentions(config_error(R"({"norms": [{"region": "mid"}]})"), "norms[0].region"));
  CHECK(mentions(config_error(R"({"fit": {"window": [10, 15]}})"), "fit.window"));
  CHECK(mentions(config_error(R"({"seed": -3})"), "seed"));
  CHECK(mentions(config_error(R"({"grid": {"nx": 64, "L": 10}})"), "grid.L"));
  CHECK(mentions(config_error("{\"grid\": "), "malformed"));
  CHECK(testutil::thrown_kind([] { load_config("/nonexistent/cfg.json"); }).has_value());
}

TEST_CASE("snapshot round trip") {
  const Grid2D g(16, 3.0);
  FieldState s = FieldState::zero(g, 1.25);
  for (std::size_t k = 0; k < g.size(); ++k) {
    s.n1[k] = std::sin(0.1 * k);
    s.n2[k] = 1.0 / 3.0 + 1e-17 * k;
    s.m1[k] = -std::cos(0.3 * k);
    s.m2[k] = std::ldexp(1.0, -1000);
  }
  std::stringstream ss;
  write_snapshot(ss, s);
  const FieldState r = read_snapshot(ss);
  CHECK(r.grid == g);
  CHECK(r.t == 1.25);
  CHECK(testutil::max_diff(r.n1, s.n1) == 0.0);
  CHECK(testutil::max_diff(r.n2, s.n2) == 0.0);
  CHECK(testutil::max_diff(r.m1, s.m1) == 0.0);
  CHECK(testutil::max_diff(r.m2, s.m2) == 0.0);

  std::stringstream bad("XXXX0000");
  CHECK(testutil::thrown_kind([&] { read_snapshot(bad); }) == ErrorKind::Io);
  std::string cut;
  {
    std::stringstream full;
    write_snapshot(full, s);
    cut = full.str().substr(0, 100);
  }
  std::stringstream trunc(cut);
  CHECK(testutil::thrown_kind([&] { read_snapshot(trunc); }) == ErrorKind::Io);
}

TEST_CASE("csv output") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(NAN) == "nan");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  SeriesTable t({"a", "b"});
  t.add(0.0, {1.0, NAN});
  t.add(0.5, {0.25, 2.0});
  std::stringstream os;
  write_csv(os, t);
  std::string line, last;
  std::vector<std::string> lines;
  while (std::getline(os, line)) lines.push_back(line);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[lines.size() - 3] == "t,a,b");
  CHECK(lines[lines.size() - 2] == "0,1,nan");
  CHECK(lines.back() == "0.5,0.25,2");
}

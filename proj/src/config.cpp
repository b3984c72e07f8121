#include "faddeev/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace faddeev {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::InvalidConfig, path + ": " + msg);
}

void only_keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
  if (!obj.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) bad(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
}

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path, "expected a number");
  return v.get<double>();
}

// Accepts a number or the string "inf".
double get_exponent(const json& v, const std::string& path) {
  if (v.is_string() && v.get<std::string>() == "inf") return kInf;
  return get_number(v, path);
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad(path, "expected an integer");
  return v.get<int>();
}

std::array<double, 2> get_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) bad(path, "expected [a, b]");
  return {get_number(v[0], path + "[0]"), get_number(v[1], path + "[1]")};
}

template <class Fn>
void opt(const json& obj, const std::string& parent, const char* key, Fn&& fn) {
  if (obj.contains(key)) fn(obj.at(key), join(parent, key));
}

}  // namespace

AppConfig default_config() { return AppConfig{}; }

AppConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    bad("<root>", std::string("malformed JSON: ") + e.what());
  }
  only_keys(root, "", {"grid", "time", "data", "chart", "model", "norms", "fit", "seed"});
  AppConfig cfg;
  RunConfig& rc = cfg.run;

  opt(root, "", "grid", [&](const json& g, const std::string& p) {
    only_keys(g, p, {"nx", "L"});
    opt(g, p, "nx", [&](const json& v, const std::string& k) { rc.nx = get_int(v, k); });
    opt(g, p, "L", [&](const json& v, const std::string& k) { rc.half_width = get_number(v, k); });
  });
  opt(root, "", "time", [&](const json& t, const std::string& p) {
    only_keys(t, p, {"t_final", "cfl", "snapshot_stride", "diag_stride"});
    opt(t, p, "t_final", [&](const json& v, const std::string& k) { rc.t_final = get_number(v, k); });
    opt(t, p, "cfl", [&](const json& v, const std::string& k) { rc.cfl = get_number(v, k); });
    opt(t, p, "snapshot_stride",
        [&](const json& v, const std::string& k) { rc.snapshot_stride = get_int(v, k); });
    opt(t, p, "diag_stride", [&](const json& v, const std::string& k) { rc.diag_stride = get_int(v, k); });
  });
  opt(root, "", "data", [&](const json& d, const std::string& p) {
    only_keys(d, p, {"profile", "epsilon", "sigma", "centers", "weights", "velocity", "noise"});
    opt(d, p, "profile", [&](const json& v, const std::string& k) {
      if (!v.is_string() || v.get<std::string>() != "gaussian") bad(k, "only \"gaussian\" is supported");
    });
    opt(d, p, "epsilon", [&](const json& v, const std::string& k) { rc.data.epsilon = get_number(v, k); });
    opt(d, p, "sigma", [&](const json& v, const std::string& k) { rc.data.sigma = get_number(v, k); });
    opt(d, p, "centers", [&](const json& v, const std::string& k) {
      if (!v.is_array() || v.size() != 2) bad(k, "expected two centers [[x, y], [x, y]]");
      for (int i = 0; i < 2; ++i) {
        const auto c = get_pair(v[i], k + "[" + std::to_string(i) + "]");
        rc.data.centers[i] = {c[0], c[1]};
      }
    });
    opt(d, p, "weights", [&](const json& v, const std::string& k) { rc.data.weights = get_pair(v, k); });
    opt(d, p, "velocity", [&](const json& v, const std::string& k) { rc.data.velocity = get_pair(v, k); });
    opt(d, p, "noise", [&](const json& v, const std::string& k) { rc.data.noise = get_number(v, k); });
  });
  opt(root, "", "chart", [&](const json& c, const std::string& p) {
    only_keys(c, p, {"r_max"});
    opt(c, p, "r_max", [&](const json& v, const std::string& k) { rc.model.r_max = get_number(v, k); });
  });
  opt(root, "", "model", [&](const json& m, const std::string& p) {
    only_keys(m, p, {"kappa", "det_floor"});
    opt(m, p, "kappa", [&](const json& v, const std::string& k) { rc.model.kappa = get_number(v, k); });
    opt(m, p, "det_floor",
        [&](const json& v, const std::string& k) { rc.model.det_floor = get_number(v, k); });
  });
  opt(root, "", "norms", [&](const json& list, const std::string& p) {
    if (!list.is_array()) bad(p, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string ip = p + "[" + std::to_string(i) + "]";
      const json& n = list[i];
      only_keys(n, ip, {"p", "q", "s", "region"});
      NormSpec spec;
      opt(n, ip, "p", [&](const json& v, const std::string& k) { spec.p = get_exponent(v, k); });
      opt(n, ip, "q", [&](const json& v, const std::string& k) { spec.q = get_exponent(v, k); });
      opt(n, ip, "s", [&](const json& v, const std::string& k) { spec.s = get_int(v, k); });
      opt(n, ip, "region", [&](const json& v, const std::string& k) {
        if (!v.is_string()) bad(k, "expected \"all\", \"int\" or \"ext\"");
        try {
          spec.region = region_from_string(v.get<std::string>());
        } catch (const Error&) {
          bad(k, "expected \"all\", \"int\" or \"ext\"");
        }
      });
      try {
        spec.validate();
      } catch (const Error& e) {
        bad(ip, e.what());
      }
      rc.norms.push_back(spec);
    }
  });
  opt(root, "", "fit", [&](const json& f, const std::string& p) {
    only_keys(f, p, {"window"});
    opt(f, p, "window", [&](const json& v, const std::string& k) {
      const auto w = get_pair(v, k);
      if (!(w[0] >= 0.0 && w[1] >= 2.0 * w[0] && w[1] > w[0])) bad(k, "need 0 <= t0 and t1 >= 2 t0");
      cfg.fit = {w[0], w[1]};
    });
  });
  opt(root, "", "seed", [&](const json& v, const std::string& k) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      bad(k, "expected a non-negative integer");
    rc.data.seed = v.get<std::uint64_t>();
  });

  rc.validate();
  return cfg;
}

AppConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::InvalidConfig, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace faddeev

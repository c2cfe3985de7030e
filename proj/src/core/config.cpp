/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>

#include "error.hpp"

namespace irga {

namespace {

constexpr const char* kModule = "config";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const std::string t = trim(v);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw_config(kModule, key + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const std::string t = trim(v);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw_config(kModule, key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const std::string t = trim(v);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw_config(kModule, key + ": expected a nonnegative integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  std::string t = trim(v);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "off" || t == "no" || t == "0") return false;
  throw_config(kModule, key + ": expected a boolean, got '" + v + "'");
}

template <typename T, typename F>
std::vector<T> map_list(const std::string& v, F f) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) out.push_back(f(item));
  return out;
}

struct Entry {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<nlohmann::ordered_json(const RunConfig&)> get;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    auto num = [&e](std::string key, auto member) {
      e.push_back({key, [key, member](RunConfig& c, const std::string& v) { member(c) = to_double(key, v); },
                   [member](const RunConfig& c) { return nlohmann::ordered_json(member(const_cast<RunConfig&>(c))); }});
    };
    auto integer = [&e](std::string key, auto member) {
      e.push_back({key,
                   [key, member](RunConfig& c, const std::string& v) {
                     member(c) = static_cast<std::remove_reference_t<decltype(member(c))>>(to_int(key, v));
                   },
                   [member](const RunConfig& c) { return nlohmann::ordered_json(member(const_cast<RunConfig&>(c))); }});
    };
    auto flag = [&e](std::string key, auto member) {
      e.push_back({key, [key, member](RunConfig& c, const std::string& v) { member(c) = to_bool(key, v); },
                   [member](const RunConfig& c) { return nlohmann::ordered_json(member(const_cast<RunConfig&>(c))); }});
    };
    auto text = [&e](std::string key, auto member) {
      e.push_back({key, [member](RunConfig& c, const std::string& v) { member(c) = trim(v); },
                   [member](const RunConfig& c) { return nlohmann::ordered_json(member(const_cast<RunConfig&>(c))); }});
    };

    e.push_back({"prior", [](RunConfig& c, const std::string& v) { c.irga.prior = parse_nuisance_prior(trim(v)); },
                 [](const RunConfig& c) { return nlohmann::ordered_json(to_string(c.irga.prior)); }});
    num("q", [](RunConfig& c) -> double& { return c.irga.spike_slab.q; });
    num("psi", [](RunConfig& c) -> double& { return c.irga.spike_slab.psi; });
    num("a_psi", [](RunConfig& c) -> double& { return c.irga.sbl.a_psi; });
    num("b_psi", [](RunConfig& c) -> double& { return c.irga.sbl.b_psi; });
    num("sbl_initial_psi", [](RunConfig& c) -> double& { return c.irga.sbl.initial_psi; });
    num("vartheta", [](RunConfig& c) -> double& { return c.irga.normal_gamma.vartheta; });
    num("d0", [](RunConfig& c) -> double& { return c.irga.normal_gamma.d0; });
    num("d1", [](RunConfig& c) -> double& { return c.irga.normal_gamma.d1; });
    num("sigma_shape", [](RunConfig& c) -> double& { return c.irga.sigma.shape; });
    num("sigma_rate", [](RunConfig& c) -> double& { return c.irga.sigma.rate; });
    e.push_back({"covariance",
                 [](RunConfig& c, const std::string& v) { c.irga.covariance = parse_nuisance_covariance(trim(v)); },
                 [](const RunConfig& c) { return nlohmann::ordered_json(to_string(c.irga.covariance)); }});
    flag("sv", [](RunConfig& c) -> bool& { return c.irga.sv; });
    integer("sv_smoothing", [](RunConfig& c) -> int& { return c.irga.sv_options.smoothing_window; });
    num("tol", [](RunConfig& c) -> double& { return c.irga.vamp.tol; });
    integer("max_iter", [](RunConfig& c) -> int& { return c.irga.vamp.max_iter; });
    num("damping", [](RunConfig& c) -> double& { return c.irga.vamp.damping; });
    e.push_back({"draws",
                 [](RunConfig& c, const std::string& v) {
                   c.irga.mcmc.draws = static_cast<int>(to_int("draws", v));
                   c.benchmark.mcmc.draws = c.irga.mcmc.draws;
                 },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.irga.mcmc.draws); }});
    e.push_back({"burnin",
                 [](RunConfig& c, const std::string& v) {
                   c.irga.mcmc.burn_in = static_cast<int>(to_int("burnin", v));
                   c.benchmark.mcmc.burn_in = c.irga.mcmc.burn_in;
                 },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.irga.mcmc.burn_in); }});
    e.push_back({"seed", [](RunConfig& c, const std::string& v) { c.seed = to_uint("seed", v); },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.seed); }});
    integer("workers", [](RunConfig& c) -> int& { return c.workers; });
    integer("lags", [](RunConfig& c) -> Index& { return c.var.lags; });
    e.push_back({"mode", [](RunConfig& c, const std::string& v) { c.var.mode = parse_partition_mode(trim(v)); },
                 [](const RunConfig& c) { return nlohmann::ordered_json(to_string(c.var.mode)); }});
    e.push_back({"vars", [](RunConfig& c, const std::string& v) { c.vars = split_list(v); },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.vars); }});
    e.push_back({"focus", [](RunConfig& c, const std::string& v) { c.var.focus_names = split_list(v); },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.var.focus_names); }});
    flag("full_sample_scaling", [](RunConfig& c) -> bool& { return c.var.full_sample_scaling; });
    text("data", [](RunConfig& c) -> std::string& { return c.data; });
    text("range", [](RunConfig& c) -> std::string& { return c.range; });
    flag("transform", [](RunConfig& c) -> bool& { return c.transform; });
    text("origins", [](RunConfig& c) -> std::string& { return c.origins; });
    e.push_back({"horizons",
                 [](RunConfig& c, const std::string& v) {
                   c.forecast.horizons = map_list<Index>(v, [](const std::string& s) { return to_int("horizons", s); });
                 },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.forecast.horizons); }});
    integer("draws_per_forecast", [](RunConfig& c) -> int& { return c.forecast.draws_per_forecast; });
    flag("rolling", [](RunConfig& c) -> bool& { return c.forecast.rolling; });
    flag("future_tvps", [](RunConfig& c) -> bool& { return c.forecast.draw_future_tvps; });
    text("shock", [](RunConfig& c) -> std::string& { return c.shock; });
    integer("irf_horizons", [](RunConfig& c) -> Index& { return c.irf_horizons; });
    e.push_back({"K",
                 [](RunConfig& c, const std::string& v) {
                   c.sim_K = map_list<Index>(v, [](const std::string& s) { return to_int("K", s); });
                 },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.sim_K); }});
    e.push_back({"pbar",
                 [](RunConfig& c, const std::string& v) {
                   c.sim_pbar = map_list<double>(v, [](const std::string& s) { return to_double("pbar", s); });
                 },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.sim_pbar); }});
    integer("reps", [](RunConfig& c) -> int& { return c.reps; });
    e.push_back({"paper_scale",
                 [](RunConfig& c, const std::string& v) {
                   if (to_bool("paper_scale", v)) c.reps = 100;
                 },
                 [](const RunConfig& c) { return nlohmann::ordered_json(c.reps == 100); }});
    integer("T", [](RunConfig& c) -> Index& { return c.sim_T; });
    flag("per_coefficient_switch", [](RunConfig& c) -> bool& { return c.per_coefficient_switch; });
    flag("benchmark", [](RunConfig& c) -> bool& { return c.run_benchmark; });
    flag("timing", [](RunConfig& c) -> bool& { return c.timing; });
    num("benchmark_kappa", [](RunConfig& c) -> double& { return c.benchmark.kappa; });
    text("out", [](RunConfig& c) -> std::string& { return c.out; });
    text("format", [](RunConfig& c) -> std::string& { return c.format; });
    return e;
  }();
  return entries;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= t.size()) {
    const auto comma = t.find(',', start);
    std::string item = trim(t.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item.size() >= 2 && (item.front() == '"' || item.front() == '\'') && item.back() == item.front()) {
      item = item.substr(1, item.size() - 2);
    }
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const auto& e : registry()) {
    if (e.key == key) {
      e.set(*this, value);
      return;
    }
  }
  throw_config(kModule, "unknown key '" + key + "'");
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.key);
    return out;
  }();
  return k;
}

void RunConfig::validate() const {
  irga.validate();
  benchmark.mcmc.validate();
  if (workers < 0) throw_config(kModule, "workers must be >= 0");
  if (var.lags < 1) throw_config(kModule, "lags must be >= 1");
  if (irf_horizons < 0) throw_config(kModule, "irf_horizons must be >= 0");
  if (reps < 1) throw_config(kModule, "reps must be >= 1");
  if (sim_T < 3) throw_config(kModule, "T must be >= 3");
  for (double p : sim_pbar) {
    if (!(p >= 0.0 && p <= 1.0)) throw_config(kModule, "pbar values must lie in [0, 1]");
  }
  for (Index k : sim_K) {
    if (k < 1) throw_config(kModule, "K values must be >= 1");
  }
  if (format != "bin" && format != "csv" && format != "both") {
    throw_config(kModule, "format must be bin, csv or both");
  }
  if (forecast.draws_per_forecast < 2) throw_config(kModule, "draws_per_forecast must be >= 2");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  for (const auto& e : registry()) j[e.key] = e.get(*this);
  return j;
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_io(kModule, "cannot open config file '" + path.string() + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw_config(kModule, path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    try {
      config.set(key, value);
    } catch (const Error& err) {
      throw_config(kModule, path.string() + ":" + std::to_string(lineno) + ": " + err.what());
    }
  }
}

}  // namespace irga

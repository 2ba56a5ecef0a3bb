#include "czlab/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "czlab/bourgain.hpp"
#include "czlab/error.hpp"

namespace czlab {

using nlohmann::json;

std::vector<double> ParamGrid::values() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double u = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    v.push_back(log_scale ? std::exp(std::log(start) + u * (std::log(stop) - std::log(start)))
                          : start + u * (stop - start));
  }
  if (count > 1) v.back() = stop;
  return v;
}

std::filesystem::path Config::output_dir() const {
  std::filesystem::path p(output_path);
  if (p.is_relative())
    if (const char* env = std::getenv("OUTPUT_DIR"); env && *env) return std::filesystem::path(env) / p;
  return p;
}

namespace {

const std::set<std::string> kExperiments{"czd", "weaktype", "kclosed", "sobolev", "kernelcheck"};

std::string join(const std::string& prefix, const std::string& k) { return prefix.empty() ? k : prefix + "." + k; }

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where.empty() ? "<root>" : where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(join(where, it.key()), "unknown key");
}

const json& need(const json& j, const std::string& where, const std::string& k) {
  if (!j.contains(k)) throw ConfigError(join(where, k), "missing required key");
  return j.at(k);
}

std::int64_t get_int(const json& v, const std::string& key, std::int64_t lo, std::int64_t hi) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  const std::int64_t x = v.is_number_unsigned() ? static_cast<std::int64_t>(v.get<std::uint64_t>()) : v.get<std::int64_t>();
  if (x < lo || x > hi) throw ConfigError(key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

double get_positive(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) || !(x > 0.0)) throw ConfigError(key, "must be a finite number > 0");
  return x;
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

ParamGrid parse_grid(const json& j, const std::string& key) {
  only_keys(j, key, {"start", "stop", "count", "scale"});
  ParamGrid g;
  g.start = get_positive(need(j, key, "start"), key + ".start");
  g.stop = get_positive(need(j, key, "stop"), key + ".stop");
  g.count = static_cast<int>(get_int(need(j, key, "count"), key + ".count", 1, 100000));
  if (j.contains("scale")) {
    const std::string s = get_string(j.at("scale"), key + ".scale");
    if (s != "log" && s != "lin") throw ConfigError(key + ".scale", "must be 'log' or 'lin'");
    g.log_scale = s == "log";
  }
  if (g.stop < g.start) throw ConfigError(key + ".stop", "must be >= start");
  return g;
}

}  // namespace

Config parse_config(const json& j) {
  only_keys(j, "", {"$schema", "experiment", "grid", "operator", "s_grid", "t_grid", "instances", "output", "workers",
                    "samples"});
  Config c;
  c.experiment = get_string(need(j, "", "experiment"), "experiment");
  if (!kExperiments.count(c.experiment))
    throw ConfigError("experiment", "must be one of czd, weaktype, kclosed, sobolev, kernelcheck");

  const json& g = need(j, "", "grid");
  only_keys(g, "grid", {"d", "L", "m"});
  c.grid.d = static_cast<int>(get_int(need(g, "grid", "d"), "grid.d", 1, 3));
  c.grid.L = static_cast<int>(get_int(need(g, "grid", "L"), "grid.L", 1, 30 / c.grid.d));
  c.grid.m = static_cast<int>(get_int(need(g, "grid", "m"), "grid.m", 1, 64));

  if (j.contains("operator")) c.op = get_string(j.at("operator"), "operator");
  const std::string& e = c.experiment;
  if (e == "weaktype" || e == "kernelcheck") {
    if (c.op.empty()) throw ConfigError("operator", "missing required key");
    if (!is_known_operator(c.op, c.grid.d) || (e == "kernelcheck" && c.op == "riesz_perp"))
      throw ConfigError("operator", "unknown operator '" + c.op + "' for d = " + std::to_string(c.grid.d));
  } else if (e == "czd") {
    if (!c.op.empty() && !is_known_operator(c.op, c.grid.d))
      throw ConfigError("operator", "unknown operator '" + c.op + "' for d = " + std::to_string(c.grid.d));
  } else if (e == "kclosed") {
    if (c.op.empty()) throw ConfigError("operator", "missing required key");
    try {
      projection_components(c.op, c.grid.d);
    } catch (const InvalidArgument& ex) {
      throw ConfigError("operator", ex.what());
    }
  } else if (!c.op.empty()) {
    throw ConfigError("operator", "not used by experiment " + e);
  }
  if (e == "sobolev" && c.grid.d < 2) throw ConfigError("grid.d", "sobolev requires d >= 2");

  const bool wants_s = e == "czd" || e == "weaktype";
  const bool wants_t = e == "kclosed" || e == "sobolev";
  if (wants_s) {
    if (j.contains("t_grid")) throw ConfigError("t_grid", "not used by experiment " + e + " (use s_grid)");
    c.sweep_key = "s_grid";
    c.sweep = parse_grid(need(j, "", "s_grid"), "s_grid");
  } else if (wants_t) {
    if (j.contains("s_grid")) throw ConfigError("s_grid", "not used by experiment " + e + " (use t_grid)");
    c.sweep_key = "t_grid";
    c.sweep = parse_grid(need(j, "", "t_grid"), "t_grid");
  } else {
    for (const char* k : {"s_grid", "t_grid"})
      if (j.contains(k)) throw ConfigError(k, "not used by experiment " + e);
  }

  if (e != "kernelcheck") {
    const json& in = need(j, "", "instances");
    only_keys(in, "instances", {"count", "seed", "kind", "freq_cutoff"});
    c.instance_count = static_cast<std::size_t>(get_int(need(in, "instances", "count"), "instances.count", 0, 1000000));
    const json& sd = need(in, "instances", "seed");
    if (!sd.is_number_integer() || (!sd.is_number_unsigned() && sd.get<std::int64_t>() < 0))
      throw ConfigError("instances.seed", "expected a non-negative 64-bit integer");
    c.gen.seed = sd.get<std::uint64_t>();
    if (in.contains("kind")) {
      try {
        c.gen.kind = parse_instance_kind(get_string(in.at("kind"), "instances.kind"));
      } catch (const InvalidArgument& ex) {
        throw ConfigError("instances.kind", ex.what());
      }
    }
    const int kmax = (1 << (c.grid.L - 1)) - 1;
    c.gen.freq_cutoff = kmax < 4 ? kmax : 4;
    if (in.contains("freq_cutoff"))
      c.gen.freq_cutoff = static_cast<int>(get_int(in.at("freq_cutoff"), "instances.freq_cutoff", 0, kmax));
    if (c.gen.kind == InstanceKind::Analytic && c.grid.d != 1)
      throw ConfigError("instances.kind", "analytic instances require d = 1");
  } else if (j.contains("instances")) {
    throw ConfigError("instances", "not used by experiment kernelcheck");
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    only_keys(o, "output", {"path", "format", "plotdata"});
    if (o.contains("path")) {
      c.output_path = get_string(o.at("path"), "output.path");
      if (c.output_path.empty()) throw ConfigError("output.path", "must not be empty");
    }
    if (o.contains("format")) {
      c.format = get_string(o.at("format"), "output.format");
      if (c.format != "csv" && c.format != "json") throw ConfigError("output.format", "must be 'csv' or 'json'");
    }
    if (o.contains("plotdata")) {
      if (!o.at("plotdata").is_boolean()) throw ConfigError("output.plotdata", "expected a boolean");
      c.plotdata = o.at("plotdata").get<bool>();
    }
  }
  if (j.contains("workers")) c.workers = static_cast<int>(get_int(j.at("workers"), "workers", 1, 256));
  if (j.contains("samples")) {
    if (e != "kernelcheck") throw ConfigError("samples", "only used by experiment kernelcheck");
    c.samples = static_cast<int>(get_int(j.at("samples"), "samples", 1, 10000000));
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& ex) {
    throw ConfigError("", std::string("JSON parse error: ") + ex.what());
  }
  return parse_config(j);
}

const json& config_schema() {
  static const json schema = [] {
    json grid = {{"type", "object"},
                 {"additionalProperties", false},
                 {"properties", {{"start", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                                 {"stop", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                                 {"count", {{"type", "integer"}, {"minimum", 1}}},
                                 {"scale", {{"enum", {"log", "lin"}}}}}},
                 {"required", {"start", "stop", "count"}}};
    return json{
        {"$schema", "https://json-schema.org/draft/2020-12/schema"},
        {"title", "czlab experiment config"},
        {"type", "object"},
        {"additionalProperties", false},
        {"required", {"experiment", "grid"}},
        {"properties",
         {{"$schema", {{"type", "string"}}},
          {"experiment", {{"enum", {"czd", "weaktype", "kclosed", "sobolev", "kernelcheck"}}}},
          {"grid",
           {{"type", "object"},
            {"additionalProperties", false},
            {"required", {"d", "L", "m"}},
            {"properties", {{"d", {{"type", "integer"}, {"minimum", 1}, {"maximum", 3}}},
                            {"L", {{"type", "integer"}, {"minimum", 1}, {"maximum", 30}}},
                            {"m", {{"type", "integer"}, {"minimum", 1}, {"maximum", 64}}}}}}},
          {"operator",
           {{"type", "string"},
            {"description", "riesz, riesz_perp (d = 1); leray_ij (d >= 2); kclosed also takes leray, leray_perp"},
            {"pattern", "^(riesz|riesz_perp|leray|leray_perp|leray_[1-3][1-3])$"}}},
          {"s_grid", grid},
          {"t_grid", grid},
          {"instances",
           {{"type", "object"},
            {"additionalProperties", false},
            {"required", {"count", "seed"}},
            {"properties", {{"count", {{"type", "integer"}, {"minimum", 0}}},
                            {"seed", {{"type", "integer"}, {"minimum", 0}}},
                            {"kind", {{"enum", {"random_trig_poly", "positive_field", "analytic", "gradient_field"}}}},
                            {"freq_cutoff", {{"type", "integer"}, {"minimum", 0}}}}}}},
          {"output",
           {{"type", "object"},
            {"additionalProperties", false},
            {"properties", {{"path", {{"type", "string"}, {"minLength", 1}}},
                            {"format", {{"enum", {"csv", "json"}}}},
                            {"plotdata", {{"type", "boolean"}}}}}}},
          {"workers", {{"type", "integer"}, {"minimum", 1}, {"maximum", 256}}},
          {"samples", {{"type", "integer"}, {"minimum", 1}}}}}};
  }();
  return schema;
}

}  // namespace czlab

#include "czlab/driver.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "czlab/dyadic.hpp"
#include "czlab/error.hpp"

namespace czlab {

namespace fs = std::filesystem;

namespace {

// Rows sorted by (sweep value, instance).
std::vector<std::size_t> sweep_order(const Table& t, const std::string& key) {
  std::vector<std::size_t> idx(t.rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double x = t.number(a, key), y = t.number(b, key);
    if (x != y) return x < y;
    return t.number(a, "instance") < t.number(b, "instance");
  });
  return idx;
}

Table project(const Table& t, const std::vector<std::size_t>& order, const std::vector<std::string>& cols) {
  Table out;
  out.columns = cols;
  std::vector<std::size_t> k;
  for (const auto& c : cols) k.push_back(t.column(c));
  for (std::size_t r : order) {
    std::vector<Value> row;
    for (std::size_t c : k) row.push_back(t.rows[r][c]);
    out.add(std::move(row));
  }
  return out;
}

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_file(const fs::path& p, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw IoError("cannot write " + p.string());
  body(os);
  if (!os) throw IoError("write failed: " + p.string());
}

}  // namespace

std::vector<PlotFile> emit_plotdata(const ExperimentResult& r) {
  std::vector<PlotFile> files;
  const Table& t = r.table;
  const std::string& e = r.experiment;
  if (e == "weaktype") {
    const auto o = sweep_order(t, "s");
    files.push_back({"weaktype_Ta.tsv", project(t, o, {"s", "instance", "lambda_Ta", "markov_Ta"})});
    files.push_back({"weaktype_1mp_Tb.tsv", project(t, o, {"s", "instance", "lambda_1mp_Tb", "trace_p_perp"})});
    files.push_back({"weaktype_pTb_1mp.tsv", project(t, o, {"s", "instance", "lambda_pTb_1mp", "trace_p_perp"})});
    files.push_back({"weaktype_pTbp.tsv", project(t, o, {"s", "instance", "lambda_pTbp", "markov_pTbp"})});
  } else if (e == "kclosed") {
    std::map<std::int64_t, std::vector<std::size_t>> per;
    std::map<double, std::pair<double, double>> env;
    for (const std::size_t i : sweep_order(t, "t")) {
      per[static_cast<std::int64_t>(t.number(i, "instance"))].push_back(i);
      const double tv = t.number(i, "t"), rv = t.number(i, "ratio");
      auto it = env.find(tv);
      if (it == env.end())
        env[tv] = {rv, rv};
      else
        it->second = {std::min(it->second.first, rv), std::max(it->second.second, rv)};
    }
    Table et;
    et.columns = {"t", "ratio_min", "ratio_max"};
    for (const auto& [tv, mm] : env) et.add({tv, mm.first, mm.second});
    files.push_back({"kclosed_envelope.tsv", std::move(et)});
    for (const auto& [inst, rows] : per)
      files.push_back({"kclosed_ratio_" + std::to_string(inst) + ".tsv", project(t, rows, {"t", "ratio", "lower", "upper"})});
  } else if (e == "czd") {
    files.push_back({"czd_constants.tsv",
                     project(t, sweep_order(t, "s"), {"s", "instance", "C_a", "C_p", "C_d", "C_o", "trace_1mq",
                                                       "trace_1mq_bound"})});
  } else if (e == "sobolev") {
    files.push_back({"sobolev_ratio.tsv",
                     project(t, sweep_order(t, "t"), {"t", "instance", "lower", "upper_sum", "ratio_sum", "ratio_sup"})});
  } else if (e == "kernelcheck") {
    std::vector<std::size_t> o(t.rows.size());
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
    files.push_back({"kernelcheck.tsv", project(t, o, {"parameter", "condition", "value"})});
  }
  return files;
}

ExperimentResult run_experiment(const Config& c) {
  RunOptions opt;
  opt.workers = c.workers;
  const auto grid = c.sweep.values();
  const std::string& e = c.experiment;
  if (e == "czd") return czd_experiment(c.gen, c.grid, grid, c.instance_count, c.op, opt);
  if (e == "weaktype") return weak_type_experiment(c.op, c.gen, c.grid, grid, c.instance_count, opt);
  if (e == "kclosed") return kclosed_sweep(c.op, c.gen, c.grid, grid, c.instance_count, opt);
  if (e == "sobolev") return sobolev_k_experiment(c.gen, c.grid, grid, c.instance_count, opt);
  if (e == "kernelcheck") return kernelcheck_experiment(c.op, c.grid, c.samples);
  throw ConfigError("experiment", "unknown experiment " + e);
}

std::vector<std::string> write_outputs(const Config& c, const ExperimentResult& r, const std::string& timestamp) {
  const fs::path dir = c.output_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::string> written;

  const DyadicConstants dc = dyadic_constants(c.grid);
  std::vector<std::string> comments{
      "generated " + timestamp,
      "experiment " + r.experiment + " grid " + grid_label(c.grid) + (c.op.empty() ? "" : " operator " + c.op),
      "dyadic delta=" + format_number(dc.delta) + " C1=" + format_number(dc.C1) + " C2=" + format_number(dc.C2) +
          " ahlfors=[" + format_number(dc.ahlfors_low) + "," + format_number(dc.ahlfors_high) + "]"};
  if (c.format == "csv") {
    const fs::path p = dir / (r.experiment + ".csv");
    write_file(p, [&](std::ostream& os) { write_csv(os, r.table, comments); });
    written.push_back(p.string());
  } else {
    const fs::path p = dir / (r.experiment + ".json");
    nlohmann::json j = {{"generated", timestamp}, {"columns", r.table.columns}, {"rows", table_to_json(r.table)}};
    write_file(p, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    written.push_back(p.string());
  }

  nlohmann::json summary = r.summary;
  summary["violations"] = r.violations;
  summary["rows"] = r.table.rows.size();
  const fs::path sp = dir / "summary.json";
  write_file(sp, [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
  written.push_back(sp.string());

  if (c.plotdata) {
    const fs::path pd = dir / "plotdata";
    fs::create_directories(pd, ec);
    if (ec) throw IoError("cannot create " + pd.string() + ": " + ec.message());
    for (const auto& f : emit_plotdata(r)) {
      const fs::path p = pd / f.name;
      write_file(p, [&](std::ostream& os) { write_tsv(os, f.table); });
      written.push_back(p.string());
    }
  }
  return written;
}

int exit_code(const ExperimentResult& r) { return r.violations.empty() ? kExitOk : kExitViolation; }

int run(const std::string& config_path, std::ostream& err) {
  try {
    const Config c = load_config(config_path);
    const ExperimentResult r = run_experiment(c);
    write_outputs(c, r, timestamp_now());
    if (!r.violations.empty()) {
      err << r.violations.size() << " hard inequality violation(s):\n";
      for (const auto& v : r.violations) err << "  " << v << '\n';
    }
    return exit_code(r);
  } catch (const ConfigError& ex) {
    err << "config error: " << ex.what() << '\n';
  } catch (const IoError& ex) {
    err << "io error: " << ex.what() << '\n';
  } catch (const InvalidArgument& ex) {
    err << "invalid argument: " << ex.what() << '\n';
  }
  return kExitConfig;
}

}  // namespace czlab

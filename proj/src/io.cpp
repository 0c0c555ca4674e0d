#include "qnipm/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qnipm {

using nlohmann::json;

namespace {

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec vec_from_json(const json& a, const char* what) {
  if (!a.is_array()) throw IoError(std::string(what) + ": expected array");
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const json& e = a[static_cast<std::size_t>(i)];
    if (!e.is_number()) throw IoError(std::string(what) + ": expected number");
    v(i) = e.get<double>();
  }
  return v;
}

json point_to_json(const IteratePoint& p) {
  return json{{"x", vec_to_json(p.x)},
              {"lambda", vec_to_json(p.lambda)},
              {"z", vec_to_json(p.z)}};
}

IteratePoint point_from_json(const json& j, const char* what) {
  IteratePoint p;
  p.x = vec_from_json(j.at("x"), what);
  p.lambda = vec_from_json(j.at("lambda"), what);
  p.z = vec_from_json(j.at("z"), what);
  return p;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string status_name(Status status) {
  switch (status) {
    case Status::Converged:
      return "Converged";
    case Status::IterLimit:
      return "IterLimit";
    case Status::StepFailure:
      return "StepFailure";
  }
  return "IterLimit";
}

void save_instance(const std::string& path, const GeneratedInstance& inst) {
  const Problem& p = inst.problem;
  json rows = json::array();
  for (Eigen::Index i = 0; i < p.m; ++i) {
    json row = json::array();
    for (Eigen::Index jcol = 0; jcol < p.n; ++jcol) row.push_back(p.A(i, jcol));
    rows.push_back(std::move(row));
  }
  json j{{"format_version", 1},
         {"m", p.m},
         {"n", p.n},
         {"A", std::move(rows)},
         {"b", vec_to_json(p.b)},
         {"c", vec_to_json(p.c)}};
  if (inst.optimal) j["optimal"] = point_to_json(*inst.optimal);
  if (inst.central_start) j["central_start"] = point_to_json(*inst.central_start);
  if (inst.xi) j["xi"] = *inst.xi;
  j["seed"] = inst.seed;
  write_text_file(path, j.dump(2) + "\n");
}

GeneratedInstance load_instance(const std::string& path) {
  const json j = load_json_file(path);
  if (!j.contains("format_version") || j["format_version"].get<long>() != 1) {
    throw IoError(path + ": unsupported format_version");
  }
  const auto m = j.at("m").get<Eigen::Index>();
  const auto n = j.at("n").get<Eigen::Index>();
  const json& rows = j.at("A");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != m) {
    throw IoError(path + ": A must have m rows");
  }
  Mat A(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vec row = vec_from_json(rows[static_cast<std::size_t>(i)], "A row");
    if (row.size() != n) throw IoError(path + ": A row length != n");
    A.row(i) = row;
  }
  Vec b = vec_from_json(j.at("b"), "b");
  Vec c = vec_from_json(j.at("c"), "c");
  if (b.size() != m || c.size() != n) {
    throw IoError(path + ": b/c length mismatch");
  }
  GeneratedInstance inst{Problem::create(std::move(A), std::move(b),
                                         std::move(c)),
                         std::nullopt, std::nullopt, std::nullopt, 0};
  if (j.contains("optimal")) {
    inst.optimal = point_from_json(j["optimal"], "optimal");
  }
  if (j.contains("central_start")) {
    inst.central_start = point_from_json(j["central_start"], "central_start");
  }
  if (j.contains("xi")) inst.xi = j["xi"].get<double>();
  if (j.contains("seed")) inst.seed = j["seed"].get<std::uint64_t>();
  return inst;
}

void save_trace(const std::string& path, const RunResult& result, bool full) {
  std::ostringstream out;
  out << "# status=" << status_name(result.status) << "\n";
  out << "# mu0=" << format_double(result.mu0) << "\n";
  out << "# init_residual_norm=" << format_double(result.init_residual_norm)
      << "\n";
  out << "k\tstep_type\talpha\tsigma\tmu_before\tmu_after\tprox_n2\t"
         "ns_min_ratio\tns_max_ratio\tnorm_rb\tnorm_rc\tnu\tgamma1\t"
         "dx_dot_dz\n";
  for (const StepRecord& r : result.trace) {
    out << r.k << '\t' << r.step_type << '\t' << format_double(r.alpha) << '\t'
        << format_double(r.sigma) << '\t' << format_double(r.mu_before) << '\t'
        << format_double(r.mu_after) << '\t' << format_double(r.prox_n2)
        << '\t' << format_double(r.ns_min_ratio) << '\t'
        << format_double(r.ns_max_ratio) << '\t' << format_double(r.norm_rb)
        << '\t' << format_double(r.norm_rc) << '\t' << format_double(r.nu)
        << '\t' << format_double(r.gamma1) << '\t'
        << format_double(r.dx_dot_dz) << '\n';
  }
  write_text_file(path, out.str());

  if (full) {
    json steps = json::array();
    for (const StepRecord& r : result.trace) {
      steps.push_back(json{
          {"k", r.k},
          {"direction", json{{"dx", vec_to_json(r.direction.dx)},
                             {"dlambda", vec_to_json(r.direction.dlambda)},
                             {"dz", vec_to_json(r.direction.dz)}}},
          {"point_before", point_to_json(r.point_before)},
          {"point_after", point_to_json(r.point_after)},
          {"rhs", vec_to_json(r.rhs)}});
    }
    json side{{"format_version", 1},
              {"final_point", point_to_json(result.final_point)},
              {"steps", std::move(steps)}};
    write_text_file(path + ".full.json", side.dump() + "\n");
  }
}

RunResult load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  RunResult result;
  bool mu0_seen = false, res_seen = false, status_seen = false;
  std::string line;
  bool header_seen = false;
  long expected_k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string kv;
      ls >> kv;
      const auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = kv.substr(0, eq);
      const std::string val = kv.substr(eq + 1);
      if (key == "status") {
        status_seen = true;
        if (val == "Converged") {
          result.status = Status::Converged;
        } else if (val == "IterLimit") {
          result.status = Status::IterLimit;
        } else if (val == "StepFailure") {
          result.status = Status::StepFailure;
        } else {
          throw IoError(path + ": unknown status " + val);
        }
      } else if (key == "mu0") {
        result.mu0 = std::stod(val);
        mu0_seen = true;
      } else if (key == "init_residual_norm") {
        result.init_residual_norm = std::stod(val);
        res_seen = true;
      }
      continue;
    }
    if (!header_seen) {
      if (line !=
          "k\tstep_type\talpha\tsigma\tmu_before\tmu_after\tprox_n2\t"
          "ns_min_ratio\tns_max_ratio\tnorm_rb\tnorm_rc\tnu\tgamma1\t"
          "dx_dot_dz") {
        throw IoError(path + ": unexpected trace header");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, '\t')) fields.push_back(field);
    if (fields.size() != 14) {
      throw IoError(path + ": malformed trace row");
    }
    // strtod instead of stream extraction so "nan" parses
    auto num = [&](int i) {
      char* end = nullptr;
      const double v = std::strtod(fields[static_cast<std::size_t>(i)].c_str(),
                                   &end);
      if (end == fields[static_cast<std::size_t>(i)].c_str()) {
        throw IoError(path + ": bad number in trace row");
      }
      return v;
    };
    StepRecord r;
    r.k = static_cast<long>(num(0));
    if (fields[1] != "N" && fields[1] != "Q") {
      throw IoError(path + ": step_type must be N or Q");
    }
    r.step_type = fields[1][0];
    r.alpha = num(2);
    r.sigma = num(3);
    r.mu_before = num(4);
    r.mu_after = num(5);
    r.prox_n2 = num(6);
    r.ns_min_ratio = num(7);
    r.ns_max_ratio = num(8);
    r.norm_rb = num(9);
    r.norm_rc = num(10);
    r.nu = num(11);
    r.gamma1 = num(12);
    r.dx_dot_dz = num(13);
    if (r.k != expected_k) {
      throw IoError(path + ": iteration indices must increase from 0");
    }
    ++expected_k;
    result.trace.push_back(std::move(r));
  }
  if (!header_seen || !mu0_seen || !res_seen || !status_seen) {
    throw IoError(path + ": incomplete trace file");
  }

  const std::string sidecar = path + ".full.json";
  if (std::filesystem::exists(sidecar)) {
    const json j = load_json_file(sidecar);
    const json& steps = j.at("steps");
    if (steps.size() != result.trace.size()) {
      throw IoError(sidecar + ": step count differs from the trace table");
    }
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
      const json& s = steps[i];
      StepRecord& r = result.trace[i];
      if (s.at("k").get<long>() != r.k) {
        throw IoError(sidecar + ": iteration index mismatch");
      }
      const json& d = s.at("direction");
      r.direction.dx = vec_from_json(d.at("dx"), "dx");
      r.direction.dlambda = vec_from_json(d.at("dlambda"), "dlambda");
      r.direction.dz = vec_from_json(d.at("dz"), "dz");
      r.point_before = point_from_json(s.at("point_before"), "point_before");
      r.point_after = point_from_json(s.at("point_after"), "point_after");
      r.rhs = vec_from_json(s.at("rhs"), "rhs");
    }
    result.final_point = point_from_json(j.at("final_point"), "final_point");
  } else if (!result.trace.empty()) {
    result.final_point = result.trace.back().point_after;
  }
  return result;
}

}  // namespace qnipm

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qnipm/driver.hpp"
#include "qnipm/generator.hpp"
#include "qnipm/io.hpp"

using namespace qnipm;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() {
    std::remove(path.c_str());
    std::remove((path + ".full.json").c_str());
  }
};

}  // namespace

TEST_CASE("instance files round-trip bitwise") {
  const GeneratedInstance inst = generate_solved_lp(6, 3, 99);
  TempFile f("qnipm_test_instance.json");
  save_instance(f.path, inst);
  const GeneratedInstance back = load_instance(f.path);
  CHECK(back.problem.A == inst.problem.A);
  CHECK(back.problem.b == inst.problem.b);
  CHECK(back.problem.c == inst.problem.c);
  REQUIRE(back.optimal.has_value());
  CHECK(back.optimal->x == inst.optimal->x);
  CHECK(back.optimal->lambda == inst.optimal->lambda);
  CHECK(back.optimal->z == inst.optimal->z);
  CHECK(back.xi == inst.xi);
  CHECK(back.seed == inst.seed);
  CHECK_FALSE(back.central_start.has_value());

  const GeneratedInstance centered = generate_centered_lp(5, 2, 1.0, 7);
  save_instance(f.path, centered);
  const GeneratedInstance cback = load_instance(f.path);
  REQUIRE(cback.central_start.has_value());
  CHECK(cback.central_start->x == centered.central_start->x);
}

TEST_CASE("instance loader rejects malformed files") {
  TempFile f("qnipm_bad_instance.json");
  {
    std::ofstream out(f.path);
    out << "{\"format_version\": 2}";
  }
  CHECK_THROWS_AS(load_instance(f.path), IoError);
  {
    std::ofstream out(f.path);
    out << "not json";
  }
  CHECK_THROWS_AS(load_instance(f.path), IoError);
  CHECK_THROWS_AS(load_instance(f.path + ".missing"), IoError);
}

TEST_CASE("trace files round-trip, with and without the sidecar") {
  const GeneratedInstance inst = generate_centered_lp(4, 2, 1.0, 13);
  SolverOptions o;
  o.variant = Variant::FeasibleN2;
  o.max_iters = 6;
  const RunResult r = run(inst.problem, *inst.central_start, o);

  TempFile slim("qnipm_trace_slim.tsv");
  save_trace(slim.path, r, false);
  const RunResult back = load_trace(slim.path);
  CHECK(back.status == r.status);
  CHECK(back.mu0 == r.mu0);
  CHECK(back.init_residual_norm == r.init_residual_norm);
  REQUIRE(back.trace.size() == r.trace.size());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    CHECK(back.trace[i].k == r.trace[i].k);
    CHECK(back.trace[i].step_type == r.trace[i].step_type);
    CHECK(back.trace[i].alpha == r.trace[i].alpha);
    CHECK(back.trace[i].mu_after == r.trace[i].mu_after);
    CHECK(back.trace[i].nu == r.trace[i].nu);
    if (r.trace[i].step_type == 'Q') {
      CHECK(back.trace[i].gamma1 == r.trace[i].gamma1);
    } else {
      CHECK(std::isnan(back.trace[i].gamma1));
    }
    CHECK(back.trace[i].direction.dx.size() == 0);  // payload not stored
  }

  TempFile full("qnipm_trace_full.tsv");
  save_trace(full.path, r, true);
  const RunResult fb = load_trace(full.path);
  REQUIRE(fb.trace.size() == r.trace.size());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    CHECK(fb.trace[i].direction.dx == r.trace[i].direction.dx);
    CHECK(fb.trace[i].point_before.x == r.trace[i].point_before.x);
    CHECK(fb.trace[i].point_after.z == r.trace[i].point_after.z);
    CHECK(fb.trace[i].rhs == r.trace[i].rhs);
  }
  CHECK(fb.final_point.x == r.final_point.x);
}

TEST_CASE("trace writer output is byte-stable") {
  const GeneratedInstance inst = generate_centered_lp(4, 2, 1.0, 13);
  SolverOptions o;
  o.variant = Variant::FeasibleN2;
  o.max_iters = 4;
  const RunResult r = run(inst.problem, *inst.central_start, o);
  TempFile a("qnipm_trace_a.tsv"), b("qnipm_trace_b.tsv");
  save_trace(a.path, r, false);
  save_trace(b.path, r, false);
  std::ifstream fa(a.path), fb(b.path);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  CHECK(sa == sb);
  CHECK(sa.find("k\tstep_type\talpha") != std::string::npos);
}

TEST_CASE("trace loader rejects malformed tables") {
  TempFile f("qnipm_bad_trace.tsv");
  {
    std::ofstream out(f.path);
    out << "# status=Converged\n# mu0=1\n# init_residual_norm=0\n";
    out << "wrong\theader\n";
  }
  CHECK_THROWS_AS(load_trace(f.path), IoError);
  {
    std::ofstream out(f.path);
    out << "# mu0=1\n";
  }
  CHECK_THROWS_AS(load_trace(f.path), IoError);
}

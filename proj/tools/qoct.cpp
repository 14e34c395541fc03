// qoct command-line front end. Talks to the library through the C API only.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qoct/qoct.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitVerify = 3;

struct Failure {
  qoct_status status;
};

void check(qoct_status s) {
  if (s != QOCT_OK) throw Failure{s};
}

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", x);
  return b;
}

std::string csv_num(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", x);
  return b;
}

std::string vec(const double* v, int n) {
  std::string s = "[";
  for (int i = 0; i < n; ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

// Flat JSON object; values are pre-rendered.
class Json {
 public:
  Json& add(const std::string& key, const std::string& raw) {
    fields_.emplace_back(key, raw);
    return *this;
  }
  Json& add(const std::string& key, double v) { return add(key, num(v)); }
  Json& add_string(const std::string& key, const std::string& v) {
    return add(key, "\"" + v + "\"");
  }
  std::string str() const {
    std::string s = "{\n";
    for (size_t i = 0; i < fields_.size(); ++i)
      s += "  \"" + fields_[i].first + "\": " + fields_[i].second +
           (i + 1 < fields_.size() ? ",\n" : "\n");
    return s + "}\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct LawDeleter {
  void operator()(qoct_law* p) const { qoct_law_free(p); }
};
struct TrajDeleter {
  void operator()(qoct_trajectory* p) const { qoct_trajectory_free(p); }
};
struct LiftDeleter {
  void operator()(qoct_lift_result* p) const { qoct_lift_free(p); }
};
using LawPtr = std::unique_ptr<qoct_law, LawDeleter>;
using TrajPtr = std::unique_ptr<qoct_trajectory, TrajDeleter>;
using LiftPtr = std::unique_ptr<qoct_lift_result, LiftDeleter>;

std::string law_json(const qoct_law* law) {
  std::string s = "[";
  for (size_t i = 0; i < qoct_law_size(law); ++i) {
    qoct_segment seg;
    check(qoct_law_segment(law, i, &seg));
    s += (i ? ", " : "") + std::string("{\"u1\": ") + num(seg.u1) + ", \"u2\": " + num(seg.u2) +
         ", \"duration\": " + num(seg.duration) + "}";
  }
  return s + "]";
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open " + out + " for writing");
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

qoct_mode parse_mode(const std::string& m) { return m == "time" ? QOCT_MODE_TIME : QOCT_MODE_ENERGY; }

std::string cmd_min_time(double alpha, const std::vector<double>& target, bool reject) {
  qoct_law* raw = nullptr;
  if (target.empty())
    check(qoct_min_time_law(alpha, &raw));
  else
    check(qoct_synthesis_law(alpha, target.data(), reject ? 1 : 0, &raw));
  LawPtr law(raw);
  double end[3];
  check(qoct_law_endpoint(law.get(), end));
  return Json()
      .add("law", law_json(law.get()))
      .add("total_time", qoct_law_total_time(law.get()))
      .add("endpoint", vec(end, 3))
      .str();
}

std::string cmd_min_energy(double alpha, double tol) {
  double m = 0, t = 0, lo = 0, hi = 0;
  qoct_regime r;
  check(qoct_solve_m3(alpha, tol, &m));
  check(qoct_transfer_time(alpha, m, &t));
  check(qoct_m3_bounds(alpha, &lo, &hi));
  check(qoct_classify(alpha, m, &r));
  const double b[2] = {lo, hi};
  return Json()
      .add("m3_0", m)
      .add("transfer_time", t)
      .add("bounds", vec(b, 2))
      .add_string("regime", qoct_regime_name(r))
      .str();
}

std::string cmd_sweep_synthesis(double alpha, const std::string& mode, size_t n, double dt) {
  qoct_trajectory* raw = nullptr;
  check(qoct_sweep_synthesis(alpha, parse_mode(mode), n, dt, &raw));
  TrajPtr tr(raw);
  std::string s = "# schema=qoct-v1\nt,psi1,psi2,psi3,u1,u2,param\n";
  for (size_t i = 0; i < qoct_trajectory_size(tr.get()); ++i) {
    qoct_sample x;
    check(qoct_trajectory_sample(tr.get(), i, &x));
    s += csv_num(x.t) + "," + csv_num(x.psi[0]) + "," + csv_num(x.psi[1]) + "," +
         csv_num(x.psi[2]) + "," + csv_num(x.u1) + "," + csv_num(x.u2) + "," + csv_num(x.param) +
         "\n";
  }
  return s;
}

std::string cmd_sweep_alpha(double from, double to, size_t n, double tol, bool linear) {
  std::vector<qoct_alpha_point> pts(n);
  check(qoct_sweep_alpha(from, to, n, tol, linear ? 0 : 1, pts.data()));
  std::string s = "# schema=qoct-v1\nalpha,m3_0,transfer_time\n";
  for (const qoct_alpha_point& p : pts)
    s += csv_num(p.alpha) + "," + csv_num(p.m3_0) + "," + csv_num(p.transfer_time) + "\n";
  return s;
}

std::string cmd_lift(double alpha, const std::string& mode, const std::vector<double>& e,
                     const std::vector<double>& xi, double h, size_t stride) {
  const qoct_level_spec spec{e[0], e[1], e[2], xi[0], xi[1]};
  qoct_lift_result* raw = nullptr;
  check(qoct_lift_simulate(alpha, parse_mode(mode), &spec, h, stride, &raw));
  LiftPtr res(raw);

  std::string body =
      "# schema=qoct-v1\nt,re_psi1,im_psi1,re_psi2,im_psi2,re_psi3,im_psi3,psi1,psi2,psi3\n";
  for (size_t i = 0; i < qoct_lift_size(res.get()); ++i) {
    qoct_lift_point p;
    check(qoct_lift_sample(res.get(), i, &p));
    body += csv_num(p.t);
    for (int j = 0; j < 3; ++j) body += "," + csv_num(p.re[j]) + "," + csv_num(p.im[j]);
    for (int j = 0; j < 3; ++j) body += "," + csv_num(p.reduced[j]);
    body += "\n";
  }
  const char* dir = std::getenv("QOCT_OUT_DIR");
  std::string path = dir && *dir ? std::string(dir) + "/" : std::string();
  path += "lift_" + mode + "_alpha_" + csv_num(alpha) + ".csv";
  emit(body, path);

  std::string quoted;
  for (char c : path) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  return Json()
      .add("final_population", qoct_lift_final_population(res.get()))
      .add("max_population_error", qoct_lift_max_population_error(res.get()))
      .add_string("trajectory_file", quoted)
      .str();
}

std::string cmd_oracle(double alpha, size_t n, size_t segments, uint64_t seed) {
  double best = 0.0;
  check(qoct_oracle_search(alpha, n, segments, seed, &best, nullptr));
  qoct_law* raw = nullptr;
  check(qoct_min_time_law(alpha, &raw));
  LawPtr law(raw);
  const double cf = qoct_law_total_time(law.get());
  return Json()
      .add("best_time", best)
      .add("closed_form_time", cf)
      .add("margin", best - cf)
      .str();
}

void verify_row(int id, const char* name, int passed, const char* detail, double seconds,
                void* user) {
  auto* table = static_cast<std::string*>(user);
  char head[160];
  std::snprintf(head, sizeof head, "%2d  %-4s  %-48s %7.2fs  ", id, passed ? "PASS" : "FAIL",
                name, seconds);
  *table += head + std::string(detail) + "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal population transfer in a nonisotropic three-level system"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("--out", out, "Write the result to this path instead of stdout");

  double alpha = 1.0;
  auto alpha_opt = [&](CLI::App* sc) {
    sc->add_option("--alpha", alpha, "Nonisotropy factor (> 0)")->required();
  };

  auto* mt = app.add_subcommand("min-time", "Minimum-time law to (0,0,1) or to --target");
  alpha_opt(mt);
  std::vector<double> target;
  bool reject = false;
  mt->add_option("--target", target,
                 "Target x,y,z in the positive octant. Boundary points with psi2 = 0 other "
                 "than (1,0,0) and (0,0,1) have no law")
      ->delimiter(',')
      ->expected(3);
  mt->add_flag("--reject-boundary", reject,
               "For alpha < 1 reject targets on psi1 = 0 with psi3 < alpha");

  auto* me = app.add_subcommand("min-energy", "Solve m3(0) and the transfer time");
  alpha_opt(me);
  double tol = 1e-10;
  me->add_option("--tol", tol, "Dichotomy tolerance")->capture_default_str();

  auto* ss = app.add_subcommand("sweep-synthesis", "CSV of extremals sampling the synthesis");
  alpha_opt(ss);
  std::string mode = "time";
  size_t n = 20;
  double dt = 0.01;
  ss->add_option("--mode", mode)->check(CLI::IsMember({"time", "energy"}))->required();
  ss->add_option("--n", n, "Number of extremals")->capture_default_str();
  ss->add_option("--dt", dt, "Sample spacing")->capture_default_str();

  auto* sa = app.add_subcommand("sweep-alpha", "CSV of m3(0) and transfer time against alpha");
  double from = 0.1, to = 10.0;
  bool linear = false;
  double sweep_tol = 1e-10;
  sa->add_option("--from", from)->required();
  sa->add_option("--to", to)->required();
  sa->add_option("--n", n)->required();
  sa->add_option("--tol", sweep_tol)->capture_default_str();
  sa->add_flag("--linear", linear, "Linear instead of logarithmic spacing");

  auto* li = app.add_subcommand("lift", "Simulate the complex system under lifted controls");
  alpha_opt(li);
  std::vector<double> energies{-1.0, 0.3, 0.7}, phases{0.0, 0.0};
  double step = 1e-4;
  size_t stride = 100;
  li->add_option("--mode", mode)->check(CLI::IsMember({"time", "energy"}))->required();
  li->add_option("--energies", energies)->delimiter(',')->expected(3)->capture_default_str();
  li->add_option("--phases", phases)->delimiter(',')->expected(2)->capture_default_str();
  li->add_option("--step", step, "RK4 step")->capture_default_str();
  li->add_option("--stride", stride, "Keep one sample every this many steps")
      ->capture_default_str();

  auto* orc = app.add_subcommand("oracle", "Random search against the closed-form minimum time");
  alpha_opt(orc);
  size_t candidates = 10000, segments = 5;
  uint64_t seed = 1;
  orc->add_option("--n", candidates)->capture_default_str();
  orc->add_option("--seed", seed)->capture_default_str();
  orc->add_option("--max-segments", segments)->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  bool fast = false;
  ver->add_flag("--fast", fast, "Smaller samples, same thresholds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (mt->parsed()) {
      emit(cmd_min_time(alpha, target, reject), out);
    } else if (me->parsed()) {
      emit(cmd_min_energy(alpha, tol), out);
    } else if (ss->parsed()) {
      emit(cmd_sweep_synthesis(alpha, mode, n, dt), out);
    } else if (sa->parsed()) {
      emit(cmd_sweep_alpha(from, to, n, sweep_tol, linear), out);
    } else if (li->parsed()) {
      emit(cmd_lift(alpha, mode, energies, phases, step, stride), out);
    } else if (orc->parsed()) {
      emit(cmd_oracle(alpha, candidates, segments, seed), out);
    } else if (ver->parsed()) {
      std::string table;
      int failed = 0;
      check(qoct_verify(fast ? 1 : 0, verify_row, &table, &failed));
      table += failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n";
      emit(table, out);
      return failed ? kExitVerify : kExitOk;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "qoct: %s: %s\n", qoct_status_name(f.status), qoct_last_error());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qoct: %s\n", e.what());
    return kExitError;
  }
  return kExitOk;
}

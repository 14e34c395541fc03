#include "qoct/qoct.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "qoct/errors.hpp"
#include "qoct/min_energy.hpp"
#include "qoct/oracle.hpp"
#include "qoct/resonant_lift.hpp"
#include "qoct/sweep.hpp"
#include "qoct/time_optimal.hpp"
#include "qoct/verify.hpp"

struct qoct_law {
  qoct::ControlLaw law;
};

struct qoct_trajectory {
  std::vector<qoct_sample> samples;
};

struct qoct_lift_result {
  double final_population;
  double max_population_error;
  std::vector<qoct_lift_point> samples;
};

namespace {

thread_local std::string g_last_error;

qoct_status status_of(qoct::ErrorCode c) {
  switch (c) {
    case qoct::ErrorCode::Domain: return QOCT_ERR_DOMAIN;
    case qoct::ErrorCode::NoSolution: return QOCT_ERR_NO_SOLUTION;
    case qoct::ErrorCode::Regime: return QOCT_ERR_REGIME;
    case qoct::ErrorCode::Bracket: return QOCT_ERR_BRACKET;
    case qoct::ErrorCode::Timeout: return QOCT_ERR_TIMEOUT;
    case qoct::ErrorCode::Step: return QOCT_ERR_STEP;
    case qoct::ErrorCode::Consistency: return QOCT_ERR_CONSISTENCY;
    case qoct::ErrorCode::Depth: return QOCT_ERR_DEPTH;
  }
  return QOCT_ERR_INTERNAL;
}

template <class F>
qoct_status guarded(F&& f) {
  g_last_error.clear();
  try {
    std::forward<F>(f)();
    return QOCT_OK;
  } catch (const qoct::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return QOCT_ERR_INTERNAL;
}

qoct_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return QOCT_ERR_NULL_ARG;
}

void append(qoct_trajectory& out, const qoct::Trajectory& tr, double param) {
  for (const qoct::Sample& s : tr.samples())
    out.samples.push_back({s.t, {s.state[0], s.state[1], s.state[2]}, s.u1, s.u2, param});
}

qoct::ControlLaw law_for(double alpha, qoct_mode mode, double& horizon,
                         qoct::ControlSignal& control) {
  if (mode == QOCT_MODE_TIME) {
    qoct::ControlLaw law = qoct::min_time_law(alpha);
    horizon = law.total_time();
    control = qoct::as_control(law);
    return law;
  }
  const double m = qoct::solve_m3(alpha, 1e-10);
  horizon = qoct::transfer_time(alpha, m);
  control = qoct::extremal_control(qoct::EnergyExtremal::make(alpha, m));
  return {};
}

bool valid_mode(qoct_mode m) { return m == QOCT_MODE_TIME || m == QOCT_MODE_ENERGY; }

} // namespace

extern "C" {

const char* qoct_last_error(void) { return g_last_error.c_str(); }

const char* qoct_status_name(qoct_status s) {
  switch (s) {
    case QOCT_OK: return "ok";
    case QOCT_ERR_DOMAIN: return "domain error";
    case QOCT_ERR_NO_SOLUTION: return "no solution";
    case QOCT_ERR_REGIME: return "regime error";
    case QOCT_ERR_BRACKET: return "bracket error";
    case QOCT_ERR_TIMEOUT: return "timeout";
    case QOCT_ERR_STEP: return "step error";
    case QOCT_ERR_CONSISTENCY: return "consistency error";
    case QOCT_ERR_DEPTH: return "depth error";
    case QOCT_ERR_INTERNAL: return "internal error";
    case QOCT_ERR_NULL_ARG: return "null argument";
  }
  return "unknown status";
}

const char* qoct_regime_name(qoct_regime r) {
  return qoct::to_string(static_cast<qoct::Regime>(r));
}

const char* qoct_face_name(qoct_face f) { return qoct::to_string(static_cast<qoct::ExitFace>(f)); }

qoct_status qoct_min_time_law(double alpha, qoct_law** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new qoct_law{qoct::min_time_law(alpha)}; });
}

qoct_status qoct_synthesis_law(double alpha, const double target[3], int reject_boundary,
                               qoct_law** out) {
  if (!out) return null_arg("out");
  if (!target) return null_arg("target");
  return guarded([&] {
    const qoct::StateS2 q = qoct::StateS2::from({target[0], target[1], target[2]});
    const auto policy =
        reject_boundary ? qoct::BoundaryPolicy::Rejected : qoct::BoundaryPolicy::Reached;
    *out = new qoct_law{qoct::synthesis_law(alpha, q, policy)};
  });
}

size_t qoct_law_size(const qoct_law* law) { return law ? law->law.segments.size() : 0; }

qoct_status qoct_law_segment(const qoct_law* law, size_t index, qoct_segment* out) {
  if (!law) return null_arg("law");
  if (!out) return null_arg("out");
  if (index >= law->law.segments.size()) {
    g_last_error = "segment index out of range";
    return QOCT_ERR_DOMAIN;
  }
  const qoct::Segment& s = law->law.segments[index];
  *out = {s.u1, s.u2, s.duration};
  return QOCT_OK;
}

double qoct_law_total_time(const qoct_law* law) {
  return law ? law->law.total_time() : std::nan("");
}

qoct_status qoct_law_endpoint(const qoct_law* law, double out[3]) {
  if (!law) return null_arg("law");
  if (!out) return null_arg("out");
  return guarded([&] {
    const qoct::StateS2 e = qoct::law_endpoint(qoct::StateS2::source(), law->law);
    for (int i = 0; i < 3; ++i) out[i] = e[i];
  });
}

qoct_status qoct_law_sample(const qoct_law* law, double dt, qoct_trajectory** out) {
  if (!law) return null_arg("law");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto* t = new qoct_trajectory;
    append(*t, qoct::propagate_law(qoct::StateS2::source(), law->law, dt), 0.0);
    *out = t;
  });
}

void qoct_law_free(qoct_law* law) { delete law; }

qoct_status qoct_classify(double alpha, double m3_0, qoct_regime* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = static_cast<qoct_regime>(qoct::classify(alpha, m3_0)); });
}

qoct_status qoct_solve_m3(double alpha, double tol, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = qoct::solve_m3(alpha, tol); });
}

qoct_status qoct_transfer_time(double alpha, double m3_0, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = qoct::transfer_time(alpha, m3_0); });
}

qoct_status qoct_m3_bounds(double alpha, double* lower, double* upper) {
  if (!lower || !upper) return null_arg("lower/upper");
  return guarded([&] {
    const qoct::M3Bounds b = qoct::m3_bounds(alpha);
    *lower = b.lower;
    *upper = b.upper;
  });
}

qoct_status qoct_exit_face(double alpha, double m3_0, qoct_face* face, double* t_exit) {
  if (!face) return null_arg("face");
  return guarded([&] {
    const qoct::ExitReport r = qoct::locate_exit(alpha, m3_0);
    *face = static_cast<qoct_face>(r.face);
    if (t_exit) *t_exit = r.t;
  });
}

size_t qoct_trajectory_size(const qoct_trajectory* traj) {
  return traj ? traj->samples.size() : 0;
}

qoct_status qoct_trajectory_sample(const qoct_trajectory* traj, size_t index, qoct_sample* out) {
  if (!traj) return null_arg("traj");
  if (!out) return null_arg("out");
  if (index >= traj->samples.size()) {
    g_last_error = "sample index out of range";
    return QOCT_ERR_DOMAIN;
  }
  *out = traj->samples[index];
  return QOCT_OK;
}

void qoct_trajectory_free(qoct_trajectory* traj) { delete traj; }

qoct_status qoct_sweep_synthesis(double alpha, qoct_mode mode, size_t n, double dt,
                                 qoct_trajectory** out) {
  if (!out) return null_arg("out");
  if (!valid_mode(mode)) {
    g_last_error = "unknown sweep mode";
    return QOCT_ERR_DOMAIN;
  }
  return guarded([&] {
    const auto sweep = mode == QOCT_MODE_TIME ? qoct::sweep_synthesis_time(alpha, n, dt)
                                              : qoct::sweep_synthesis_energy(alpha, n, dt);
    auto* t = new qoct_trajectory;
    for (const qoct::ParamTrajectory& p : sweep) append(*t, p.traj, p.param);
    *out = t;
  });
}

qoct_status qoct_sweep_alpha(double from, double to, size_t n, double tol, int log_spacing,
                             qoct_alpha_point* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto pts = qoct::sweep_alpha(from, to, n, tol, log_spacing != 0);
    for (size_t i = 0; i < pts.size(); ++i)
      out[i] = {pts[i].alpha, pts[i].m3_0, pts[i].transfer_time};
  });
}

qoct_status qoct_lift_simulate(double alpha, qoct_mode mode, const qoct_level_spec* spec,
                               double h, size_t stride, qoct_lift_result** out) {
  if (!out) return null_arg("out");
  if (!spec) return null_arg("spec");
  if (!valid_mode(mode)) {
    g_last_error = "unknown lift mode";
    return QOCT_ERR_DOMAIN;
  }
  return guarded([&] {
    double horizon = 0.0;
    qoct::ControlSignal u;
    law_for(alpha, mode, horizon, u);
    const qoct::LevelSpec ls{spec->e1, spec->e2, spec->e3, spec->xi1, spec->xi2};
    const qoct::LiftReport rep = qoct::lift_and_compare(u, alpha, horizon, ls, h, stride);
    auto* r = new qoct_lift_result{rep.final_population, rep.max_population_error, {}};
    const auto& real = rep.reduced.samples();
    for (size_t i = 0; i < rep.complex_traj.size(); ++i) {
      const qoct::ComplexSample& c = rep.complex_traj[i];
      qoct_lift_point s{};
      s.t = c.t;
      for (int j = 0; j < 3; ++j) {
        s.re[j] = c.psi[j].real();
        s.im[j] = c.psi[j].imag();
        s.reduced[j] = i < real.size() ? real[i].state[j] : std::nan("");
      }
      r->samples.push_back(s);
    }
    *out = r;
  });
}

double qoct_lift_final_population(const qoct_lift_result* res) {
  return res ? res->final_population : std::nan("");
}

double qoct_lift_max_population_error(const qoct_lift_result* res) {
  return res ? res->max_population_error : std::nan("");
}

size_t qoct_lift_size(const qoct_lift_result* res) { return res ? res->samples.size() : 0; }

qoct_status qoct_lift_sample(const qoct_lift_result* res, size_t index, qoct_lift_point* out) {
  if (!res) return null_arg("res");
  if (!out) return null_arg("out");
  if (index >= res->samples.size()) {
    g_last_error = "sample index out of range";
    return QOCT_ERR_DOMAIN;
  }
  *out = res->samples[index];
  return QOCT_OK;
}

void qoct_lift_free(qoct_lift_result* res) { delete res; }

qoct_status qoct_oracle_search(double alpha, size_t n_candidates, size_t max_segments,
                               uint64_t seed, double* best_time, qoct_law** best_law) {
  if (!best_time) return null_arg("best_time");
  return guarded([&] {
    qoct::SearchResult r = qoct::sample_search_min_time(alpha, n_candidates, max_segments, seed);
    *best_time = r.best_time;
    if (best_law) *best_law = new qoct_law{std::move(r.best_law)};
  });
}

qoct_status qoct_verify(int fast, qoct_verify_callback callback, void* user, int* n_failed) {
  return guarded([&] {
    const int failed = qoct::run_acceptance(fast != 0, [&](const qoct::CriterionResult& r) {
      if (callback)
        callback(r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
    });
    if (n_failed) *n_failed = failed;
  });
}

} // extern "C"

#include "chebz/chebz.h"

#include <fstream>
#include <new>
#include <string>

#include "chebz/annihilator.hpp"
#include "chebz/chebsys.hpp"
#include "chebz/curves.hpp"
#include "chebz/discrete.hpp"
#include "chebz/error.hpp"
#include "chebz/fourvertex.hpp"
#include "chebz/orthosynth.hpp"
#include "chebz/runner.hpp"
#include "chebz/textio.hpp"

struct chebz_system {
  chebz::ChebSystem sys;
};
struct chebz_curve {
  chebz::CurveRd curve;
};
struct chebz_polyline {
  chebz::PolyLine p;
};
struct chebz_oval {
  chebz::OvalSupport oval;
};
struct chebz_report {
  chebz::RunReport report;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_subcommands;

chebz_status status_of(chebz::ErrorKind k) {
  switch (k) {
    case chebz::ErrorKind::InvalidInput: return CHEBZ_E_INVALID;
    case chebz::ErrorKind::NotApplicable: return CHEBZ_E_NOT_APPLICABLE;
    case chebz::ErrorKind::Diagnostic: return CHEBZ_E_DIAGNOSTIC;
    case chebz::ErrorKind::Io: return CHEBZ_E_IO;
  }
  return CHEBZ_E_INTERNAL;
}

chebz_status fail(chebz_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
chebz_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const chebz::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CHEBZ_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CHEBZ_E_INTERNAL, e.what());
  }
}

#define CHEBZ_NONNULL(ptr) \
  if (!(ptr)) return fail(CHEBZ_E_INVALID, #ptr " must not be NULL")

chebz_check check_of(chebz::CheckStatus s) {
  switch (s) {
    case chebz::CheckStatus::Pass: return CHEBZ_CHECK_PASS;
    case chebz::CheckStatus::Fail: return CHEBZ_CHECK_FAIL;
    case chebz::CheckStatus::NotApplicable: return CHEBZ_CHECK_NOT_APPLICABLE;
    case chebz::CheckStatus::Degenerate: return CHEBZ_CHECK_DEGENERATE;
  }
  return CHEBZ_CHECK_FAIL;
}

std::span<const double> view(const double* p, std::size_t n) {
  return n == 0 ? std::span<const double>{} : std::span<const double>(p, n);
}

}  // namespace

extern "C" {

const char* chebz_version(void) { return "0.1.0"; }

const char* chebz_status_string(chebz_status status) {
  switch (status) {
    case CHEBZ_OK: return "ok";
    case CHEBZ_E_INVALID: return "invalid input";
    case CHEBZ_E_NOT_APPLICABLE: return "not applicable";
    case CHEBZ_E_DIAGNOSTIC: return "diagnostic failure";
    case CHEBZ_E_IO: return "i/o error";
    case CHEBZ_E_BUFFER: return "buffer too small";
    case CHEBZ_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* chebz_last_error(void) { return g_last_error.c_str(); }

chebz_status chebz_system_parse(const char* spec, double lo, double hi, chebz_system** out) {
  return guarded([&] {
    CHEBZ_NONNULL(spec);
    CHEBZ_NONNULL(out);
    std::optional<chebz::Domain> dom;
    if (lo < hi) dom = chebz::Domain::interval(lo, hi);
    *out = new chebz_system{chebz::system_from_spec(spec, dom)};
    return CHEBZ_OK;
  });
}

void chebz_system_free(chebz_system* sys) { delete sys; }

int chebz_system_order(const chebz_system* sys) { return sys ? sys->sys.order() : 0; }

int chebz_system_periodic(const chebz_system* sys) {
  return sys && sys->sys.domain().is_circle() ? 1 : 0;
}

chebz_status chebz_system_verify(const chebz_system* sys, int trials, uint64_t seed,
                                 int* is_chebyshev) {
  return guarded([&] {
    CHEBZ_NONNULL(sys);
    CHEBZ_NONNULL(is_chebyshev);
    *is_chebyshev = chebz::verify_chebyshev(sys->sys, trials, seed).passed() ? 1 : 0;
    return CHEBZ_OK;
  });
}

chebz_status chebz_synth_orthogonal(const chebz_system* sys, const double* points,
                                    size_t n_points, double* heights, size_t cap,
                                    size_t* n_heights, const double* ts, size_t n_ts,
                                    double* values, int* sign_changes, double* max_residual) {
  return guarded([&] {
    CHEBZ_NONNULL(sys);
    if (n_points > 0) CHEBZ_NONNULL(points);
    if (n_ts > 0) {
      CHEBZ_NONNULL(ts);
      CHEBZ_NONNULL(values);
    }
    const auto& dom = sys->sys.domain();
    const auto res = chebz::synth_orthogonal(sys->sys, view(points, n_points),
                                             chebz::QuadSpec::default_for(dom));
    if (sign_changes) *sign_changes = res.sign_report.count;
    if (max_residual) *max_residual = res.max_residual();
    for (size_t i = 0; i < n_ts; ++i) values[i] = res.function(ts[i]);
    const auto& h = res.step.heights;
    if (n_heights) *n_heights = h.size();
    if (heights) {
      if (cap < h.size()) return fail(CHEBZ_E_BUFFER, "heights buffer too small");
      std::copy(h.begin(), h.end(), heights);
    }
    return CHEBZ_OK;
  });
}

chebz_status chebz_annihilator(const chebz_system* sys, const double* simple, size_t n_simple,
                               const double* dbl, size_t n_double, double* coeffs, size_t cap,
                               int* sign_changes) {
  return guarded([&] {
    CHEBZ_NONNULL(sys);
    if (n_simple > 0) CHEBZ_NONNULL(simple);
    if (n_double > 0) CHEBZ_NONNULL(dbl);
    const auto s = view(simple, n_simple), d = view(dbl, n_double);
    chebz::RootPrescription rp{{s.begin(), s.end()}, {d.begin(), d.end()}};
    const auto res = chebz::general_annihilator(sys->sys, rp);
    if (sign_changes) *sign_changes = res.sign_report.count;
    if (coeffs) {
      if (cap < res.coeffs.size()) return fail(CHEBZ_E_BUFFER, "coefficient buffer too small");
      std::copy(res.coeffs.begin(), res.coeffs.end(), coeffs);
    }
    return CHEBZ_OK;
  });
}

chebz_status chebz_curve_parse(const char* spec, chebz_curve** out) {
  return guarded([&] {
    CHEBZ_NONNULL(spec);
    CHEBZ_NONNULL(out);
    *out = new chebz_curve{chebz::curve_from_spec(spec)};
    return CHEBZ_OK;
  });
}

void chebz_curve_free(chebz_curve* curve) { delete curve; }

int chebz_curve_dim(const chebz_curve* curve) { return curve ? curve->curve.dim() : 0; }

int chebz_curve_closed(const chebz_curve* curve) {
  return curve && curve->curve.closed() ? 1 : 0;
}

chebz_status chebz_curve_eval(const chebz_curve* curve, double t, double* x, size_t cap) {
  return guarded([&] {
    CHEBZ_NONNULL(curve);
    CHEBZ_NONNULL(x);
    const auto d = static_cast<size_t>(curve->curve.dim());
    if (cap < d) return fail(CHEBZ_E_BUFFER, "point buffer too small");
    const chebz::Point p = curve->curve(t);
    for (size_t i = 0; i < d; ++i) x[i] = p(static_cast<Eigen::Index>(i));
    return CHEBZ_OK;
  });
}

chebz_status chebz_curve_convexity(const chebz_curve* curve, int trials, uint64_t seed,
                                   int* is_convex, int* max_count) {
  return guarded([&] {
    CHEBZ_NONNULL(curve);
    CHEBZ_NONNULL(is_convex);
    const auto v = chebz::convexity_check(curve->curve, trials, seed);
    *is_convex = v.passed() ? 1 : 0;
    if (max_count) *max_count = v.passed() ? v.max_count_seen : v.witness_count;
    return CHEBZ_OK;
  });
}

chebz_status chebz_curve_dimension(const chebz_curve* curve, int n, int homogeneous,
                                   int* dimension) {
  return guarded([&] {
    CHEBZ_NONNULL(curve);
    CHEBZ_NONNULL(dimension);
    const auto basis = chebz::restrict_polynomials(curve->curve, n, homogeneous != 0);
    *dimension = chebz::dimension_estimate(basis, curve->curve.domain(),
                                           std::max<int>(1024, 4 * static_cast<int>(basis.size())));
    return CHEBZ_OK;
  });
}

chebz_status chebz_polyline_create(const double* vertices, size_t count, int dim, int closed,
                                   chebz_polyline** out) {
  return guarded([&] {
    CHEBZ_NONNULL(vertices);
    CHEBZ_NONNULL(out);
    if (dim < 1 || dim > chebz::kMaxCurveDim) {
      return fail(CHEBZ_E_INVALID, "dimension must lie in [1, 8]");
    }
    chebz::PolyLine p;
    p.closed = closed != 0;
    for (size_t i = 0; i < count; ++i) {
      chebz::Point x(dim);
      for (int j = 0; j < dim; ++j) x(j) = vertices[i * dim + j];
      p.vertices.push_back(x);
    }
    chebz::validate(p);
    *out = new chebz_polyline{std::move(p)};
    return CHEBZ_OK;
  });
}

chebz_status chebz_polyline_read(const char* path, chebz_polyline** out) {
  return guarded([&] {
    CHEBZ_NONNULL(path);
    CHEBZ_NONNULL(out);
    *out = new chebz_polyline{chebz::read_polyline_file(path)};
    return CHEBZ_OK;
  });
}

chebz_status chebz_polyline_write(const chebz_polyline* p, const char* path) {
  return guarded([&] {
    CHEBZ_NONNULL(p);
    CHEBZ_NONNULL(path);
    std::ofstream out(path);
    if (!out) return fail(CHEBZ_E_IO, std::string("cannot open '") + path + "' for writing");
    chebz::write_polyline(out, p->p);
    return out ? CHEBZ_OK : fail(CHEBZ_E_IO, std::string("write to '") + path + "' failed");
  });
}

chebz_status chebz_polyline_random_convex(int k, uint64_t seed, chebz_polyline** out) {
  return guarded([&] {
    CHEBZ_NONNULL(out);
    *out = new chebz_polyline{chebz::random_convex_polygon(k, seed)};
    return CHEBZ_OK;
  });
}

void chebz_polyline_free(chebz_polyline* p) { delete p; }

int chebz_polyline_size(const chebz_polyline* p) { return p ? p->p.size() : 0; }

int chebz_polyline_dim(const chebz_polyline* p) { return p ? p->p.dim() : 0; }

chebz_status chebz_polyline_masses(const chebz_polyline* p, int n, uint64_t seed, double* masses,
                                   size_t cap) {
  return guarded([&] {
    CHEBZ_NONNULL(p);
    CHEBZ_NONNULL(masses);
    if (cap < static_cast<size_t>(p->p.size())) return fail(CHEBZ_E_BUFFER, "mass buffer too small");
    const auto m = chebz::construct_masses(p->p, n, seed);
    std::copy(m.begin(), m.end(), masses);
    return CHEBZ_OK;
  });
}

chebz_status chebz_polyline_mass_check(const chebz_polyline* p, int n, const double* masses,
                                       size_t count, double tol, chebz_check* verdict,
                                       int* sign_changes, int* bound) {
  return guarded([&] {
    CHEBZ_NONNULL(p);
    CHEBZ_NONNULL(masses);
    CHEBZ_NONNULL(verdict);
    const auto r = chebz::polyline_moment_sign_check(p->p, n, view(masses, count), tol);
    *verdict = check_of(r.status);
    if (sign_changes) *sign_changes = r.sign_changes;
    if (bound) *bound = r.bound;
    return CHEBZ_OK;
  });
}

chebz_status chebz_oval_create(double h0, const double* a, const double* b, size_t count,
                               chebz_oval** out) {
  return guarded([&] {
    CHEBZ_NONNULL(out);
    if (count > 0) {
      CHEBZ_NONNULL(a);
      CHEBZ_NONNULL(b);
    }
    chebz::OvalSupport o;
    o.h0 = h0;
    for (size_t m = 0; m < count; ++m) o.coeffs.push_back({a[m], b[m]});
    chebz::validate(o);
    *out = new chebz_oval{std::move(o)};
    return CHEBZ_OK;
  });
}

chebz_status chebz_oval_read(const char* path, chebz_oval** out) {
  return guarded([&] {
    CHEBZ_NONNULL(path);
    CHEBZ_NONNULL(out);
    *out = new chebz_oval{chebz::read_oval_file(path)};
    return CHEBZ_OK;
  });
}

chebz_status chebz_oval_write(const chebz_oval* oval, const char* path) {
  return guarded([&] {
    CHEBZ_NONNULL(oval);
    CHEBZ_NONNULL(path);
    std::ofstream out(path);
    if (!out) return fail(CHEBZ_E_IO, std::string("cannot open '") + path + "' for writing");
    chebz::write_oval(out, oval->oval);
    return out ? CHEBZ_OK : fail(CHEBZ_E_IO, std::string("write to '") + path + "' failed");
  });
}

chebz_status chebz_oval_random(int harmonics, double amplitude, uint64_t seed, chebz_oval** out) {
  return guarded([&] {
    CHEBZ_NONNULL(out);
    *out = new chebz_oval{chebz::random_oval(harmonics, amplitude, seed)};
    return CHEBZ_OK;
  });
}

void chebz_oval_free(chebz_oval* oval) { delete oval; }

chebz_status chebz_oval_vertices(const chebz_oval* oval, const chebz_oval* ref,
                                 chebz_check* verdict, int* extrema) {
  return guarded([&] {
    CHEBZ_NONNULL(oval);
    CHEBZ_NONNULL(verdict);
    const auto r = ref ? chebz::curvature_ratio_check(oval->oval, ref->oval)
                       : chebz::four_vertex_check(oval->oval);
    *verdict = check_of(r.status);
    if (extrema) *extrema = r.extrema;
    return CHEBZ_OK;
  });
}

chebz_status chebz_run(const char* config_json, chebz_report** out, int* exit_code) {
  return guarded([&] {
    CHEBZ_NONNULL(config_json);
    CHEBZ_NONNULL(out);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      return fail(CHEBZ_E_INVALID, std::string("configuration is not valid JSON: ") + e.what());
    }
    auto* r = new chebz_report{chebz::run(chebz::config_from_json(j)), {}, {}};
    r->json = r->report.to_json();
    r->csv = r->report.to_csv();
    if (!r->report.error.empty()) g_last_error = r->report.error;
    if (exit_code) *exit_code = r->report.exit_code;
    *out = r;
    return CHEBZ_OK;
  });
}

const char* chebz_report_json(const chebz_report* report) {
  return report ? report->json.c_str() : "";
}

const char* chebz_report_csv(const chebz_report* report) {
  return report ? report->csv.c_str() : "";
}

int chebz_report_exit_code(const chebz_report* report) {
  return report ? report->report.exit_code : 2;
}

int chebz_report_fail_count(const chebz_report* report) {
  return report ? report->report.fail_count : 0;
}

void chebz_report_free(chebz_report* report) { delete report; }

const char* chebz_subcommands(const char* verb) {
  g_subcommands.clear();
  if (!verb) return "";
  for (const auto& s : chebz::subcommands(verb)) {
    g_subcommands += (g_subcommands.empty() ? "" : ",") + s;
  }
  return g_subcommands.c_str();
}

}  // extern "C"

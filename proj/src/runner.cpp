#include "chebz/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "chebz/annihilator.hpp"
#include "chebz/chebsys.hpp"
#include "chebz/curves.hpp"
#include "chebz/discrete.hpp"
#include "chebz/error.hpp"
#include "chebz/fourvertex.hpp"
#include "chebz/orthosynth.hpp"
#include "chebz/rng.hpp"
#include "chebz/textio.hpp"

namespace chebz {

using ojson = nlohmann::ordered_json;

RunConfig config_from_json(const nlohmann::json& j) {
  require(j.is_object(), "run configuration must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("command")) {
      std::istringstream ss(j.at("command").get<std::string>());
      ss >> c.verb >> c.subject;
    } else {
      c.verb = j.value("verb", "");
      c.subject = j.value("subject", "");
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    c.tol = j.value("tol", c.tol);
    c.grid = j.value("grid", c.grid);
    c.output_path = j.value("out", "");
    const std::string fmt = j.value("format", "json");
    if (fmt == "json" || fmt == "JSON") {
      c.format = RunConfig::Format::Json;
    } else if (fmt == "csv" || fmt == "CSV") {
      c.format = RunConfig::Format::Csv;
    } else {
      invalid_input("unknown format '" + fmt + "' (expected json or csv)");
    }
    c.timing = j.value("timing", false);
    c.threads = j.value("threads", 0);
    if (j.contains("options")) {
      for (const auto& [k, v] : j.at("options").items()) {
        c.options[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    invalid_input(std::string("malformed run configuration: ") + e.what());
  }
  require(!c.verb.empty() && !c.subject.empty(), "run configuration needs a command such as \"verify theorem6\"");
  const auto known = subcommands(c.verb);
  require(!known.empty(), "unknown command verb '" + c.verb + "' (expected verify, synth or curve)");
  require(std::find(known.begin(), known.end(), c.subject) != known.end(),
          "unknown subcommand '" + c.verb + " " + c.subject + "'");
  if (c.trials) require(*c.trials >= 1, "trials must be at least 1");
  require(c.tol > 0.0, "tol must be positive");
  require(c.grid >= 64, "grid must be at least 64");
  require(c.threads >= 0, "threads must be nonnegative");
  return c;
}

std::vector<InstanceRecord> RunReport::failures() const {
  std::vector<InstanceRecord> out;
  for (const auto& r : records) {
    if (r.status == "fail" || r.status == "error") out.push_back(r);
  }
  return out;
}

std::string RunReport::to_json() const {
  ojson j;
  j["schema"] = 1;
  j["command"] = command;
  j["seed"] = seed;
  j["trials_run"] = trials_run;
  j["pass_count"] = pass_count;
  j["fail_count"] = fail_count;
  j["not_applicable_count"] = not_applicable_count;
  ojson fl = ojson::array();
  for (const auto& r : failures()) {
    fl.push_back({{"instance", r.instance},
                  {"expected_bound", r.expected_bound},
                  {"observed", r.observed},
                  {"status", r.status}});
  }
  j["failures"] = fl;
  j["wall_time_ms"] = wall_time_ms;
  if (!error.empty()) j["error"] = error;
  j["details"] = details;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_value(const ojson& v) {
  return v.is_string() ? csv_field(v.get<std::string>()) : v.dump();
}

}  // namespace

std::string RunReport::to_csv() const {
  std::ostringstream out;
  out << "# command=" << command << " seed=" << seed << " trials_run=" << trials_run
      << " pass_count=" << pass_count << " fail_count=" << fail_count << '\n';
  if (!error.empty()) out << "# error=" << error << '\n';
  out << "instance,expected_bound,observed,status\n";
  for (const auto& r : records) {
    out << csv_field(r.instance) << ',' << r.expected_bound << ',' << r.observed << ','
        << r.status << '\n';
  }
  if (details.contains("table")) {
    const auto& t = details["table"];
    out << '\n';
    bool first = true;
    for (const auto& c : t["columns"]) {
      out << (first ? "" : ",") << csv_value(c);
      first = false;
    }
    out << '\n';
    for (const auto& row : t["rows"]) {
      first = true;
      for (const auto& v : row) {
        out << (first ? "" : ",") << csv_value(v);
        first = false;
      }
      out << '\n';
    }
  }
  return out.str();
}

namespace {

// ---------------------------------------------------------------- helpers

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_list(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s + ")";
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      invalid_input("malformed number '" + item + "' in --" + what);
    }
  }
  return out;
}

std::uint64_t draw_seed(Rng& rng) {
  const auto hi = static_cast<std::uint64_t>(rng.index(std::size_t{1} << 32));
  const auto lo = static_cast<std::uint64_t>(rng.index(std::size_t{1} << 32));
  return (hi << 32) | lo;
}

struct Ctx {
  const RunConfig& cfg;
  RunReport& rep;
  int block = 0;

  bool has(const std::string& k) const { return cfg.options.count(k) > 0; }
  std::string str(const std::string& k, const std::string& def = {}) const {
    auto it = cfg.options.find(k);
    return it == cfg.options.end() ? def : it->second;
  }
  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    const auto v = parse_list(str(k), k);
    if (v.size() != 1 || v[0] != std::floor(v[0]) || std::abs(v[0]) > 1e9) {
      invalid_input("--" + k + " must be an integer");
    }
    return static_cast<int>(v[0]);
  }
  double real(const std::string& k, double def) const {
    if (!has(k)) return def;
    const auto v = parse_list(str(k), k);
    if (v.size() != 1) invalid_input("--" + k + " must be a single number");
    return v[0];
  }
  int trials(int def) const { return cfg.trials.value_or(def); }
  std::optional<Domain> interval() const {
    if (!has("interval")) return std::nullopt;
    const auto v = parse_list(str("interval"), "interval");
    if (v.size() != 2) invalid_input("--interval takes a,b");
    return Domain::interval(v[0], v[1]);
  }
};

InstanceRecord make_record(std::string instance, int bound, int observed, CheckStatus s) {
  return {std::move(instance), bound, observed, std::string(to_string(s))};
}

InstanceRecord bound_record(std::string instance, int bound, int observed) {
  return {std::move(instance), bound, observed, observed >= bound ? "pass" : "fail"};
}

InstanceRecord exact_record(std::string instance, int expected, int observed) {
  return {std::move(instance), expected, observed, observed == expected ? "pass" : "fail"};
}

InstanceRecord flag_record(std::string instance, bool ok) {
  return {std::move(instance), 1, ok ? 1 : 0, ok ? "pass" : "fail"};
}

// Runs trials on a worker pool; trial i always sees the stream derived from
// (block seed, i), and results are kept in trial order.
void sweep(Ctx& ctx, const std::string& label, int trials,
           const std::function<InstanceRecord(Rng&)>& fn) {
  const std::uint64_t block_seed =
      splitmix64(ctx.cfg.seed ^ splitmix64(static_cast<std::uint64_t>(++ctx.block)));
  std::vector<InstanceRecord> out(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      Rng rng = Rng::derived(block_seed, static_cast<std::uint64_t>(i));
      try {
        out[i] = fn(rng);
      } catch (const Error& e) {
        out[i] = {"trial " + std::to_string(i) + ": " + e.what(), 0, 0,
                  e.kind() == ErrorKind::NotApplicable ? "not-applicable" : "error"};
      }
      out[i].instance = label + " #" + std::to_string(i) + " " + out[i].instance;
    }
  };
  int nthreads = ctx.cfg.threads > 0 ? ctx.cfg.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, std::max(1, trials));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int pass = 0, minimum_margin = std::numeric_limits<int>::max();
  for (const auto& r : out) {
    pass += r.status == "pass";
    minimum_margin = std::min(minimum_margin, r.observed - r.expected_bound);
  }
  ctx.rep.details["blocks"].push_back(
      {{"block", label}, {"instances", trials}, {"pass", pass}, {"min_margin", minimum_margin}});
  ctx.rep.records.insert(ctx.rep.records.end(), out.begin(), out.end());
}

void single(Ctx& ctx, const std::string& label, const std::function<InstanceRecord()>& fn) {
  InstanceRecord r;
  try {
    r = fn();
  } catch (const Error& e) {
    r = {e.what(), 0, 0, e.kind() == ErrorKind::NotApplicable ? "not-applicable" : "error"};
  }
  r.instance = label + (r.instance.empty() ? "" : " " + r.instance);
  ctx.rep.records.push_back(r);
}

// Sorted points with every gap (including the ends of an interval, or the
// wrap on the circle) at least a fixed fraction of the average gap.
std::vector<double> separated_points(Rng& rng, const Domain& dom, int count, double floor = 0.25) {
  const int gaps = dom.is_circle() ? count : count + 1;
  std::vector<double> g(gaps);
  double total = 0.0;
  for (auto& x : g) total += (x = -std::log(1.0 - rng.uniform()));
  const double len = dom.length();
  const double floor_gap = floor * len / gaps;
  const double spread = len - floor_gap * gaps;
  std::vector<double> pts;
  double t = dom.is_circle() ? rng.uniform(0.0, kTwoPi) : dom.lo();
  for (int i = 0; i < count; ++i) {
    t += floor_gap + spread * g[i] / total;
    pts.push_back(dom.wrap(t));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

ChebSystem random_catalog_system(Rng& rng) {
  switch (rng.index(3)) {
    case 0: {
      const double a = rng.uniform(-1.5, 0.0);
      return polynomial_system(static_cast<int>(rng.index(9)), Domain::interval(a, a + rng.uniform(1.0, 2.0)));
    }
    case 1:
      return trig_system(static_cast<int>(rng.index(5)));
    default: {
      std::vector<double> alphas;
      double e = 0.0;
      const int d = 1 + static_cast<int>(rng.index(5));
      for (int i = 0; i < d; ++i) alphas.push_back(e += rng.uniform(0.3, 1.2));
      return power_system(alphas, Domain::interval(0.5, 0.5 + rng.uniform(1.0, 2.0)));
    }
  }
}

// Random smooth function: Chebyshev series in the rescaled variable on an
// interval, trigonometric series on the circle.
Func1D random_smooth(Rng& rng, const Domain& dom, int terms) {
  std::vector<double> a(terms), b(terms);
  for (int j = 0; j < terms; ++j) {
    a[j] = rng.normal() / (1.0 + j);
    b[j] = rng.normal() / (1.0 + j);
  }
  if (dom.is_circle()) {
    return Func1D([a, b](double t) {
      double v = 0.0;
      for (std::size_t m = 0; m < a.size(); ++m) v += a[m] * std::cos(m * t) + b[m] * std::sin(m * t);
      return v;
    }, "series");
  }
  const double lo = dom.lo(), len = dom.length();
  return Func1D([a, lo, len](double t) {
    const double u = std::clamp(2.0 * (t - lo) / len - 1.0, -1.0, 1.0);
    double v = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) v += a[j] * std::cos(j * std::acos(u));
    return v;
  }, "series");
}

// f minus its L2 projection onto the span of the basis.
Func1D project_out(std::span<const Func1D> basis, const Domain& dom, const Func1D& f,
                   const QuadSpec& quad) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix g(n, n);
  Vector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rhs(i) = integrate(product(f, basis[i]), dom, quad);
    for (Eigen::Index j = 0; j <= i; ++j) {
      g(i, j) = g(j, i) = integrate(product(basis[i], basis[j]), dom, quad);
    }
  }
  const Vector c = g.colPivHouseholderQr().solve(rhs);
  std::vector<double> neg(basis.size());
  for (Eigen::Index i = 0; i < n; ++i) neg[i] = -c(i);
  const Func1D p = linear_combination(basis, neg);
  return Func1D([f, p](double t) { return f(t) + p(t); }, "projected");
}

Func1D legendre(int n) {
  return Func1D(
      [n](double x) {
        double p0 = 1.0, p1 = x;
        if (n == 0) return p0;
        for (int k = 1; k < n; ++k) {
          const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
          p0 = p1;
          p1 = p2;
        }
        return p1;
      },
      "legendre:" + std::to_string(n));
}

Func1D func_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<double>{}
                                               : parse_list(spec.substr(colon + 1), "func");
  auto whole = [&]() {
    if (args.size() != 1 || args[0] != std::floor(args[0]) || args[0] < 0 || args[0] > 1000) {
      invalid_input("function '" + name + "' takes one nonnegative integer");
    }
    return static_cast<int>(args[0]);
  };
  if (name == "sin") {
    const int k = whole();
    return Func1D([k](double t) { return std::sin(k * t); }, spec);
  }
  if (name == "cos") {
    const int k = whole();
    return Func1D([k](double t) { return std::cos(k * t); }, spec);
  }
  if (name == "legendre") return legendre(whole());
  if (name == "poly") {
    if (args.empty()) invalid_input("function 'poly' needs coefficients c0,c1,...");
    return Func1D([args](double t) {
      double v = 0.0;
      for (auto it = args.rbegin(); it != args.rend(); ++it) v = v * t + *it;
      return v;
    }, spec);
  }
  invalid_input("unknown function '" + name + "' (expected sin:K, cos:K, legendre:N, poly:c0,...)");
}

QuadSpec quad_for(const Domain& dom) { return QuadSpec::default_for(dom); }

ojson samples_table(const Func1D& f, const Domain& dom, int n, const char* name) {
  ojson t;
  t["columns"] = {"t", name};
  t["rows"] = ojson::array();
  for (int i = 0; i < n; ++i) {
    const double x = dom.is_circle() ? kTwoPi * i / n : dom.lo() + dom.length() * i / (n - 1);
    const double s = dom.is_circle() ? x : std::clamp(x, dom.lo(), dom.hi());
    t["rows"].push_back({s, f(s)});
  }
  return t;
}

// ---------------------------------------------------------------- verify

void verify_assertion1(Ctx& ctx) {
  std::vector<int> ns;
  if (ctx.has("n")) {
    ns.push_back(ctx.integer("n", 1));
  } else {
    for (int n = 1; n <= 6; ++n) ns.push_back(n);
  }
  const Domain dom = ctx.interval().value_or(Domain::interval(-1, 1));
  const QuadSpec quad = quad_for(dom);
  const double tol = ctx.cfg.tol;
  for (int n : ns) {
    require(n >= 1 && n <= 12, "--n must lie in [1, 12]");
    const ChebSystem sys = polynomial_system(n - 1, dom);
    sweep(ctx, "n=" + std::to_string(n), ctx.trials(100), [&, n](Rng& rng) {
      Func1D f;
      std::string what;
      if (rng.index(2) == 0) {
        const auto pts = separated_points(rng, dom, n);
        f = synth_orthogonal(sys, pts, quad).function;
        what = "synth points=" + fmt_list(pts);
      } else {
        const int terms = n + 2 + static_cast<int>(rng.index(6));
        f = project_out(sys.basis(), dom, random_smooth(rng, dom, terms), quad);
        what = "projected terms=" + std::to_string(terms);
      }
      const auto r = weighted_orthogonality_check(sys, f, Func1D::constant(1.0), quad, tol);
      return make_record(what, n, r.sign_changes, r.status);
    });
    single(ctx, "n=" + std::to_string(n) + " legendre exact", [&, n] {
      const Func1D p = legendre(n);
      if (dom == Domain::interval(-1, 1)) {
        const auto r = weighted_orthogonality_check(sys, p, Func1D::constant(1.0), quad, tol);
        if (r.status != CheckStatus::Pass) return make_record("", n, r.sign_changes, r.status);
      }
      return exact_record("", n, count_sign_changes(p, Domain::interval(-1, 1)).count);
    });
  }
}

void verify_hurwitz(Ctx& ctx) {
  std::vector<int> hs;
  if (ctx.has("harmonics")) {
    hs.push_back(ctx.integer("harmonics", 1));
  } else {
    hs = {1, 2, 3};
  }
  const Domain dom = Domain::circle();
  const QuadSpec quad = quad_for(dom);
  for (int h : hs) {
    require(h >= 0 && h <= 8, "--harmonics must lie in [0, 8]");
    const ChebSystem sys = trig_system(h);
    const int m = 2 * h + 2;
    sweep(ctx, "harmonics=" + std::to_string(h), ctx.trials(100), [&, h, m](Rng& rng) {
      Func1D f;
      std::string what;
      if (rng.index(2) == 0) {
        const auto pts = separated_points(rng, dom, m);
        f = synth_orthogonal(sys, pts, quad).function;
        what = "synth points=" + fmt_list(pts);
      } else {
        const int terms = h + 2 + static_cast<int>(rng.index(5));
        f = project_out(sys.basis(), dom, random_smooth(rng, dom, terms), quad);
        what = "projected harmonics<" + std::to_string(terms);
      }
      const auto r = weighted_orthogonality_check(sys, f, Func1D::constant(1.0), quad, ctx.cfg.tol);
      return make_record(what, m, r.sign_changes, r.status);
    });
    single(ctx, "harmonics=" + std::to_string(h) + " minimal exact", [&, m] {
      Rng rng(ctx.cfg.seed);
      const auto pts = separated_points(rng, dom, m);
      const auto res = synth_orthogonal(sys, pts, quad);
      return exact_record("", m, res.sign_report.count);
    });
  }
}

void verify_theorem1(Ctx& ctx) {
  const std::string spec = ctx.str("system");
  const auto interval = ctx.interval();
  sweep(ctx, "weighted", ctx.trials(100), [&](Rng& rng) {
    const ChebSystem sys = spec.empty() ? random_catalog_system(rng) : system_from_spec(spec, interval);
    const Domain& dom = sys.domain();
    const QuadSpec quad = quad_for(dom);
    const int m = m_of(dom, sys.order());
    int q = m + static_cast<int>(rng.index(4));
    if (dom.is_circle() && q % 2) ++q;
    const auto pts = separated_points(rng, dom, q);
    const Func1D g = natural_annihilator(pts, dom);
    // An integer frequency keeps the positive factor periodic on the circle.
    const double w = dom.is_circle() ? 1.0 + static_cast<double>(rng.index(3)) : rng.uniform(1.0, 4.0);
    const double ph = rng.uniform(0.0, kTwoPi);
    const Func1D f([g, w, ph](double t) { return g(t) * (1.5 + std::sin(w * t + ph)); }, "f");
    const auto wr = synth_weight(sys, f, quad);
    const auto r = weighted_orthogonality_check(sys, f, wr.function, quad, ctx.cfg.tol);
    return make_record(sys.label() + " q=" + std::to_string(q), m, r.sign_changes, r.status);
  });
}

void verify_theorem3(Ctx& ctx) {
  const std::string spec = ctx.str("system");
  const auto interval = ctx.interval();
  sweep(ctx, "prescribed", ctx.trials(500), [&](Rng& rng) {
    const ChebSystem sys = spec.empty() ? random_catalog_system(rng) : system_from_spec(spec, interval);
    const Domain& dom = sys.domain();
    const int m = m_of(dom, sys.order());
    const auto pts = separated_points(rng, dom, m);
    const auto res = synth_orthogonal(sys, pts, quad_for(dom));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double h : res.step.heights) {
      lo = std::min(lo, h);
      hi = std::max(hi, std::abs(h));
    }
    const bool ok = lo > 1e-12 * hi && res.max_residual() <= kResidualTol;
    InstanceRecord r = exact_record(sys.label() + " points=" + fmt_list(pts), m, res.sign_report.count);
    if (!ok) r.status = "fail";
    return r;
  });
  single(ctx, "hand oracle {1,x} at -1/3,1/3", [&] {
    const Domain dom = Domain::interval(-1, 1);
    const std::vector<double> pts{-1.0 / 3, 1.0 / 3};
    const auto res = synth_orthogonal(polynomial_system(1, dom), pts, quad_for(dom));
    const double s = res.step.heights[1] / 10.0;
    double err = 0.0;
    const double want[] = {1, 10, 1};
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(res.step.heights[i] / s - want[i]));
    auto r = flag_record("heights ratio error " + fmt(err), err <= 1e-10);
    ctx.rep.details["hand_oracle_heights"] = res.step.heights;
    return r;
  });
}

std::vector<CurveRd> convex_catalog() {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  std::vector<CurveRd> c{moment_curve(2, -1, 1), moment_curve(3, -1, 1), moment_curve(4, -1, 1),
                         moment_curve(3, 0, 2),  trig_curve(1),          trig_curve(2),
                         exp_graph(),            sine_graph(10, 1, 3.5)};
  const double p2[] = {r2, r3};
  const double p3[] = {r2, r3, 2.5};
  c.push_back(power_curve(p2, 1, 2));
  c.push_back(power_curve(p3, 0.5, 2));
  c.push_back(smoothed_polygon(6, 1.0));
  return c;
}

// Random affine image x -> A x + b with A near the identity.
CurveRd affine_image(const CurveRd& c, Rng& rng) {
  const int d = c.dim();
  Matrix a(d, d);
  for (;;) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a(i, j) = (i == j) + 0.3 * rng.normal();
    }
    if (std::abs(a.determinant()) > 0.2) break;
  }
  Vector b(d);
  for (int i = 0; i < d; ++i) b(i) = rng.normal();
  return CurveRd(
      [c, a, b](double t) {
        const Vector x = c(t);
        Point y = a * x + b;
        return y;
      },
      d, c.domain(), c.label() + " affine", {c.kinks().begin(), c.kinks().end()});
}

InstanceRecord agreement_record(const CurveRd& curve, int probes, std::uint64_t seed) {
  const auto r = convex_chebyshev_check(curve, probes, seed);
  const int observed = r.convexity.passed() ? r.convexity.max_count_seen : r.convexity.witness_count;
  const std::string verdicts = std::string(r.convexity.passed() ? "convex" : "not-convex") + "/" +
                               (r.chebyshev.passed() ? "chebyshev" : "not-chebyshev");
  InstanceRecord rec{curve.label() + " " + verdicts, curve.dim(), observed,
                     r.agree && r.witnesses_consistent ? "pass" : "fail"};
  return rec;
}

void verify_theorem4(Ctx& ctx) {
  const int probes = ctx.integer("probes", 200);
  if (ctx.has("curve")) {
    const CurveRd c = curve_from_spec(ctx.str("curve"));
    single(ctx, "curve", [&] { return agreement_record(c, probes, ctx.cfg.seed); });
    return;
  }
  auto catalog = convex_catalog();
  catalog.push_back(sine_graph(10, 1, 5));
  for (const auto& c : catalog) {
    single(ctx, "catalog", [&] { return agreement_record(c, probes, ctx.cfg.seed); });
  }
  single(ctx, "long sine graph fails both", [&] {
    const auto r = convex_chebyshev_check(sine_graph(3, 0, 4), probes, ctx.cfg.seed);
    return flag_record("", !r.convexity.passed() && !r.chebyshev.passed() && r.witnesses_consistent);
  });
  const auto base = convex_catalog();
  sweep(ctx, "perturbed", ctx.trials(50), [&](Rng& rng) {
    std::vector<const CurveRd*> pool;
    for (const auto& c : base) {
      if (c.dim() >= 2 && c.dim() <= 4) pool.push_back(&c);
    }
    const CurveRd c = affine_image(*pool[rng.index(pool.size())], rng);
    return agreement_record(c, probes, draw_seed(rng));
  });
}

struct CurveConfig {
  CurveRd curve;
  int n;
};

void verify_theorem5(Ctx& ctx) {
  std::vector<CurveConfig> cfgs;
  if (ctx.has("curve")) {
    cfgs.push_back({curve_from_spec(ctx.str("curve")), ctx.integer("n", 1)});
  } else {
    for (int d : {2, 3}) {
      for (int n : {1, 2}) cfgs.push_back({moment_curve(d, -1, 1), n});
    }
    for (int n : {1, 2}) cfgs.push_back({trig_curve(1), n});
  }
  for (const auto& cc : cfgs) {
    const CurveRd& c = cc.curve;
    const int n = cc.n;
    const Domain& dom = c.domain();
    const QuadSpec quad = quad_for(dom);
    const std::string label = c.label() + " n=" + std::to_string(n);
    const int dim = dimension_estimate(restrict_polynomials(c, n), dom, 512);
    sweep(ctx, label, ctx.trials(100), [&, n, dim](Rng& rng) {
      const int pieces = dim + 1 + static_cast<int>(rng.index(6));
      auto bp = separated_points(rng, dom, dom.is_circle() ? pieces : pieces - 1);
      const auto res = construct_orthogonal_on_curve(c, n, bp, quad, draw_seed(rng));
      const auto r = polynomial_orthogonality_check(c, n, res.function, quad, ctx.cfg.tol);
      return make_record("pieces=" + std::to_string(pieces), r.bound, r.sign_changes, r.status);
    });
    single(ctx, label + " minimal", [&, n, dim] {
      const auto res = construct_orthogonal_on_curve(c, n, dim + 1, quad);
      const auto r = polynomial_orthogonality_check(c, n, res.function, quad, ctx.cfg.tol);
      if (r.status != CheckStatus::Pass) return make_record("", r.bound, r.sign_changes, r.status);
      return c.closed() ? bound_record("", r.bound, r.sign_changes)
                        : exact_record("", r.bound, r.sign_changes);
    });
  }
  if (!ctx.has("curve")) {
    sweep(ctx, "support product moment:3", ctx.trials(100) / 5 + 1, [&](Rng& rng) {
      const CurveRd c = moment_curve(3, -1, 1);
      const int k = 1 + static_cast<int>(rng.index(6));
      const auto pts = separated_points(rng, c.domain(), k);
      const auto sp = support_product_polynomial(c, pts, 3);
      return exact_record("points=" + fmt_list(pts), k, sp.restricted.count);
    });
  }
}

void verify_theorem6(Ctx& ctx) {
  std::vector<int> ns{1, 2}, ks{8, 12, 16};
  if (ctx.has("n")) ns = {ctx.integer("n", 1)};
  if (ctx.has("k")) ks = {ctx.integer("k", 12)};
  for (int n : ns) {
    for (int k : ks) {
      require(n >= 0 && k >= 3, "need n >= 0 and k >= 3");
      sweep(ctx, "n=" + std::to_string(n) + " k=" + std::to_string(k), ctx.trials(1000),
            [&, n, k](Rng& rng) {
              const PolyLine p = random_convex_polygon(k, draw_seed(rng));
              const auto f = construct_masses(p, n, draw_seed(rng));
              const auto r = polyline_moment_sign_check(p, n, f, kMassResidualTol);
              return make_record("residual=" + fmt(r.max_residual), r.bound, r.sign_changes, r.status);
            });
    }
  }
}

void verify_prop1(Ctx& ctx) {
  std::vector<CurveRd> curves;
  if (ctx.has("curve")) {
    curves.push_back(curve_from_spec(ctx.str("curve")));
  } else {
    curves = {trig_curve(1), moment_curve(2, -1, 1), moment_curve(3, -1, 1), exp_graph(),
              smoothed_polygon(5, 1.0), oval_to_curve(random_oval(3, 0.5, ctx.cfg.seed))};
  }
  sweep(ctx, "densities", ctx.trials(100), [&](Rng& rng) {
    const CurveRd& c = curves[rng.index(curves.size())];
    const Domain& dom = c.domain();
    const QuadSpec quad = quad_for(dom);
    const int pieces = c.dim() + 2 + static_cast<int>(rng.index(4));
    const auto res = construct_orthogonal_on_curve(c, 1, pieces, quad, draw_seed(rng));
    const Func1D speed = arc_speed(c);
    const Func1D bump = res.function;
    double mx = 0.0;
    for (double t : sample_grid(dom, kDefaultGrid)) mx = std::max(mx, std::abs(bump(t) / speed(t)));
    const double eps = 0.5 / mx;
    std::vector<double> kinks(bump.kinks().begin(), bump.kinks().end());
    const bool relative = rng.index(2) == 1;
    const double w = dom.is_circle() ? 1.0 + static_cast<double>(rng.index(3)) : rng.uniform(0.5, 3.0);
    const double ph = rng.uniform(0.0, kTwoPi);
    const Func1D g = relative ? Func1D([w, ph](double t) { return 2.0 + std::sin(w * t + ph); })
                              : Func1D::constant(1.0);
    const Func1D f([g, bump, speed, eps](double t) { return g(t) + eps * bump(t) / speed(t); },
                   "density", kinks);
    const auto r = relative ? center_extrema_check(c, f, g, quad, ctx.cfg.tol)
                            : center_extrema_check(c, f, quad, ctx.cfg.tol);
    return make_record(c.label() + (relative ? " relative" : "") + " pieces=" + std::to_string(pieces),
                       r.bound, r.extrema, r.status);
  });
}

void verify_prop2(Ctx& ctx) {
  const bool file = ctx.has("polygon");
  const PolyLine fixed = file ? read_polyline_file(ctx.str("polygon")) : PolyLine{};
  sweep(ctx, "mass pairs", ctx.trials(200), [&](Rng& rng) {
    const PolyLine p = file ? fixed : random_convex_polygon(5 + static_cast<int>(rng.index(12)), draw_seed(rng));
    std::vector<double> f(p.size());
    for (auto& x : f) x = rng.uniform(0.5, 1.5);
    const auto m = construct_masses(p, 1, draw_seed(rng));
    double mx = 0.0;
    for (double x : m) mx = std::max(mx, std::abs(x));
    std::vector<double> g(f);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += 0.4 * m[i] / mx;
    const auto r = equal_center_masses_check(p, g, f, 1e-9);
    return make_record("k=" + std::to_string(p.size()), r.bound, r.sign_changes, r.status);
  });
}

InstanceRecord oval_record(const OvalSupport& o, const std::string& what) {
  const auto v = four_vertex_check(o);
  const double res = verify_R_orthogonality(o, quad_for(Domain::circle())).max_abs();
  const auto center = center_extrema_check(trig_curve(1), radius_of_curvature(o),
                                           quad_for(Domain::circle()), 1e-8);
  InstanceRecord r = make_record(what + " residual=" + fmt(res), 4, v.extrema, v.status);
  if (r.status == "pass" && (res > 1e-10 || center.status != CheckStatus::Pass)) r.status = "fail";
  return r;
}

void verify_fourvertex(Ctx& ctx) {
  if (ctx.has("oval")) {
    const OvalSupport o = read_oval_file(ctx.str("oval"));
    single(ctx, "oval file", [&] { return oval_record(o, ""); });
    return;
  }
  const int harmonics = ctx.integer("harmonics", 0);
  sweep(ctx, "random ovals", ctx.trials(500), [&](Rng& rng) {
    const int m = harmonics > 0 ? harmonics : 2 + static_cast<int>(rng.index(5));
    const double amp = rng.uniform(0.05, 0.95);
    return oval_record(random_oval(m, amp, draw_seed(rng)),
                       "M=" + std::to_string(m) + " amplitude=" + fmt(amp));
  });
  single(ctx, "h=1+0.1cos2a exact", [&] {
    OvalSupport o;
    o.coeffs = {{0, 0}, {0.1, 0}};
    return exact_record("", 4, four_vertex_check(o).extrema);
  });
}

void verify_blaschke(Ctx& ctx) {
  if (ctx.has("oval")) {
    const OvalSupport o1 = read_oval_file(ctx.str("oval"));
    const OvalSupport o2 = ctx.has("oval2") ? read_oval_file(ctx.str("oval2")) : OvalSupport{};
    single(ctx, "oval files", [&] {
      const auto r = curvature_ratio_check(o1, o2);
      return make_record(r.note, 4, r.extrema, r.status);
    });
    return;
  }
  sweep(ctx, "random pairs", ctx.trials(200), [&](Rng& rng) {
    const OvalSupport o1 = random_oval(2 + static_cast<int>(rng.index(5)), rng.uniform(0.05, 0.9), draw_seed(rng));
    const OvalSupport o2 = random_oval(2 + static_cast<int>(rng.index(5)), rng.uniform(0.05, 0.9), draw_seed(rng));
    const auto r = curvature_ratio_check(o1, o2);
    const bool same = curvature_ratio_check(o1, OvalSupport{}).extrema == four_vertex_check(o1).extrema;
    InstanceRecord rec = make_record("", 4, r.extrema, r.status);
    if (rec.status == "pass" && !same) {
      rec.status = "fail";
      rec.instance = "circle reference disagrees with the vertex count";
    }
    return rec;
  });
}

void verify_aleksandrov(Ctx& ctx) {
  if (ctx.has("polygon") && ctx.has("polygon2")) {
    const PolyLine a = read_polyline_file(ctx.str("polygon"));
    const PolyLine b = read_polyline_file(ctx.str("polygon2"));
    single(ctx, "polygon files", [&] {
      const auto r = parallel_sides_check(a, b, ctx.cfg.tol);
      return make_record(r.note, 4, r.sign_changes, r.status);
    });
    return;
  }
  const int fixed_k = ctx.integer("k", 0);
  sweep(ctx, "shared fan pairs", ctx.trials(200), [&](Rng& rng) {
    const int k = fixed_k > 0 ? fixed_k : 4 + static_cast<int>(rng.index(13));
    const auto [a, b] = random_shared_fan_pair(k, draw_seed(rng));
    const auto r = parallel_sides_check(a, b, 1e-9);
    InstanceRecord rec = make_record("k=" + std::to_string(k), 4, r.sign_changes, r.status);
    if (rec.status == "pass" && r.normal_polygon.status != CheckStatus::Pass) rec.status = "fail";
    return rec;
  });
  single(ctx, "rectangle vs square exact", [&] {
    auto u = [](double x, double y) {
      Point p(2);
      p << x, y;
      return p;
    };
    const std::vector<Point> normals{u(0, -1), u(1, 0), u(0, 1), u(-1, 0)};
    const std::vector<double> l1{2, 1, 2, 1}, l2{1.5, 1.5, 1.5, 1.5};
    const auto r = parallel_sides_check(polygon_from_normals(normals, l1),
                                        polygon_from_normals(normals, l2), 1e-9);
    return exact_record("", 4, r.sign_changes);
  });
}

void verify_example1(Ctx& ctx) {
  const int m = ctx.integer("m", 6);
  require(m >= 3 && m <= 64, "--m must lie in [3, 64]");
  const CurveRd k = smoothed_polygon(m, 1.0);
  const auto basis = restrict_polynomials(k, 2);
  single(ctx, "circle meets the smoothed polygon", [&] {
    const double r = intermediate_radius(k);
    const Polynomial circle = polynomial_from_coeffs(2, 2, std::vector<double>{-r * r, 0, 0, 1, 0, 1});
    const Func1D on_k([k, circle](double t) { return circle(k(t)); }, "circle", {k.kinks().begin(), k.kinks().end()});
    ctx.rep.details["radius"] = r;
    return exact_record("radius=" + fmt(r), 2 * m, count_sign_changes(on_k, k.domain(), ctx.cfg.grid).count);
  });
  single(ctx, "degree-2 restriction is not Chebyshev", [&] {
    const auto v = verify_chebyshev(basis, k.domain(), ctx.trials(500), ctx.cfg.seed);
    return flag_record("probe=" + v.probe, !v.passed());
  });
  single(ctx, "curve is convex", [&] {
    return flag_record("", convexity_check(k, ctx.trials(500), ctx.cfg.seed).passed());
  });
}

void verify_example2(Ctx& ctx) {
  const double c = ctx.real("c", 10.0), a = ctx.real("a", 1.0), b = ctx.real("b", 5.0);
  const CurveRd k = sine_graph(c, a, b);
  for (int n : {1, 2}) {
    single(ctx, "homogeneous degree " + std::to_string(n) + " restriction is Chebyshev", [&, n] {
      const auto v = verify_chebyshev(restrict_polynomials(k, n, true), k.domain(), ctx.trials(500), ctx.cfg.seed);
      return flag_record("", v.passed());
    });
  }
  single(ctx, "graph is not convex", [&] {
    const auto v = convexity_check(k, ctx.trials(500), ctx.cfg.seed);
    return InstanceRecord{"", 2, v.witness_count, v.passed() == (b - a <= std::numbers::pi) ? "pass" : "fail"};
  });
}

void verify_example5(Ctx& ctx) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  const double p2[] = {r2, r3};
  single(ctx, "power curve (t^sqrt2, t^sqrt3)", [&] {
    return agreement_record(power_curve(p2, 1, 2), ctx.trials(500), ctx.cfg.seed);
  });
  single(ctx, "power curve is convex", [&] {
    return flag_record("", convexity_check(power_curve(p2, 1, 2), ctx.trials(500), ctx.cfg.seed).passed());
  });
}

void verify_example6(Ctx& ctx) {
  const CurveRd k = exp_graph(ctx.real("a", -1.0), ctx.real("b", 1.0));
  const QuadSpec quad = quad_for(k.domain());
  for (int n : {1, 2}) {
    single(ctx, "dimension n=" + std::to_string(n), [&, n] {
      const auto basis = restrict_polynomials(k, n);
      return exact_record("", (n + 1) * (n + 2) / 2,
                          dimension_estimate(basis, k.domain(), std::max<int>(1024, 4 * basis.size())));
    });
  }
  single(ctx, "degree-2 restriction is Chebyshev", [&] {
    return flag_record("", verify_chebyshev(restrict_polynomials(k, 2), k.domain(), 200, ctx.cfg.seed).passed());
  });
  sweep(ctx, "orthogonal n=2", ctx.trials(20), [&](Rng& rng) {
    const int pieces = 7 + static_cast<int>(rng.index(5));
    const auto res = construct_orthogonal_on_curve(k, 2, pieces, quad, draw_seed(rng));
    const auto r = polynomial_orthogonality_check(k, 2, res.function, quad, ctx.cfg.tol);
    InstanceRecord rec = bound_record("pieces=" + std::to_string(pieces), 6, r.sign_changes);
    if (r.status == CheckStatus::NotApplicable || r.status == CheckStatus::Degenerate) {
      rec.status = std::string(to_string(r.status));
    }
    return rec;
  });
}

// ---------------------------------------------------------------- synth

std::vector<double> list_option(const Ctx& ctx, const std::string& k) {
  return ctx.has(k) ? parse_list(ctx.str(k), k) : std::vector<double>{};
}

void synth_ortho(Ctx& ctx) {
  require(ctx.has("system"), "synth ortho needs --system");
  const ChebSystem sys = system_from_spec(ctx.str("system"), ctx.interval());
  const auto pts = list_option(ctx, "points");
  ctx.rep.details["system"] = sys.label();
  const auto res = synth_orthogonal(sys, pts, quad_for(sys.domain()));
  ctx.rep.details["points"] = pts;
  ctx.rep.details["heights"] = res.step.heights;
  ctx.rep.details["residuals"] = res.residuals;
  ctx.rep.details["max_residual"] = res.max_residual();
  ctx.rep.details["sign_changes"] = res.sign_report.locations;
  ctx.rep.details["table"] = samples_table(res.function, sys.domain(), ctx.integer("samples", 257), "F");
  InstanceRecord r = exact_record(sys.label(), m_of(sys.domain(), sys.order()), res.sign_report.count);
  if (res.max_residual() > ctx.cfg.tol) r.status = "fail";
  ctx.rep.records.push_back(r);
}

void synth_weight_cmd(Ctx& ctx) {
  require(ctx.has("system") && ctx.has("func"), "synth weight needs --system and --func");
  const ChebSystem sys = system_from_spec(ctx.str("system"), ctx.interval());
  const Func1D f = func_from_spec(ctx.str("func"));
  const auto res = synth_weight(sys, f, quad_for(sys.domain()));
  ctx.rep.details["system"] = sys.label();
  ctx.rep.details["narrowed"] = res.narrowed;
  ctx.rep.details["breakpoints"] = res.step.breakpoints;
  ctx.rep.details["heights"] = res.step.heights;
  ctx.rep.details["residuals"] = res.residuals;
  ctx.rep.details["max_residual"] = res.max_residual();
  ctx.rep.details["table"] = samples_table(res.function, sys.domain(), ctx.integer("samples", 257), "rho");
  InstanceRecord r = bound_record(sys.label(), m_of(sys.domain(), sys.order()), res.sign_report.count);
  if (res.max_residual() > ctx.cfg.tol) r.status = "fail";
  ctx.rep.records.push_back(r);
}

void synth_masses(Ctx& ctx) {
  const int n = ctx.integer("n", 1);
  Rng rng(ctx.cfg.seed);
  const PolyLine p = ctx.has("polygon") ? read_polyline_file(ctx.str("polygon"))
                                        : random_convex_polygon(ctx.integer("k", 12), draw_seed(rng));
  const auto f = construct_masses(p, n, draw_seed(rng));
  const auto r = polyline_moment_sign_check(p, n, f, kMassResidualTol);
  ctx.rep.details["masses"] = f;
  ctx.rep.details["max_residual"] = r.max_residual;
  if (!r.note.empty()) ctx.rep.details["note"] = r.note;
  ojson t;
  t["columns"] = {"vertex", "mass"};
  t["rows"] = ojson::array();
  for (int i = 0; i < p.size(); ++i) t["rows"].push_back({i, f[i]});
  ctx.rep.details["table"] = t;
  ctx.rep.records.push_back(make_record("k=" + std::to_string(p.size()), r.bound, r.sign_changes, r.status));
}

void synth_annihilator(Ctx& ctx) {
  require(ctx.has("system"), "synth annihilator needs --system");
  const ChebSystem sys = system_from_spec(ctx.str("system"), ctx.interval());
  RootPrescription rp{list_option(ctx, "simple"), list_option(ctx, "double")};
  const auto res = general_annihilator(sys, rp);
  ctx.rep.details["system"] = sys.label();
  ctx.rep.details["coeffs"] = res.coeffs;
  ctx.rep.details["sign_changes"] = res.sign_report.locations;
  ctx.rep.details["min_abs_away"] = res.min_abs_away;
  ctx.rep.details["table"] = samples_table(res.combination, sys.domain(), ctx.integer("samples", 257), "phi");
  ctx.rep.records.push_back(exact_record(sys.label(), rp.q(), res.sign_report.count));
}

// ---------------------------------------------------------------- curve

void curve_convexity(Ctx& ctx) {
  require(ctx.has("curve"), "curve convexity needs --curve");
  const CurveRd c = curve_from_spec(ctx.str("curve"));
  const auto v = convexity_check(c, ctx.trials(500), ctx.cfg.seed);
  ctx.rep.details["curve"] = c.label();
  ctx.rep.details["verdict"] = v.passed() ? "NoViolationFound" : "Counterexample";
  ctx.rep.details["max_count_seen"] = v.max_count_seen;
  ctx.rep.details["probe_trials"] = v.trials_run;
  if (v.witness) {
    ctx.rep.details["witness"] = {{"normal", to_std(Vector(v.witness->normal))},
                                  {"offset", v.witness->offset},
                                  {"count", v.witness_count}};
  }
  ctx.rep.records.push_back({c.label() + (v.passed() ? " convex" : " not convex"), c.dim(),
                             v.passed() ? v.max_count_seen : v.witness_count, "pass"});
}

void curve_dimension(Ctx& ctx) {
  require(ctx.has("curve"), "curve dimension needs --curve");
  const CurveRd c = curve_from_spec(ctx.str("curve"));
  const int n = ctx.integer("n", 1);
  const bool homog = ctx.str("homogeneous", "false") != "false";
  const auto basis = restrict_polynomials(c, n, homog);
  const int dim = dimension_estimate(basis, c.domain(), std::max<int>(1024, 4 * basis.size()));
  ctx.rep.details["curve"] = c.label();
  ctx.rep.details["monomials"] = basis.size();
  ctx.rep.details["dimension"] = dim;
  ctx.rep.records.push_back({c.label() + " n=" + std::to_string(n), static_cast<int>(basis.size()), dim, "pass"});
}

// ---------------------------------------------------------------- dispatch

using Command = void (*)(Ctx&);

const std::vector<std::pair<std::string, Command>>& verify_table() {
  static const std::vector<std::pair<std::string, Command>> t{
      {"assertion1", verify_assertion1}, {"hurwitz", verify_hurwitz},
      {"theorem1", verify_theorem1},     {"theorem3-sharpness", verify_theorem3},
      {"theorem4", verify_theorem4},     {"theorem5", verify_theorem5},
      {"theorem6", verify_theorem6},     {"prop1", verify_prop1},
      {"prop2", verify_prop2},           {"fourvertex", verify_fourvertex},
      {"blaschke", verify_blaschke},     {"aleksandrov", verify_aleksandrov},
      {"example1", verify_example1},     {"example2", verify_example2},
      {"example5", verify_example5},     {"example6", verify_example6}};
  return t;
}

const std::vector<std::pair<std::string, Command>>& synth_table() {
  static const std::vector<std::pair<std::string, Command>> t{{"ortho", synth_ortho},
                                                              {"weight", synth_weight_cmd},
                                                              {"masses", synth_masses},
                                                              {"annihilator", synth_annihilator}};
  return t;
}

const std::vector<std::pair<std::string, Command>>& curve_table() {
  static const std::vector<std::pair<std::string, Command>> t{{"convexity", curve_convexity},
                                                              {"dimension", curve_dimension}};
  return t;
}

const std::vector<std::pair<std::string, Command>>* table_for(const std::string& verb) {
  if (verb == "verify") return &verify_table();
  if (verb == "synth") return &synth_table();
  if (verb == "curve") return &curve_table();
  return nullptr;
}

void verify_all(Ctx& ctx) {
  for (const auto& [name, fn] : verify_table()) {
    const std::size_t before = ctx.rep.records.size();
    RunConfig sub = ctx.cfg;
    sub.options.clear();
    Ctx inner{sub, ctx.rep, ctx.block};
    fn(inner);
    ctx.block = inner.block;
    for (std::size_t i = before; i < ctx.rep.records.size(); ++i) {
      ctx.rep.records[i].instance = name + ": " + ctx.rep.records[i].instance;
    }
  }
}

}  // namespace

std::vector<std::string> subcommands(const std::string& verb) {
  std::vector<std::string> out;
  if (const auto* t = table_for(verb)) {
    for (const auto& e : *t) out.push_back(e.first);
  }
  if (verb == "verify") out.push_back("all");
  return out;
}

RunReport run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = config.verb + " " + config.subject;
  rep.seed = config.seed;
  rep.details["blocks"] = ojson::array();
  Ctx ctx{config, rep};
  try {
    const auto* table = table_for(config.verb);
    if (!table) invalid_input("unknown command verb '" + config.verb + "' (expected verify, synth or curve)");
    Command fn = nullptr;
    for (const auto& [name, f] : *table) {
      if (name == config.subject) fn = f;
    }
    if (config.verb == "verify" && config.subject == "all") fn = verify_all;
    if (!fn) invalid_input("unknown subcommand '" + rep.command + "'");
    fn(ctx);
  } catch (const Error& e) {
    rep.error = e.what();
  }
  if (rep.details["blocks"].empty()) rep.details.erase("blocks");

  for (const auto& r : rep.records) {
    if (r.status == "pass") {
      ++rep.pass_count;
    } else if (r.status == "fail" || r.status == "error") {
      ++rep.fail_count;
    } else {
      ++rep.not_applicable_count;
    }
  }
  rep.trials_run = static_cast<int>(rep.records.size());
  if (rep.fail_count > 0) {
    rep.exit_code = 1;
  } else if (!rep.error.empty() || rep.not_applicable_count > 0) {
    rep.exit_code = 2;
  }
  if (config.timing) {
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

}  // namespace chebz

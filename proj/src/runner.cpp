/*
 * Copyright 2026 The symplab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "symplab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "symplab/errors.hpp"
#include "symplab/hamalg.hpp"
#include "symplab/hamdsl.hpp"
#include "symplab/liouville.hpp"
#include "symplab/monodromy.hpp"
#include "symplab/orbits.hpp"
#include "symplab/pde.hpp"

namespace symplab {

namespace {

using json = nlohmann::json;

double num_or(const Section& s, const char* key, double fallback) {
  const Entry* e = s.find(key);
  return e ? entry_number(*e) : fallback;
}

long long int_or(const Section& s, const char* key, long long fallback) {
  const Entry* e = s.find(key);
  return e ? entry_integer(*e) : fallback;
}

bool bool_or(const Section& s, const char* key, bool fallback) {
  const Entry* e = s.find(key);
  return e ? entry_bool(*e) : fallback;
}

std::string word_or(const Section& s, const char* key, const std::string& fallback) {
  const Entry* e = s.find(key);
  return e ? e->value : fallback;
}

std::vector<double> numbers(const Entry& e) {
  std::vector<double> out;
  Entry tmp = e;
  for (const auto& v : entry_list(e)) {
    tmp.value = v;
    out.push_back(entry_number(tmp));
  }
  return out;
}

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : INFINITY;
  auto one = [](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0.0;
    for (double u : x) {
      double best = INFINITY;
      for (double v : y) best = std::min(best, std::abs(u - v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one(a, b), one(b, a));
}

std::vector<double> actions(const SpectrumTable& t) {
  std::vector<double> out;
  for (const auto& e : t.entries) out.push_back(e.base_action);
  return out;
}

// Objects named in a scenario, built on first use.
class Builder {
 public:
  Builder(const Scenario& sc, FlowOptions fo) : sc_(sc), m_(sc.manifold()), fo_(fo) {}

  const Manifold& manifold() const { return m_; }
  const FlowOptions& flow_options() const { return fo_; }

  PathPtr path(const std::string& name) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto it = paths_.find(name); it != paths_.end()) return it->second;
    const Section* s = sc_.find("hamiltonian", name);
    PathPtr out;
    if (s) {
      auto p = std::const_pointer_cast<HamPath>(make_path(Hamiltonian::parse(s->find("expr")->value, m_), fo_));
      p->set_tag(certify_normalization(*p));
      out = p;
    } else {
      s = sc_.find("composite", name);
      const std::string op = s->find("op")->value;
      const auto args = entry_list(*s->find("args"));
      if (op == "sharp") out = sharp(path(args[0]), path(args[1]));
      else if (op == "bar") out = bar(path(args[0]));
      else if (op == "reparam") out = reparam(path(args[0]), profile(*s, 1.0));
      else if (op == "shift") out = shift(path(args[0]), num_or(*s, "constant", 0.0));
      else out = normalize_mean_zero(path(args[0]), default_quadrature(m_));
    }
    paths_[name] = out;
    return out;
  }

  IsotopyFamily family(const std::string& name) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto it = families_.find(name); it != families_.end()) return it->second;
    const Section& s = *sc_.find("family", name);
    const int size = static_cast<int>(int_or(s, "size", 33));
    const std::string kind = word_or(s, "kind", s.find("expr") ? "expr" : "reparam");
    IsotopyFamily fam;
    if (kind == "expr") {
      fam = expression_family(Hamiltonian::parse(s.find("expr")->value, m_, {"s"}), "s", fo_, size);
    } else {
      const PathPtr base = path(s.find("base")->value);
      const bool sine = word_or(s, "profile", "sine") == "sine";
      const double a = num_or(s, "amplitude", 0.5);
      const double c = num_or(s, "shift_rate", 0.0);
      fam.m = m_;
      fam.s_points = size;
      fam.member = [base, sine, a, c](double sv) {
        PathPtr p = reparam(base, sine ? ReparamProfile::sine(sv * a) : ReparamProfile::reversed(sv * a));
        return c != 0.0 ? shift(p, c * sv) : p;
      };
      // d/ds of r_s(t) B(x, lambda_s(t)) + c s.
      fam.dF_ds = [base, sine, a, c](Point p, double t, double sv) {
        const double sn = std::sin(kTwoPi * t), cs = std::cos(kTwoPi * t);
        const double lam = sine ? t + sv * a * sn / kTwoPi : 0.5 * sv * a * (1.0 - cs);
        const double rate = sine ? 1.0 + sv * a * cs : sv * a * kPi * sn;
        const double dlam = sine ? a * sn / kTwoPi : 0.5 * a * (1.0 - cs);
        const double drate = sine ? a * cs : a * kPi * sn;
        const double d = 1e-5;
        const double bt = (base->value(p, lam + d) - base->value(p, lam - d)) / (2.0 * d);
        return drate * base->value(p, lam) + rate * bt * dlam + c;
      };
    }
    fam.name = name;
    families_[name] = fam;
    return fam;
  }

  std::pair<HamLoop, Lift> loop(const std::string& name) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto it = loops_.find(name); it != loops_.end()) return it->second;
    const Section& s = *sc_.find("loop", name);
    const std::string kind = s.find("kind")->value;
    HamLoop h;
    Lift lift;
    if (kind == "generator") {
      h.generator = path(s.find("generator")->value);
      if (const Entry* c = s.find("contraction")) h.contraction = family(c->value);
      if (word_or(s, "lift", "basepoint") == "basepoint") {
        const auto b = numbers(*s.find("basepoint"));
        lift.mode = Lift::Mode::BasepointCapping;
        lift.basepoint = {b[0], b[1]};
        lift.base_area = num_or(s, "base_area", 0.0);
        lift.sheet = int_or(s, "sheet", 0);
      }
    } else if (kind == "family") {
      const IsotopyFamily fam = family(s.find("family")->value);
      h.generator = fam.at(1.0);
      h.contraction = fam;
    } else if (kind == "product") {
      const auto f = entry_list(*s.find("factors"));
      const auto [h1, l1] = loop(f[0]);
      const auto [h2, l2] = loop(f[1]);
      h = product_loop(h1, h2);
      lift = product_lift(h1, l1, h2, l2);
    } else {
      h = identity_loop(m_, fo_);
    }
    h.name = name;
    loops_[name] = {h, lift};
    return loops_[name];
  }

 private:
  static ReparamProfile profile(const Section& s, double scale) {
    const double a = num_or(s, "amplitude", 0.5) * scale;
    return word_or(s, "profile", "sine") == "sine" ? ReparamProfile::sine(a) : ReparamProfile::reversed(a);
  }

  const Scenario& sc_;
  Manifold m_;
  FlowOptions fo_;
  std::recursive_mutex mu_;
  std::map<std::string, PathPtr> paths_;
  std::map<std::string, IsotopyFamily> families_;
  std::map<std::string, std::pair<HamLoop, Lift>> loops_;
};

struct Context {
  const Scenario& sc;
  Builder& b;
  std::uint64_t seed;
};

struct Check {
  json report = json::object();
  std::string csv;
  double residual = 0.0, tolerance = 0.0;
  bool pass = false;
};

std::string point_csv(Point p) { return format_double(p.q1) + "," + format_double(p.q2); }

Check task_spectrum(const Section& t, Context& c) {
  const PathPtr h = c.b.path(t.find("hamiltonian")->value);
  SpectrumOptions o;
  o.search.seeds = static_cast<int>(int_or(t, "seeds", 64));
  o.samples = static_cast<int>(int_or(t, "samples", 256));
  o.allow_unnormalized = bool_or(t, "allow_unnormalized", false);
  const SpectrumTable tab = spectrum(*h, o);
  Check r;
  r.csv = spectrum_csv(tab);
  r.tolerance = num_or(t, "tolerance", 1e-6);
  json entries = json::array();
  for (const auto& e : tab.entries)
    entries.push_back({{"id", e.id},
                       {"p", {e.p.q1, e.p.q2}},
                       {"base_action", e.base_action},
                       {"coset_generator", e.generator},
                       {"family", e.family},
                       {"members", e.members}});
  r.report["entries"] = entries;
  r.report["fixed_points"] = {{"seeds", tab.fixed_points.seeds},
                              {"converged", tab.fixed_points.converged},
                              {"dropped", tab.fixed_points.dropped},
                              {"prescreened", tab.fixed_points.prescreened},
                              {"noncontractible", tab.fixed_points.noncontractible},
                              {"stationary", tab.fixed_points.stationary},
                              {"distinct", tab.fixed_points.points.size()}};
  r.pass = true;
  if (const Entry* e = t.find("expect")) {
    const std::vector<double> want = numbers(*e);
    r.residual = hausdorff(want, actions(tab));
    r.report["expected_actions"] = want;
    r.report["count_matches"] = want.size() == tab.entries.size();
    r.pass = r.residual < r.tolerance && want.size() == tab.entries.size();
  }
  if (const Entry* e = t.find("expect_generator")) {
    const double g = entry_number(*e);
    for (const auto& en : tab.entries) r.pass = r.pass && std::abs(en.generator - g) < r.tolerance;
    r.report["expected_generator"] = g;
  }
  return r;
}

Check task_monodromy(const Section& t, Context& c) {
  const auto [h, lift] = c.b.loop(t.find("loop")->value);
  check_loop(h, 100, c.seed);
  const int n = static_cast<int>(int_or(t, "basepoints", 10));
  const MonodromyResult m = monodromy_analyze(h, lift, n, c.seed);
  Check r;
  r.csv = "basepoint_q1,basepoint_q2,value\n";
  for (std::size_t i = 0; i < m.values.size(); ++i)
    r.csv += point_csv(m.basepoints[i]) + "," + format_double(m.values[i]) + "\n";
  r.tolerance = num_or(t, "tolerance", 1e-6);
  r.report["value"] = m.mean;
  r.report["spread"] = m.spread;
  r.report["spread_tolerance"] = 1e-4;
  r.report["basepoints"] = n;
  r.report["lift"] = lift.mode == Lift::Mode::BasepointCapping ? "basepoint" : "canonical";
  const bool spread_ok = m.spread < 1e-4;
  if (const Entry* e = t.find("expect")) {
    const double want = entry_number(*e);
    r.residual = std::abs(m.mean - want);
    r.report["expected"] = want;
    r.pass = spread_ok && r.residual < r.tolerance;
  } else {
    r.residual = m.spread;
    r.tolerance = 1e-4;
    r.pass = spread_ok;
  }
  return r;
}

Check task_homomorphism(const Section& t, Context& c) {
  const auto names = entry_list(*t.find("loops"));
  const auto [h1, l1] = c.b.loop(names[0]);
  const auto [h2, l2] = c.b.loop(names[1]);
  check_loop(h1, 100, c.seed);
  check_loop(h2, 100, c.seed);
  Check r;
  r.tolerance = num_or(t, "tolerance", 1e-4);
  const int n = static_cast<int>(int_or(t, "basepoints", 10));
  const HomomorphismResult hr = verify_homomorphism(h1, l1, h2, l2, r.tolerance, n, c.seed);
  r.residual = hr.residual;
  r.pass = hr.pass;
  r.csv = "loop,value\n" + names[0] + "," + format_double(hr.i1) + "\n" + names[1] + "," + format_double(hr.i2) +
          "\n" + names[1] + "*" + names[0] + "," + format_double(hr.i12) + "\n";
  r.report["i1"] = hr.i1;
  r.report["i2"] = hr.i2;
  r.report["i12"] = hr.i12;
  if (const Entry* e = t.find("expect")) {
    const double want = entry_number(*e);
    r.report["expected"] = want;
    r.report["expected_residual"] = std::abs(hr.i12 - want);
    r.pass = r.pass && std::abs(hr.i12 - want) < r.tolerance;
  }
  return r;
}

Check task_lemma23(const Section& t, Context& c) {
  const IsotopyFamily fam = c.b.family(t.find("family")->value);
  const double endpoint = check_same_endpoints(fam, 50, c.seed, 1e-5);
  Lemma23Options o;
  o.probes = static_cast<int>(int_or(t, "probes", 10));
  o.directions = static_cast<int>(int_or(t, "directions", 20));
  o.epsilon = num_or(t, "epsilon", 1e-3);
  o.seed = c.seed;
  const Lemma23Result l = lemma23_analyze(fam, o);
  Check r;
  r.tolerance = num_or(t, "tolerance", 1e-4);
  r.residual = l.stddev;
  r.csv = "probe,shift\n";
  for (std::size_t i = 0; i < l.shifts.size(); ++i)
    r.csv += std::to_string(i) + "," + format_double(l.shifts[i]) + "\n";
  r.report["shift"] = l.mean;
  r.report["stddev"] = l.stddev;
  r.report["variational_residual"] = l.variational_residual;
  r.report["probes"] = l.shifts.size();
  r.report["directions"] = l.variational.size();
  r.report["endpoint_distance"] = endpoint;
  r.pass = l.stddev < r.tolerance && l.variational_residual < r.tolerance;
  if (const Entry* e = t.find("expect")) {
    const double want = entry_number(*e);
    r.report["expected"] = want;
    r.pass = r.pass && std::abs(l.mean - want) < r.tolerance;
  }
  return r;
}

Check task_theorem1(const Section& t, Context& c) {
  const IsotopyFamily fam = c.b.family(t.find("family")->value);
  const double endpoint = check_same_endpoints(fam, 50, c.seed);
  const bool allow = bool_or(t, "allow_unnormalized", false);
  const PathPtr f0 = fam.at(0.0), f1 = fam.at(1.0);
  if (!allow)
    for (const PathPtr& p : {f0, f1})
      if (certify_normalization(*p) == NormalizationTag::Unchecked)
        fail(ErrorCode::NotNormalized, "family '" + fam.name + "' has an unnormalized end member");
  SpectrumOptions o;
  o.search.seeds = static_cast<int>(int_or(t, "seeds", 48));
  o.allow_unnormalized = true;
  const SpectrumTable t0 = spectrum(*f0, o), t1 = spectrum(*f1, o);
  const int nt = static_cast<int>(int_or(t, "t_points", 64));
  Check r;
  r.csv = "orbit_id,s,chi\n";
  double drift = 0.0;
  json orbits = json::array();
  for (const auto& e : t0.entries) {
    if (e.id == "exterior") continue;
    const PeriodicOrbit orbit = build_orbit(*f0, e.p);
    const Capping cap = canonical_capping(fam.m, orbit.samples);
    const Theorem1Result th = verify_theorem1(fam, orbit, cap, nt);
    for (std::size_t j = 0; j < th.s.size(); ++j)
      r.csv += e.id + "," + format_double(th.s[j]) + "," + format_double(th.chi[j]) + "\n";
    drift = std::max(drift, th.drift);
    orbits.push_back({{"id", e.id}, {"chi0", th.chi.front()}, {"drift", th.drift}});
  }
  const double hd = hausdorff(actions(t0), actions(t1));
  r.report["orbits"] = orbits;
  r.report["s_points"] = fam.s_points;
  r.report["drift"] = drift;
  r.report["hausdorff"] = hd;
  r.report["hausdorff_tolerance"] = 1e-4;
  r.report["endpoint_distance"] = endpoint;
  r.report["actions_s0"] = actions(t0);
  r.report["actions_s1"] = actions(t1);
  if (const Entry* e = t.find("expect_drift")) {
    const double want = entry_number(*e);
    r.tolerance = num_or(t, "tolerance", 1e-3);
    r.residual = std::abs(drift - want);
    r.report["expected_drift"] = want;
    r.pass = r.residual < r.tolerance;
  } else {
    r.tolerance = num_or(t, "tolerance", 5e-4);
    r.residual = drift;
    r.pass = drift < r.tolerance && hd < 1e-4;
  }
  return r;
}

Check task_pde36(const Section& t, Context& c) {
  const IsotopyFamily fam = c.b.family(t.find("family")->value);
  Pde36Options o;
  o.t_points = static_cast<int>(int_or(t, "t_points", 129));
  o.base = static_cast<int>(int_or(t, "base", 16));
  const Pde36Result p = pde36_residual(fam, o);
  Check r;
  r.tolerance = num_or(t, "tolerance", 5e-4);
  r.residual = p.residual;
  const double want = num_or(t, "expect_c", 0.0);
  double cdev = 0.0;
  for (double v : p.c) cdev = std::max(cdev, std::abs(v - want));
  std::ostringstream csv;
  csv << "s,t,c,max_residual\n";
  for (int j = 0; j < p.s_points; ++j)
    for (int i = 0; i < p.t_points; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * p.t_points + i;
      csv << format_double(p.s_nodes[j]) << ',' << format_double(p.t_nodes[i]) << ',' << format_double(p.c[k])
          << ',' << format_double(p.max_residual[k]) << '\n';
    }
  r.csv = csv.str();
  r.report["expected_c"] = want;
  r.report["c_deviation"] = cdev;
  r.report["c_tolerance"] = 1e-5;
  r.report["max_abs_c"] = p.max_abs_c;
  r.report["grid"] = {{"s", p.s_points}, {"t", p.t_points}, {"base", o.base}};
  r.pass = p.residual < r.tolerance && cdev < 1e-5;
  return r;
}

Check task_liouville(const Section& t, Context& c) {
  const LiouvilleResult l = liouville_check(c.b.manifold(), static_cast<int>(int_or(t, "pairs", 20)), c.seed);
  Check r;
  r.tolerance = t.find("tolerance") ? entry_number(*t.find("tolerance")) : l.tolerance;
  r.residual = l.worst;
  r.pass = l.worst < r.tolerance && l.support_ok;
  r.csv = "pair,integral\n";
  for (std::size_t i = 0; i < l.pairs.size(); ++i)
    r.csv += std::to_string(i) + "," + format_double(l.pairs[i].integral) + "\n";
  r.report["support_ok"] = l.support_ok;
  json pairs = json::array();
  for (const auto& p : l.pairs) pairs.push_back({{"f", p.f}, {"g", p.g}});
  r.report["pairs"] = pairs;
  return r;
}

std::string status_word(TaskStatus s) {
  switch (s) {
    case TaskStatus::Pass: return "PASS";
    case TaskStatus::VerificationFailed: return "FAIL";
    case TaskStatus::ConfigError: return "ERROR";
    case TaskStatus::NonConvergence: return "NONCONVERGENCE";
  }
  return "?";
}

TaskOutcome run_task(const Section& t, Context& c, const RunOptions& opts, const std::string& digest_base) {
  TaskOutcome out;
  out.name = t.name;
  out.kind = t.find("kind")->value;
  json report;
  report["check"] = out.kind;
  report["task"] = out.name;
  report["inputs_digest"] = hex64(fnv1a64(digest_base + "\ntask=" + out.name));
  report["seed"] = c.seed;
  std::ostringstream line;
  try {
    Check r;
    if (out.kind == "spectrum") r = task_spectrum(t, c);
    else if (out.kind == "monodromy") r = task_monodromy(t, c);
    else if (out.kind == "homomorphism") r = task_homomorphism(t, c);
    else if (out.kind == "lemma23") r = task_lemma23(t, c);
    else if (out.kind == "theorem1") r = task_theorem1(t, c);
    else if (out.kind == "pde36") r = task_pde36(t, c);
    else r = task_liouville(t, c);
    report.update(r.report);
    report["residual"] = r.residual;
    report["tolerance"] = r.tolerance;
    report["pass"] = r.pass;
    out.csv = r.csv;
    out.status = r.pass ? TaskStatus::Pass : TaskStatus::VerificationFailed;
    line << out.name << " [" << out.kind << "] " << status_word(out.status) << " residual=" << format_double(r.residual)
         << " tolerance=" << format_double(r.tolerance);
  } catch (const Error& e) {
    out.status = classify(e.code());
    report["pass"] = false;
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    const std::string code(to_string(e.code()));
    std::string msg = e.what();
    if (msg.rfind(code + ": ", 0) == 0) msg.erase(0, code.size() + 2);
    line << out.name << " [" << out.kind << "] " << status_word(out.status) << " " << code << ": " << msg;
  } catch (const std::exception& e) {
    out.status = TaskStatus::ConfigError;
    report["pass"] = false;
    report["error"] = {{"code", "Internal"}, {"message", e.what()}};
    line << out.name << " [" << out.kind << "] " << status_word(out.status) << " Internal: " << e.what();
  }
  out.report = report.dump(2) + "\n";
  out.summary = line.str();

  namespace fs = std::filesystem;
  auto write = [&](const std::string& file, const std::string& data) {
    std::ofstream f(fs::path(opts.out_dir) / file, std::ios::binary);
    f << data;
    if (!f) {
      out.status = TaskStatus::ConfigError;
      out.summary += " (cannot write " + file + ")";
    }
  };
  write(out.name + ".report.json", out.report);
  if (!out.csv.empty()) write(out.name + ".csv", out.csv);
  return out;
}

int priority(TaskStatus s) {
  switch (s) {
    case TaskStatus::ConfigError: return 3;
    case TaskStatus::NonConvergence: return 2;
    case TaskStatus::VerificationFailed: return 1;
    case TaskStatus::Pass: return 0;
  }
  return 0;
}

}  // namespace

TaskStatus classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence:
    case ErrorCode::NonExactField: return TaskStatus::NonConvergence;
    case ErrorCode::ShiftNotConstant:
    case ErrorCode::BasepointDependent:
    case ErrorCode::EndpointMismatch:
    case ErrorCode::DegenerateIdentity:
    case ErrorCode::NotALoop: return TaskStatus::VerificationFailed;
    default: return TaskStatus::ConfigError;
  }
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opts,
                       const std::function<void(const std::string&)>& on_summary) {
  FlowOptions fo;
  fo.step = opts.step.value_or(sc.settings.step);
  fo.max_iterations = sc.settings.max_iterations;
  if (!(fo.step > 0.0 && fo.step <= 1.0)) throw ConfigError(0, 0, "step must lie in (0, 1]");
  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) throw ConfigError(0, 0, "cannot create output directory '" + opts.out_dir + "'");

  Builder builder(sc, fo);
  Context ctx{sc, builder, opts.seed.value_or(sc.settings.seed)};
  const std::string digest_base =
      sc.text + "\nseed=" + std::to_string(ctx.seed) + "\nstep=" + format_double(fo.step);

  const std::vector<const Section*> tasks = sc.tasks();
  RunResult result;
  result.tasks.resize(tasks.size());
  std::vector<char> done(tasks.size(), 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next++;
      if (i >= tasks.size()) return;
      TaskOutcome o = run_task(*tasks[i], ctx, opts, digest_base);
      std::lock_guard<std::mutex> lock(mu);
      result.tasks[i] = std::move(o);
      done[i] = 1;
      cv.notify_all();
    }
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  if (jobs > 1)
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (jobs == 1) {
      result.tasks[i] = run_task(*tasks[i], ctx, opts, digest_base);
    } else {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return done[i] != 0; });
    }
    if (on_summary) on_summary(result.tasks[i].summary);
  }
  for (auto& th : pool) th.join();

  int worst = 0;
  for (const auto& t : result.tasks) worst = std::max(worst, priority(t.status));
  static const int codes[] = {0, 1, 3, 2};
  result.exit_code = codes[worst];
  return result;
}

}  // namespace symplab

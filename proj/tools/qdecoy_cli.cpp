// Copyright 2026 The qdecoy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qdecoy command-line front end.
//
//   qdecoy curve    --n 4 --points 101
//   qdecoy verify   --n 3 --trials 1000 --seed 1
//   qdecoy simulate --attack "optimal(n=4,g=0.5)" --shots 100000 --seed 9
//   qdecoy optimize --n 2 --g 0.75 --seed 3
//
// Exit codes: 0 success, 1 contract or verification failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdecoy/qdecoy.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kMaxExactN = 64;

using json = nlohmann::ordered_json;

// Raised for anything that should end the process with a given exit code.
struct Exit {
  int code;
  std::string message;
};

struct AttackDeleter {
  void operator()(qd_attack* a) const { qd_attack_free(a); }
};
using AttackPtr = std::unique_ptr<qd_attack, AttackDeleter>;

bool is_usage_status(qd_status s) {
  return s == QD_ERR_INVALID_ARGUMENT || s == QD_ERR_INFEASIBLE || s == QD_ERR_PARSE ||
         s == QD_ERR_DIMENSION;
}

void check(qd_status s, const std::string& what) {
  if (s == QD_OK) return;
  throw Exit{is_usage_status(s) ? kExitUsage : kExitFailure,
             what + ": " + qd_status_string(s) + ": " + qd_last_error()};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void require_n(int n, int cap = kMaxExactN) {
  if (n < 2 || n > cap) {
    throw Exit{kExitUsage, "--n must be in [2, " + std::to_string(cap) + "], got " + std::to_string(n)};
  }
}

// Writes to --out atomically (temp file + rename), or to stdout.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(out_path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Exit{kExitUsage, "cannot open " + tmp.string() + " for writing"};
    f << text;
    if (!f.flush()) throw Exit{kExitFailure, "write to " + tmp.string() + " failed"};
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Exit{kExitFailure, "rename to " + target.string() + " failed: " + ec.message()};
}

AttackPtr parse_attack(const std::string& descriptor) {
  qd_attack* raw = nullptr;
  check(qd_attack_parse(descriptor.c_str(), &raw), "attack '" + descriptor + "'");
  return AttackPtr(raw);
}

std::string descriptor_of(const qd_attack* a) {
  size_t needed = 0;
  qd_attack_descriptor(a, nullptr, 0, &needed);
  std::string s(needed, '\0');
  check(qd_attack_descriptor(a, s.data(), s.size(), nullptr), "descriptor");
  s.resize(needed - 1);
  return s;
}

json point_json(const qd_point& p) {
  return json{{"n", p.n},       {"g", p.g},           {"d", p.d},
              {"bound", p.bound}, {"margin", p.margin}, {"source", p.source}};
}

// ---- curve ---------------------------------------------------------------

struct CurveArgs {
  int n = 0;
  int points = 101;
  std::string format = "csv";
  std::string out;
};

int run_curve(const CurveArgs& a) {
  require_n(a.n);
  if (a.points < 2) throw Exit{kExitUsage, "--points must be >= 2"};
  std::vector<double> g(static_cast<std::size_t>(a.points)), d(g.size());
  check(qd_curve(a.n, g.size(), g.data(), d.data()), "curve");
  std::ostringstream os;
  if (a.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) rows.push_back({{"g", g[i]}, {"d_bound", d[i]}});
    os << json{{"n", a.n}, {"points", rows}}.dump() << '\n';
  } else {
    os << "g,d_bound\n";
    for (std::size_t i = 0; i < g.size(); ++i) os << fmt(g[i]) << ',' << fmt(d[i]) << '\n';
  }
  emit(os.str(), a.out);
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  int n = 0;
  std::size_t trials = 1000;
  int outcomes = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  bool inject_fault = false;
};

struct VerifyState {
  double min_margin = INFINITY;
  double max_saturation_gap = 0.0;
  double max_g_residual = 0.0;
  double max_f_residual = 0.0;
  std::size_t attacks = 0;
  json failures = json::array();

  void fail(const std::string& source, const std::string& reason) {
    failures.push_back({{"source", source}, {"reason", reason}});
  }

  void margin(const qd_point& p) {
    min_margin = std::min(min_margin, p.margin);
    if (p.margin < -1e-9) {
      fail(p.source, "margin " + fmt(p.margin) + " below -1e-9 (G=" + fmt(p.g) + ", D=" + fmt(p.d) +
                         ", bound=" + fmt(p.bound) + ")");
    }
  }

  // Definitional vs functional evaluations plus CP/TP on one attack.
  void audit(const qd_attack* a) {
    ++attacks;
    const std::string src = descriptor_of(a);
    double g_def = 0, g_fun = 0, f_def = 0, f_fun = 0;
    check(qd_estimation_fidelity(a, &g_def), src);
    check(qd_estimation_fidelity_functional(a, &g_fun), src);
    check(qd_induced_fidelity(a, &f_def), src);
    check(qd_induced_fidelity_functional(a, &f_fun), src);
    const double gr = std::abs(g_def - g_fun);
    const double fr = std::abs(f_def - f_fun);
    max_g_residual = std::max(max_g_residual, gr);
    max_f_residual = std::max(max_f_residual, fr);
    if (gr > 1e-12) fail(src, "estimation functional residual " + fmt(gr));
    if (fr > 1e-10) fail(src, "fidelity functional residual " + fmt(fr));
    int cp = 0, tp = 0;
    check(qd_attack_channel_checks(a, 1e-9, &cp, &tp), src);
    if (!cp || !tp) fail(src, "Choi state fails CP/TP characterization");
  }
};

int run_verify(const VerifyArgs& a) {
  require_n(a.n);
  const int k = a.outcomes > 0 ? a.outcomes : a.n * a.n;
  VerifyState st;

  if (a.trials > 0) {
    std::vector<qd_point> points(a.trials);
    double min_margin = 0.0;
    const qd_status s = qd_sweep_random(a.n, a.trials, k, a.seed, points.data(), points.size(), &min_margin);
    if (s == QD_ERR_CONTRACT) {
      st.fail("sweep", qd_last_error());
    } else {
      check(s, "sweep");
      for (const auto& p : points) {
        st.margin(p);
        st.audit(parse_attack(p.source).get());
      }
    }
  }

  // Named families: the optimal family on a 21-point grid must sit on the
  // bound; identity, projective and probabilistic mixtures must not undercut it.
  std::vector<std::string> named{"identity(n=" + std::to_string(a.n) + ")",
                                 "projective(n=" + std::to_string(a.n) + ")"};
  for (int i = 0; i <= 10; ++i) {
    named.push_back("prob(n=" + std::to_string(a.n) + ",p=" + fmt(i / 10.0) + ")");
  }
  const double lo = 1.0 / a.n;
  for (int i = 0; i <= 20; ++i) {
    const double g = (i == 20) ? 1.0 : lo + (1.0 - lo) * i / 20.0;
    double gap = 0.0;
    check(qd_saturation_gap(a.n, g, &gap), "saturation");
    st.max_saturation_gap = std::max(st.max_saturation_gap, gap);
    qd_attack* raw = nullptr;
    check(qd_attack_optimal(a.n, g, &raw), "optimal");
    AttackPtr opt(raw);
    const std::string src = descriptor_of(opt.get());
    if (gap > 1e-9) st.fail(src, "saturation gap " + fmt(gap));
    // definitional D against the bound as well
    double f_def = 0.0, bound = 0.0;
    check(qd_induced_fidelity(opt.get(), &f_def), src);
    check(qd_disturbance_bound(g, a.n, &bound), src);
    const double gap_def = std::abs(1.0 - f_def - bound);
    st.max_saturation_gap = std::max(st.max_saturation_gap, gap_def);
    if (gap_def > 1e-9) st.fail(src, "definitional saturation gap " + fmt(gap_def));
    named.push_back(src);
  }
  for (const auto& d : named) {
    AttackPtr atk = parse_attack(d);
    qd_point p{};
    const qd_status s = qd_evaluate(atk.get(), &p);
    if (s == QD_ERR_CONTRACT) {
      st.fail(d, qd_last_error());
      continue;
    }
    check(s, d);
    st.margin(p);
    st.audit(atk.get());
  }

  if (a.inject_fault) {
    qd_point bad{};
    bad.n = a.n;
    bad.g = 1.0;
    check(qd_disturbance_bound(1.0, a.n, &bad.bound), "inject");
    bad.d = bad.bound - 0.01;
    bad.margin = bad.d - bad.bound;
    std::snprintf(bad.source, sizeof bad.source, "injected(n=%d)", a.n);
    st.margin(bad);
  }

  const bool pass = st.failures.empty();
  struct Check {
    const char* name;
    double value;
    double limit;
    bool ok;
  };
  const std::vector<Check> checks{
      {"min_margin", st.min_margin, -1e-9, st.min_margin >= -1e-9},
      {"max_saturation_gap", st.max_saturation_gap, 1e-9, st.max_saturation_gap <= 1e-9},
      {"max_estimation_residual", st.max_g_residual, 1e-12, st.max_g_residual <= 1e-12},
      {"max_fidelity_residual", st.max_f_residual, 1e-10, st.max_f_residual <= 1e-10},
  };

  std::ostringstream os;
  if (a.format == "csv") {
    os << "check,value,limit,pass\n";
    for (const auto& c : checks) os << c.name << ',' << fmt(c.value) << ',' << fmt(c.limit) << ',' << (c.ok ? 1 : 0) << '\n';
    for (const auto& f : st.failures) {
      os << "failure," << f["source"].get<std::string>() << ',' << f["reason"].get<std::string>() << ",0\n";
    }
  } else {
    json j{{"n", a.n},
           {"trials", a.trials},
           {"outcomes", k},
           {"seed", a.seed},
           {"attacks_audited", st.attacks}};
    for (const auto& c : checks) j[c.name] = c.value;
    j["failures"] = st.failures;
    j["pass"] = pass;
    os << j.dump() << '\n';
  }
  emit(os.str(), a.out);
  if (!pass) {
    std::cerr << "verify: " << st.failures.size() << " contract failure(s); first: "
              << st.failures[0]["source"].get<std::string>() << ": "
              << st.failures[0]["reason"].get<std::string>() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  std::optional<int> n;
  std::string attack;
  std::optional<double> g;
  std::optional<double> p;
  std::uint64_t shots = 100000;
  double decoy_fraction = 0.5;
  std::uint64_t seed = 0;
  bool sample_bob = false;
  std::string format = "json";
  std::string out;
};

// Accepts a full descriptor, or a bare family name completed from --n/--g/--p.
std::string resolve_descriptor(const SimulateArgs& a) {
  if (a.attack.find('(') != std::string::npos) return a.attack;
  if (!a.n) throw Exit{kExitUsage, "--n is required with a bare attack family name"};
  const std::string n = "n=" + std::to_string(*a.n);
  if (a.attack == "identity" || a.attack == "projective") return a.attack + "(" + n + ")";
  if (a.attack == "optimal") {
    if (!a.g) throw Exit{kExitUsage, "--g is required for the optimal family"};
    return "optimal(" + n + ",g=" + fmt(*a.g) + ")";
  }
  if (a.attack == "prob") {
    if (!a.p) throw Exit{kExitUsage, "--p is required for the prob family"};
    return "prob(" + n + ",p=" + fmt(*a.p) + ")";
  }
  if (a.attack == "random") {
    return "random(" + n + ",k=" + std::to_string(*a.n * *a.n) + ",seed=" + std::to_string(a.seed) + ")";
  }
  throw Exit{kExitUsage, "unknown attack family '" + a.attack + "'"};
}

int run_simulate(const SimulateArgs& a) {
  AttackPtr atk = parse_attack(resolve_descriptor(a));
  const int dim = qd_attack_dim(atk.get());
  if (a.n && *a.n != dim) {
    throw Exit{kExitUsage, "--n " + std::to_string(*a.n) + " does not match attack dimension " +
                               std::to_string(dim)};
  }
  require_n(dim, 1 << 12);
  qd_sim_report rep{};
  check(qd_simulate(atk.get(), a.shots, a.decoy_fraction, a.seed, a.sample_bob ? 1 : 0, &rep), "simulate");

  std::ostringstream os;
  if (a.format == "csv") {
    os << "n,shots,decoy_fraction,message_trials,decoy_trials,g_hat,g_se,d_hat,d_se,g_analytic,"
          "d_analytic,seed,sample_bob,consistent,attack_descriptor\n";
    os << rep.n << ',' << rep.shots << ',' << fmt(rep.decoy_fraction) << ',' << rep.message_trials
       << ',' << rep.decoy_trials << ',' << fmt(rep.g_hat) << ',' << fmt(rep.g_se) << ','
       << fmt(rep.d_hat) << ',' << fmt(rep.d_se) << ',' << fmt(rep.g_analytic) << ','
       << fmt(rep.d_analytic) << ',' << rep.seed << ',' << rep.sample_bob << ',' << rep.consistent
       << ",\"" << rep.attack_descriptor << "\"\n";
  } else {
    size_t needed = 0;
    qd_sim_report_json(&rep, nullptr, 0, &needed);
    std::string text(needed, '\0');
    check(qd_sim_report_json(&rep, text.data(), text.size(), nullptr), "json");
    text.resize(needed - 1);
    os << text << '\n';
  }
  emit(os.str(), a.out);
  return kExitOk;
}

// ---- optimize ------------------------------------------------------------

struct OptimizeArgs {
  int n = 0;
  double g = 0.0;
  int restarts = 16;
  int iters = 2000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

int run_optimize(const OptimizeArgs& a) {
  require_n(a.n);
  if (a.restarts < 1 || a.iters < 0) throw Exit{kExitUsage, "--restarts must be >= 1 and --iters >= 0"};
  qd_point best{};
  check(qd_optimize(a.n, a.g, a.restarts, a.iters, a.seed, &best, nullptr), "optimize");
  std::ostringstream os;
  if (a.format == "csv") {
    os << "n,g,d,bound,margin,source\n"
       << best.n << ',' << fmt(best.g) << ',' << fmt(best.d) << ',' << fmt(best.bound) << ','
       << fmt(best.margin) << ",\"" << best.source << "\"\n";
  } else {
    json j = point_json(best);
    j["g_target"] = a.g;
    os << j.dump() << '\n';
  }
  emit(os.str(), a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdecoy: information gain versus disturbance for quantum decoys"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qd_version()));

  const std::vector<std::string> formats{"csv", "json"};

  CurveArgs curve;
  auto* c = app.add_subcommand("curve", "Emit the lower bound D(G) on a uniform G grid");
  c->add_option("--n", curve.n, "System dimension")->required();
  c->add_option("--points", curve.points, "Grid points (>= 2)");
  c->add_option("--format", curve.format)->check(CLI::IsMember(formats));
  c->add_option("--out", curve.out, "Output path (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Certify the bound on random attacks and the named families");
  v->add_option("--n", verify.n, "System dimension")->required();
  v->add_option("--trials", verify.trials, "Random attacks to evaluate");
  v->add_option("--outcomes", verify.outcomes, "Kraus operators per random attack (default n^2)");
  v->add_option("--seed", verify.seed);
  v->add_option("--format", verify.format)->check(CLI::IsMember(formats));
  v->add_option("--out", verify.out);
  v->add_flag("--inject-fault", verify.inject_fault, "Append a point below the bound (failure-path test)")
      ->group("");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo run of the message/decoy protocol");
  s->add_option("--n", sim.n, "System dimension (checked against the attack)");
  s->add_option("--attack", sim.attack, "Attack descriptor or family name")->required();
  s->add_option("--g", sim.g, "G for a bare 'optimal' family");
  s->add_option("--p", sim.p, "p for a bare 'prob' family");
  s->add_option("--shots", sim.shots);
  s->add_option("--decoy-fraction", sim.decoy_fraction)->check(CLI::Range(0.0, 1.0));
  s->add_option("--seed", sim.seed);
  s->add_flag("--sample-bob", sim.sample_bob, "Sample Bob's tamper test instead of scoring its probability");
  s->add_option("--format", sim.format)->check(CLI::IsMember(formats));
  s->add_option("--out", sim.out);

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "Numerically minimize D over diagonal attacks at fixed G");
  o->add_option("--n", opt.n, "System dimension")->required();
  o->add_option("--g", opt.g, "Target G in [1/n, 1]")->required();
  o->add_option("--restarts", opt.restarts);
  o->add_option("--iters", opt.iters);
  o->add_option("--seed", opt.seed);
  o->add_option("--format", opt.format)->check(CLI::IsMember(formats));
  o->add_option("--out", opt.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c->parsed()) return run_curve(curve);
    if (v->parsed()) return run_verify(verify);
    if (s->parsed()) return run_simulate(sim);
    if (o->parsed()) return run_optimize(opt);
  } catch (const Exit& e) {
    std::cerr << "qdecoy: " << e.message << '\n';
    return e.code;
  }
  return kExitUsage;
}

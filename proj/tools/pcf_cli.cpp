// pcf: command-line front end for the prize-collecting forest solvers.
//
// Exit status: 0 success, 1 solver error, 2 invalid input or failed
// verification, 3 oracle size guard.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pcf/pcf.hpp"

namespace {

using namespace pcf;

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::vector<VertexId> parse_roots(const Instance& g, const std::string& text) {
  const LabelIndex index(g);
  std::vector<VertexId> roots;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long label = 0;
    try {
      label = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::kInvalidRoot, "root '" + item + "' is not an integer id");
    roots.push_back(index.at(label));
  }
  return roots;
}

Num parse_num_flag(const std::string& text, const char* name) {
  try {
    return Num::parse(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kBadNumber, std::string("--") + name + ": " + e.what());
  }
}

void emit(const json& doc) { std::cout << doc.dump() << '\n'; }

/// Worker count from PCF_THREADS; 0 or unset runs serially.
unsigned thread_budget() {
  const char* env = std::getenv("PCF_THREADS");
  if (!env) return 0;
  try {
    return static_cast<unsigned>(std::max(0L, std::stol(env)));
  } catch (const std::exception&) {
    return 0;
  }
}

/// Runs body(i) for i in [0, count). Results are written by index, so output
/// order never depends on scheduling.
void for_each_index(int count, const std::function<void(int)>& body) {
  const unsigned workers = std::min<unsigned>(thread_budget(), static_cast<unsigned>(std::max(count, 0)));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  for (std::thread& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// check suites

struct CaseResult {
  std::vector<std::string> failures;  // "property: detail"
};

struct Property {
  std::string name;
  int failed = 0;
};

int report_suite(const std::string& suite, const std::vector<std::string>& properties,
                 const std::vector<CaseResult>& cases) {
  int bad_cases = 0;
  std::vector<Property> props;
  for (const std::string& p : properties) props.push_back({p, 0});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!cases[i].failures.empty()) ++bad_cases;
    for (const std::string& f : cases[i].failures) {
      std::cout << "  case " << i << ": " << f << '\n';
      for (Property& p : props)
        if (f.rfind(p.name + ":", 0) == 0) ++p.failed;
    }
  }
  for (const Property& p : props)
    std::cout << "  " << p.name << ": " << (p.failed == 0 ? "pass" : "FAIL") << '\n';
  const int total = static_cast<int>(cases.size());
  std::cout << suite << ": " << (bad_cases == 0 ? "pass " : "FAIL ") << (total - bad_cases) << '/' << total << '\n';
  return bad_cases == 0 ? kExitOk : kExitSolver;
}

Instance lmp_case(std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x5eedULL);
  const int n = static_cast<int>(rng.uniform(1, 10));
  const int m = static_cast<int>(rng.uniform(0, std::min<std::int64_t>(20, std::int64_t{n} * (n - 1) / 2)));
  return generate_random(seed, n, m, 20, 20);
}

void check_dual(const Instance& g, CaseResult& out) {
  const AuditReport r = check_dual_feasibility(g, rootless_grow(g));
  if (!r.ok) out.failures.push_back("dual feasibility: " + r.violation);
}

void check_lmp(const Instance& g, CaseResult& out) {
  const Growth gr = rootless_grow(g);
  const AuditReport audit = check_dual_feasibility(g, gr);
  if (!audit.ok) out.failures.push_back("dual feasibility: " + audit.violation);
  for (int k = 1; k <= g.n(); ++k) {
    const Forest f = solve_urpcf(g, gr, k);
    const OracleResult opt = opt_urpcf(g, k);
    const Num lhs = lmp_value(g, f, Num(2));
    if (f.k() != k) out.failures.push_back("component count: K=" + std::to_string(k));
    if (!(lhs <= Num(2) * opt.value))
      out.failures.push_back("2-LMP: K=" + std::to_string(k) + " " + lhs.str() + " > 2*" + opt.value.str());
  }
}

void check_dp(const Instance& tree, VertexId root, CaseResult& out) {
  for (int k = 0; k <= tree.n(); ++k) {
    const PruneResult r = rootless_prune(tree, root, k);
    const OracleResult o = opt_nw_kforest(tree, k);
    if (r.net_worth != o.value)
      out.failures.push_back("dp exactness: k=" + std::to_string(k) + " " + r.net_worth.str() + " != " + o.value.str());
    if (r.forest.k() != k) out.failures.push_back("component count: k=" + std::to_string(k));
  }
}

void check_rooted(const Instance& g, const std::vector<VertexId>& roots, CaseResult& out) {
  const Growth gr = rootless_grow(g);
  const Forest f = solve_rpcf(g, gr, roots);
  const OracleResult opt = opt_rpcf(g, roots);
  const Num lhs = lmp_value(g, f, Num(2));
  if (!(lhs <= Num(2) * opt.value)) out.failures.push_back("rooted 2-LMP: " + lhs.str() + " > 2*" + opt.value.str());
  const RootedCertificate cert = rooted_certificate(g, gr, f, roots);
  if (!cert.holds()) out.failures.push_back("certificate: " + cert.lhs.str() + " > " + cert.rhs.str());
  if (f.k() != static_cast<int>(roots.size())) out.failures.push_back("component count: one per root");
}

void check_sweep(const SweepInstance& si, CaseResult& out) {
  const SweepPlan plan = plan_sweep_cover(si);
  const PlanReport report = verify_plan(si, plan);
  if (!report.ok) out.failures.push_back("plan verifies: " + report.problems.front());
  Num missed;
  for (VertexId v : plan.uncovered) missed += si.graph().penalty(v);
  const Num lhs = si.cost() * Num(plan.sensors()) + Num(5) * missed;
  const Num lb = sweep_lower_bound(si).value;
  if (!(lhs <= Num(5) * lb)) out.failures.push_back("5-LMP: " + lhs.str() + " > 5*" + lb.str());
  for (const Group& gr : plan.groups)
    if (const auto* p = std::get_if<Patrol>(&gr); p && !(p->length <= Num(2) * p->tree_weight))
      out.failures.push_back("cycle length: " + p->length.str() + " > 2*" + p->tree_weight.str());
}

SweepInstance sweep_case(std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x5ee9ULL);
  const int n = static_cast<int>(rng.uniform(1, 8));
  const int m = static_cast<int>(rng.uniform(n - 1, std::int64_t{n} * (n - 1) / 2));
  const Instance g = generate_connected(seed, n, m, 20, 20);
  const Num a(static_cast<long>(rng.uniform(1, 4)));
  const Num t = Num(static_cast<long>(rng.uniform(1, 10))) / Num(2);
  const Num c(static_cast<long>(rng.uniform(1, 30)));
  return SweepInstance(metric_closure(g).closure, a, t, c);
}

int run_check(const std::string& suite, int seeds, std::uint64_t base_seed, const std::string& path) {
  std::vector<CaseResult> cases;
  if (!path.empty()) {
    cases.resize(1);
    if (suite == "dual") {
      check_dual(load_instance(path), cases[0]);
    } else if (suite == "lmp") {
      check_lmp(load_instance(path), cases[0]);
    } else if (suite == "dp") {
      const TreeDocument doc = parse_tree_document(read_file(path));
      check_dp(doc.tree, doc.root, cases[0]);
    } else if (suite == "rooted") {
      const Instance g = load_instance(path);
      for (int k = 1; k <= g.n(); ++k) {
        const OracleResult u = opt_urpcf(g, k);
        std::vector<VertexId> roots;
        for (const auto& comp : u.witness.components(g)) roots.push_back(comp.front());
        check_rooted(g, roots, cases[0]);
      }
    } else {
      throw InputError("suite 'sweep' runs on seeded instances only");
    }
  } else {
    cases.resize(std::max(seeds, 0));
    for_each_index(seeds, [&](int i) {
      const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
      if (suite == "dual") {
        SplitMix64 rng(seed);
        const int n = static_cast<int>(rng.uniform(1, 40));
        const int m = static_cast<int>(rng.uniform(0, std::min<std::int64_t>(120, std::int64_t{n} * (n - 1) / 2)));
        check_dual(generate_random(seed, n, m, 20, 20), cases[i]);
      } else if (suite == "lmp") {
        check_lmp(lmp_case(seed), cases[i]);
      } else if (suite == "dp") {
        SplitMix64 rng(seed);
        const int n = static_cast<int>(rng.uniform(1, 12));
        check_dp(generate_tree(seed, n, 20, 20), static_cast<VertexId>(rng.uniform(0, n - 1)), cases[i]);
      } else if (suite == "rooted") {
        const Instance g = lmp_case(seed);
        SplitMix64 rng(seed * 17 + 3);
        std::vector<VertexId> roots;
        for (VertexId v = 0; v < g.n(); ++v)
          if (rng.uniform(0, 2) == 0) roots.push_back(v);
        if (roots.empty()) roots.push_back(static_cast<VertexId>(rng.uniform(0, g.n() - 1)));
        check_rooted(g, roots, cases[i]);
      } else {
        check_sweep(sweep_case(seed), cases[i]);
      }
    });
  }
  static const std::map<std::string, std::vector<std::string>> properties = {
      {"dual", {"dual feasibility"}},
      {"lmp", {"dual feasibility", "component count", "2-LMP"}},
      {"dp", {"dp exactness", "component count"}},
      {"rooted", {"rooted 2-LMP", "certificate", "component count"}},
      {"sweep", {"plan verifies", "5-LMP", "cycle length"}},
  };
  return report_suite(suite, properties.at(suite), cases);
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Prize-collecting forests with K components: solvers, oracles and the sweep-cover planner"};
  app.require_subcommand(1);
  bool as_float = false;
  app.add_flag("--float", as_float, "Print numbers as floating point instead of exact decimals");
  const auto fmt = [&] { return as_float ? NumFormat::kFloat : NumFormat::kExact; };

  std::string path;
  std::string path2;
  int k = 0;
  std::string roots_text;
  std::string speed = "1";
  std::string period = "1";
  std::string cost = "1";
  std::uint64_t seed = 0;
  int n = 10;
  int m = 20;
  std::int64_t wmax = 20;
  std::int64_t pmax = 20;
  std::string shape = "random";
  std::string suite;
  int seeds = 0;

  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--seed", seed, "Seed")->required();
  gen->add_option("-n", n, "Vertices")->required();
  gen->add_option("-m", m, "Edges (ignored for trees)");
  gen->add_option("--wmax", wmax, "Largest edge weight");
  gen->add_option("--pmax", pmax, "Largest penalty");
  gen->add_option("--shape", shape, "random | connected | tree")->check(CLI::IsMember({"random", "connected", "tree"}));

  auto* urpcf = app.add_subcommand("solve-urpcf", "Unrooted forest with exactly K components");
  urpcf->add_option("-K", k, "Component count")->required();
  urpcf->add_option("instance", path, "Instance JSON")->required();

  auto* rpcf = app.add_subcommand("solve-rpcf", "Rooted forest, one component per root");
  rpcf->add_option("--roots", roots_text, "Comma-separated vertex ids")->required();
  rpcf->add_option("instance", path, "Instance JSON")->required();

  auto* prune = app.add_subcommand("prune-tree", "Net-worth maximum k-forest of a rooted tree");
  prune->add_option("-k,-K", k, "Component count")->required();
  prune->add_option("tree", path, "Tree JSON with \"root\"")->required();

  auto* sweep = app.add_subcommand("sweep-cover", "Plan sensors for prize-collecting sweep cover");
  sweep->add_option("--speed", speed, "Sensor speed a")->required();
  sweep->add_option("--period", period, "Revisit period t")->required();
  sweep->add_option("--cost", cost, "Cost per sensor c")->required();
  sweep->add_option("instance", path, "Instance JSON")->required();

  auto* verify = app.add_subcommand("verify-plan", "Check a sweep-cover plan against its instance");
  verify->add_option("instance", path, "Instance JSON")->required();
  verify->add_option("plan", path2, "Plan JSON")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive solvers for small instances");
  std::string which;
  oracle->add_option("problem", which, "urpcf | rpcf | nwkf | sweep-lb")
      ->required()
      ->check(CLI::IsMember({"urpcf", "rpcf", "nwkf", "sweep-lb"}));
  oracle->add_option("instance", path, "Instance JSON")->required();
  oracle->add_option("-K,-k", k, "Component count");
  oracle->add_option("--roots", roots_text, "Comma-separated vertex ids");
  oracle->add_option("--speed", speed, "Sensor speed a");
  oracle->add_option("--period", period, "Revisit period t");
  oracle->add_option("--cost", cost, "Cost per sensor c");

  auto* trace = app.add_subcommand("trace", "Event trace of the rootless growth");
  trace->add_option("instance", path, "Instance JSON")->required();

  auto* bench = app.add_subcommand("bench", "Time growth and pruning on a seeded sparse instance");
  int bench_n = 2000;
  int bench_m = 6000;
  bench->add_option("--seed", seed, "Seed");
  bench->add_option("-n", bench_n, "Vertices");
  bench->add_option("-m", bench_m, "Edges");
  bench->add_option("-K", k, "Component count (default 50)");
  bench->add_option("instance", path, "Instance JSON instead of a generated one");

  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("--suite", suite, "dual | lmp | dp | rooted | sweep")
      ->required()
      ->check(CLI::IsMember({"dual", "lmp", "dp", "rooted", "sweep"}));
  check->add_option("--seeds", seeds, "Number of seeded cases");
  check->add_option("--seed", seed, "First seed");
  check->add_option("instance", path, "Run on this instance instead of seeded ones");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (gen->parsed()) {
    Instance g;
    if (shape == "tree") g = generate_tree(seed, n, wmax, pmax);
    else if (shape == "connected") g = generate_connected(seed, n, m, wmax, pmax);
    else g = generate_random(seed, n, m, wmax, pmax);
    emit(instance_to_json(g));
  } else if (urpcf->parsed()) {
    const Instance g = load_instance(path);
    const Forest f = solve_urpcf(g, k);
    emit(forest_to_json(g, f, cost_plus_penalty(g, f), fmt()));
  } else if (rpcf->parsed()) {
    const Instance g = load_instance(path);
    const Forest f = solve_rpcf(g, parse_roots(g, roots_text));
    emit(forest_to_json(g, f, cost_plus_penalty(g, f), fmt()));
  } else if (prune->parsed()) {
    const TreeDocument doc = parse_tree_document(read_file(path));
    const PruneResult r = rootless_prune(doc.tree, doc.root, k);
    emit(forest_to_json(doc.tree, r.forest, r.net_worth, fmt()));
  } else if (sweep->parsed()) {
    const Instance g = load_instance(path);
    const Num a = parse_num_flag(speed, "speed");
    const Num t = parse_num_flag(period, "period");
    const Num c = parse_num_flag(cost, "cost");
    if (is_metric(g)) {
      const SweepInstance si(g, a, t, c);
      emit(plan_to_json(si, plan_sweep_cover(si), fmt()));
    } else {
      const MetricClosure mc = metric_closure(g);
      const SweepInstance si(mc.closure, a, t, c);
      const SweepPlan plan = plan_sweep_cover(si);
      std::vector<std::vector<VertexId>> walks;
      for (const Group& gr : plan.groups) {
        std::vector<VertexId> walk;
        if (const auto* p = std::get_if<Patrol>(&gr)) {
          walk.push_back(p->cycle.front());
          for (std::size_t i = 0; i + 1 < p->cycle.size(); ++i) {
            const std::vector<VertexId> leg = mc.path(p->cycle[i], p->cycle[i + 1]);
            walk.insert(walk.end(), leg.begin() + 1, leg.end());
          }
        }
        walks.push_back(std::move(walk));
      }
      emit(plan_to_json(si, plan, fmt(), &walks));
    }
  } else if (verify->parsed()) {
    const Instance g = load_instance(path);
    const json doc = parse_json(read_file(path2));
    const Num a = num_from_json(detail::field(doc, "speed"), "speed");
    const Num t = num_from_json(detail::field(doc, "period"), "period");
    const Num c = num_from_json(detail::field(doc, "cost"), "cost");
    const SweepInstance si(is_metric(g) ? g : metric_closure(g).closure, a, t, c);
    const PlanReport report = verify_plan(si, plan_from_json(si.graph(), doc));
    emit({{"ok", report.ok}, {"problems", report.problems}, {"objective", num_to_json(report.objective, fmt())}});
    return report.ok ? kExitOk : kExitInput;
  } else if (oracle->parsed()) {
    if (which == "nwkf") {
      const std::string text = read_file(path);
      const json doc = parse_json(text);
      const Instance tree = instance_from_json(doc);
      const OracleResult r = opt_nw_kforest(tree, k);
      emit(forest_to_json(tree, r.witness, r.value, fmt()));
      return kExitOk;
    }
    const Instance g = load_instance(path);
    if (which == "urpcf") {
      const OracleResult r = opt_urpcf(g, k);
      emit(forest_to_json(g, r.witness, r.value, fmt()));
    } else if (which == "rpcf") {
      const OracleResult r = opt_rpcf(g, parse_roots(g, roots_text));
      emit(forest_to_json(g, r.witness, r.value, fmt()));
    } else {
      const SweepInstance si(is_metric(g) ? g : metric_closure(g).closure, parse_num_flag(speed, "speed"),
                             parse_num_flag(period, "period"), parse_num_flag(cost, "cost"));
      const OracleResult r = sweep_lower_bound(si);
      json doc = forest_to_json(si.graph(), r.witness, r.value, fmt());
      doc["sensors"] = r.k;
      emit(doc);
    }
  } else if (trace->parsed()) {
    const Instance g = load_instance(path);
    emit(growth_to_json(g, rootless_grow(g), fmt()));
  } else if (bench->parsed()) {
    using Clock = std::chrono::steady_clock;
    const Instance g = path.empty() ? generate_random(seed, bench_n, bench_m, 100, 100) : load_instance(path);
    if (k == 0) k = std::min(50, g.n());
    const auto t0 = Clock::now();
    const Growth gr = rootless_grow(g);
    const auto t1 = Clock::now();
    const Forest f = solve_urpcf(g, gr, k);
    const auto t2 = Clock::now();
    const auto secs = [](auto d) { return std::chrono::duration<double>(d).count(); };
    int edge_events = 0;
    for (const Event& ev : gr.events) edge_events += ev.kind == Event::Kind::kEdgeAdded;
    emit({{"n", g.n()},
          {"m", g.m()},
          {"K", k},
          {"events", gr.events.size()},
          {"edge_events", edge_events},
          {"components", gr.family.size()},
          {"growth_seconds", secs(t1 - t0)},
          {"prune_seconds", secs(t2 - t1)},
          {"total_seconds", secs(t2 - t0)},
          {"value", num_to_json(cost_plus_penalty(g, f), fmt())}});
  } else if (check->parsed()) {
    if (path.empty() && seeds <= 0) throw InputError("check needs --seeds or an instance");
    return run_check(suite, seeds, seed, path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pcf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.is_guard()) return kExitGuard;
    switch (e.code()) {
      case pcf::ErrorCode::kKOutOfRange:
      case pcf::ErrorCode::kInconsistent:
        return kExitSolver;
      default:
        return kExitInput;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <ddt/ddt.hpp>

namespace fs = std::filesystem;
using namespace ddt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDisagree = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string ms_text(double ms) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << ms;
  return os.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

json time_json(const Time& t, int decimal) {
  json j;
  j["optimum"] = t.str();
  if (decimal > 0 && !t.is_infinite()) j["optimum_decimal"] = t.value().decimal(decimal);
  return j;
}

struct SolveArgs {
  std::string instance;
  std::string algo = "auto";
  std::string order;
  int max_len = 0;
  std::string decomp = "min-fill";
  int decimal = 0;
  std::string schedule_out;
  bool dump_states = false;
};

int cmd_solve(const SolveArgs& a) {
  Instance inst = load_instance(a.instance);
  SolveOptions opt;
  opt.order = split_list(a.order);
  if (a.max_len > 0) opt.max_len = a.max_len;
  if (a.decomp == "min-degree") {
    opt.heuristic = Heuristic::min_degree;
  } else if (a.decomp != "min-fill") {
    throw Error("unknown decomposition heuristic '" + a.decomp + "'");
  }
  auto t0 = std::chrono::steady_clock::now();
  SolveReport rep = solve(inst, parse_algo(a.algo), opt);
  double ms = elapsed_ms(t0);

  json j;
  j["instance"] = a.instance;
  j["algorithm"] = algo_name(rep.algo);
  json t = time_json(rep.time, a.decimal);
  for (auto& [k, v] : t.items()) j[k] = v;
  json seq = json::array();
  for (int x : rep.sequence) seq.push_back(inst.agents[x].id);
  j["sequence"] = seq;
  if (rep.states > 0) j["dp_states"] = rep.states;
  if (rep.schedule && !a.schedule_out.empty()) {
    write_file(a.schedule_out, schedule_to_json(inst, *rep.schedule).dump(2) + "\n");
    j["schedule_path"] = a.schedule_out;
  } else if (rep.schedule) {
    j["schedule"] = schedule_to_json(inst, *rep.schedule);
  } else {
    j["schedule"] = nullptr;
  }
  j["wall_ms"] = ms_text(ms);
  if (a.dump_states) {
    for (std::size_t i = 0; i < rep.node_states.size(); ++i) {
      std::cerr << "node " << i << ": " << rep.node_states[i] << " entries\n";
    }
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& instance, const std::string& schedule, const std::string& mode, int decimal) {
  Instance inst = load_instance(instance);
  json sj;
  try {
    sj = json::parse(read_file(schedule));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  Schedule s = schedule_from_json(inst, sj);
  Mode m = mode == "fp" ? Mode::fp : Mode::sp;
  json j;
  try {
    ScheduleCheck c = validate_schedule(inst, s, m);
    j["feasible"] = true;
    json t = time_json(Time(c.delivery_time), decimal);
    j["delivery_time"] = t["optimum"];
    if (t.contains("optimum_decimal")) j["delivery_time_decimal"] = t["optimum_decimal"];
    j["warnings"] = c.warnings;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  } catch (const ScheduleError& e) {
    j["feasible"] = false;
    json vs = json::array();
    for (const auto& v : e.violations()) vs.push_back({{"rule", v.rule}, {"detail", v.detail}});
    j["violations"] = vs;
    std::cout << j.dump(2) << "\n";
    return kExitRejected;
  }
}

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 1;
  int max_n = 0;
  int max_k = 0;
  int max_len = 10;
  bool no_zero = false;
  std::string p = "3,2,1";
  int k = 2;
  std::string an = "1";
  std::string out;
  std::string sidecar;
};

json gadget_sidecar(const GadgetSpec& s) {
  auto row = [](const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
  };
  json j;
  j["p"] = s.p;
  j["k"] = s.k;
  j["a_n"] = s.an.str();
  j["P"] = s.P.str();
  j["budget_d"] = s.d.str();
  j["yes_bound"] = yes_bound(s).str();
  j["v_prime"] = row(s.v_prime);
  j["v"] = row(s.v);
  j["v_star"] = s.v_star.str();
  json c = json::array();
  json cp = json::array();
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    json ci = json::array();
    json cpi = json::array();
    for (std::size_t jj = 0; jj < s.c[i].size(); ++jj) {
      ci.push_back(row(s.c[i][jj]));
      cpi.push_back(row(s.c_prime[i][jj]));
    }
    c.push_back(ci);
    cp.push_back(cpi);
  }
  j["c"] = c;
  j["c_prime"] = cp;
  json o = json::array();
  json op = json::array();
  for (std::size_t i = 0; i < s.o.size(); ++i) {
    o.push_back(row(s.o[i]));
    op.push_back(row(s.o_prime[i]));
  }
  j["o"] = o;
  j["o_prime"] = op;
  j["counts"] = {{"element", s.counts.element},       {"helper", s.counts.helper},
                 {"partition", s.counts.partition},   {"p_transition", s.counts.p_transition},
                 {"o_transition", s.counts.o_transition}, {"g_transition", s.counts.g_transition},
                 {"total", s.counts.total()}};
  j["divisible"] = s.divisible;
  if (!s.tag.empty()) j["tag"] = s.tag;
  return j;
}

int cmd_gen(const GenArgs& a) {
  if (a.kind == "gadget") {
    std::vector<long long> p;
    for (const auto& x : split_list(a.p)) {
      try {
        p.push_back(std::stoll(x));
      } catch (const std::exception&) {
        throw Error("bad element '" + x + "' in --p");
      }
    }
    GadgetInstance gi = build_hardness_instance(p, a.k, Rational::parse(a.an));
    emit(serialize_instance(gi.instance), a.out);
    std::string side = a.sidecar;
    if (side.empty() && !a.out.empty() && a.out != "-") {
      fs::path pth(a.out);
      side = (pth.parent_path() / (pth.stem().string() + ".spec.json")).string();
    }
    if (!side.empty()) write_file(side, gadget_sidecar(gi.spec).dump(2) + "\n");
    return kExitOk;
  }
  RandomSizes sz;
  Instance inst;
  auto fill = [&](RandomSizes base) {
    if (a.max_n > 0) base.max_n = a.max_n;
    if (a.max_k > 0) base.max_k = a.max_k;
    base.max_len = a.max_len;
    base.zero_lengths = !a.no_zero;
    if (base.max_len < 1) throw Error("--max-len must be at least 1");
    return base;
  };
  if (a.kind == "random-path") {
    inst = random_path_instance(a.seed, fill({12, 6, 10, true}));
  } else if (a.kind == "random-graph") {
    inst = random_graph_instance(a.seed, fill({8, 5, 10, true}));
  } else if (a.kind == "tree-intersection") {
    inst = tree_intersection_instance(a.seed, fill({20, 6, 10, true}));
  } else {
    throw Error("unknown generator '" + a.kind + "'");
  }
  emit(serialize_instance(inst), a.out);
  return kExitOk;
}

int cmd_isect(const std::string& instance, bool dot) {
  Instance inst = load_instance(instance);
  IntersectionGraph ig(inst);
  if (dot) {
    std::cout << intersection_dot(inst, ig);
    return kExitOk;
  }
  json j;
  j["agents"] = inst.k();
  j["simple"] = ig.simple();
  j["max_degree"] = ig.max_degree();
  j["thickness"] = thickness(inst);
  json es = json::array();
  for (const auto& e : ig.edges()) {
    es.push_back({inst.agents[e.a].id, inst.agents[e.b].id, inst.graph.name(e.vertex)});
  }
  j["edges"] = es;
  TreeCheck tc = check_tree_intersection(inst, ig);
  j["tree"] = tc.tree;
  if (!tc.tree) j["tree_reason"] = tc.reason;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string corpus;
  std::string algos = "auto";
  int repeat = 1;
  std::string out;
  bool strict = false;
};

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string status;
  std::string optimum;
  double wall_ms = 0;
  long long states = 0;
  std::string agrees;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<BenchRow> bench_one(const fs::path& file, const std::vector<Algo>& algos, int repeat) {
  std::vector<BenchRow> rows;
  std::optional<Instance> inst;
  std::string load_error;
  try {
    inst = load_instance(file.string());
  } catch (const std::exception& e) {
    load_error = e.what();
  }
  for (Algo al : algos) {
    BenchRow r;
    r.instance = file.filename().string();
    r.algo = algo_name(al);
    if (!inst) {
      r.status = "error: " + load_error;
      rows.push_back(r);
      continue;
    }
    try {
      double best = -1;
      for (int i = 0; i < repeat; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        SolveReport rep = solve(*inst, al);
        double ms = elapsed_ms(t0);
        if (best < 0 || ms < best) best = ms;
        r.optimum = rep.time.str();
        r.states = rep.states;
        r.algo = al == Algo::auto_pick ? "auto:" + algo_name(rep.algo) : algo_name(rep.algo);
      }
      r.wall_ms = best;
      r.status = "ok";
    } catch (const std::exception& e) {
      r.status = std::string("error: ") + e.what();
    }
    rows.push_back(r);
  }
  std::string ref;
  bool agree = true;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    if (ref.empty()) {
      ref = r.optimum;
    } else if (r.optimum != ref) {
      agree = false;
    }
  }
  for (auto& r : rows) {
    if (r.status == "ok") r.agrees = agree ? "yes" : "no";
  }
  return rows;
}

int cmd_bench(const BenchArgs& a) {
  if (a.repeat < 1) throw Error("--repeat must be at least 1");
  std::vector<Algo> algos;
  for (const auto& s : split_list(a.algos)) algos.push_back(parse_algo(s));
  if (algos.empty()) throw Error("--algos is empty");
  if (!fs::is_directory(a.corpus)) throw Error("corpus '" + a.corpus + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a.corpus)) {
    if (e.is_regular_file() && e.path().extension() == ".json" &&
        e.path().filename().string().find(".spec.") == std::string::npos) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());

  int workers = 1;
  if (const char* w = std::getenv("DDT_WORKERS")) {
    try {
      workers = std::max(1, std::stoi(w));
    } catch (const std::exception&) {
      throw Error("DDT_WORKERS must be an integer");
    }
  }
  std::vector<std::vector<BenchRow>> results(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) results[i] = bench_one(files[i], algos, a.repeat);
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::min<int>(workers, static_cast<int>(files.size())); ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "instance,algo,status,optimum,wall_ms,dp_states,agrees\n";
  bool disagree = false;
  bool errors = false;
  for (const auto& rows : results) {
    for (const auto& r : rows) {
      csv << csv_field(r.instance) << ',' << csv_field(r.algo) << ',' << csv_field(r.status) << ','
          << csv_field(r.optimum) << ',' << (r.status == "ok" ? ms_text(r.wall_ms) : "") << ','
          << (r.status == "ok" ? std::to_string(r.states) : "") << ',' << r.agrees << '\n';
      if (r.agrees == "no") disagree = true;
      if (r.status != "ok") errors = true;
    }
  }
  emit(csv.str(), a.out);
  if (disagree) {
    std::cerr << "ddt: exact solvers disagree on at least one instance\n";
    return kExitDisagree;
  }
  if (errors && a.strict) return kExitRejected;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for drone delivery with selectable start positions"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the optimum delivery time");
  solve_cmd->add_option("instance", sa.instance, "Instance JSON")->required();
  solve_cmd->add_option("--algo", sa.algo, "auto|path|tree|tw|order|oracle")
      ->check(CLI::IsMember({"auto", "path", "tree", "tw", "order", "oracle"}));
  solve_cmd->add_option("--order", sa.order, "Comma-separated agent ids for --algo order");
  solve_cmd->add_option("--max-len", sa.max_len, "Longest agent sequence the oracle tries");
  solve_cmd->add_option("--decomp", sa.decomp, "min-fill|min-degree")
      ->check(CLI::IsMember({"min-fill", "min-degree"}));
  solve_cmd->add_option("--decimal", sa.decimal, "Also print a decimal approximation with this many digits");
  solve_cmd->add_option("--schedule-out", sa.schedule_out, "Write the schedule here instead of inline");
  solve_cmd->add_flag("--dump-states", sa.dump_states, "Print per-node table sizes of the tw solver to stderr");

  std::string v_inst, v_sched, v_mode = "sp";
  int v_decimal = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against an instance");
  verify_cmd->add_option("instance", v_inst, "Instance JSON")->required();
  verify_cmd->add_option("schedule", v_sched, "Schedule JSON")->required();
  verify_cmd->add_option("--mode", v_mode, "sp|fp")->check(CLI::IsMember({"sp", "fp"}));
  verify_cmd->add_option("--decimal", v_decimal, "Decimal digits");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("kind", ga.kind, "random-path|random-graph|tree-intersection|gadget")
      ->required()
      ->check(CLI::IsMember({"random-path", "random-graph", "tree-intersection", "gadget"}));
  gen_cmd->add_option("--seed", ga.seed, "Random seed");
  gen_cmd->add_option("--max-n", ga.max_n, "Upper bound on vertices (per agent for tree-intersection)");
  gen_cmd->add_option("--max-k", ga.max_k, "Upper bound on agents");
  gen_cmd->add_option("--max-len", ga.max_len, "Upper bound on edge length");
  gen_cmd->add_flag("--no-zero", ga.no_zero, "Forbid zero-length edges");
  gen_cmd->add_option("--p", ga.p, "Gadget elements, strictly decreasing");
  gen_cmd->add_option("--k", ga.k, "Gadget part count");
  gen_cmd->add_option("--an", ga.an, "Gadget growth factor a(n)");
  gen_cmd->add_option("-o,--out", ga.out, "Output file (default stdout)");
  gen_cmd->add_option("--sidecar", ga.sidecar, "Gadget spec output file");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over a directory of instances");
  bench_cmd->add_option("corpus", ba.corpus, "Directory of instance JSON files")->required();
  bench_cmd->add_option("--algos", ba.algos, "Comma-separated algorithms");
  bench_cmd->add_option("--repeat", ba.repeat, "Runs per instance and algorithm; the fastest is reported");
  bench_cmd->add_option("-o,--out", ba.out, "CSV output file (default stdout)");
  bench_cmd->add_flag("--strict", ba.strict, "Exit 1 when any instance fails to solve");

  std::string i_inst;
  bool i_dot = false;
  auto* isect_cmd = app.add_subcommand("isect", "Inspect the intersection graph");
  isect_cmd->add_option("instance", i_inst, "Instance JSON")->required();
  isect_cmd->add_flag("--dot", i_dot, "Print Graphviz DOT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa);
    if (*verify_cmd) return cmd_verify(v_inst, v_sched, v_mode, v_decimal);
    if (*gen_cmd) return cmd_gen(ga);
    if (*bench_cmd) return cmd_bench(ba);
    if (*isect_cmd) return cmd_isect(i_inst, i_dot);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::cerr << "ddt: " << msg << "\n";
    return msg.rfind("internal:", 0) == 0 ? kExitDisagree : kExitUsage;
  }
  return kExitUsage;
}

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "gsep/error.hpp"
#include "support/checks.hpp"

using namespace gsep;
using testing::Tally;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;  // printed under the line on failure

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 10) notes.push_back(why);
  }
};

// SEPARABLE (instance, certificates) and NOT instances gathered from criteria 1-6.
struct Verdict {
  std::string name;
  io::Instance inst;
  bool separable;
  std::vector<Certificate> certs;
};
std::vector<Verdict> g_verdicts;

void record(const std::string& name, const io::Instance& inst, const SeparabilityReport& trace) {
  Verdict v{name, inst, trace.separable, {}};
  if (trace.separable)
    for (const auto& c : trace.components) v.certs.push_back(*c.certificate);
  g_verdicts.push_back(std::move(v));
}

bool oracle(const io::Instance& inst) {
  return oracle_decide(*inst.ring, inst.ring->support(inst.subgroupoid), OracleOptions{inst.max_rank}).separable;
}

std::string params_name(const std::string& fixture, const io::Params& p) {
  std::string s = fixture;
  for (const auto& [k, v] : p) s += " " + k + "=" + v;
  return s;
}

Outcome criterion1() {
  Outcome o;
  double worst = 0;
  int n_inst = 0;
  for (Residue m = 2; m <= 5; ++m)
    for (std::size_t n : {2u, 3u}) {
      io::Params p{{"n", std::to_string(n)}, {"m", std::to_string(m)}};
      auto t0 = Clock::now();
      auto inst = io::make_fixture("matrix", p);
      auto ext = RelativeExtension::make(inst.ring, inst.delta());
      auto tr = decide_trace(ext);
      bool orc = oracle(inst);
      double dt = seconds_since(t0);
      worst = std::max(worst, dt);
      ++n_inst;
      record(params_name("matrix", p), inst, tr);
      if (!tr.separable || !orc) o.fail(params_name("matrix", p) + ": trace=" + std::to_string(tr.separable) + " oracle=" + std::to_string(orc));
      if (dt >= 5.0) o.fail(params_name("matrix", p) + ": " + std::to_string(dt) + " s");
    }
  std::ostringstream d;
  d << n_inst << " instances, slowest " << worst << " s (limit 5 s)";
  o.detail = d.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  int n_inst = 0;
  for (std::size_t k : {2u, 3u, 4u})
    for (Residue m = 2; m <= 9; ++m) {
      io::Params p{{"G", "C" + std::to_string(k)}, {"H", "1"}, {"m", std::to_string(m)}};
      auto inst = io::make_fixture("group_ring", p);
      auto ext = RelativeExtension::make(inst.ring, inst.delta());
      auto tr = decide_trace(ext);
      bool nr = decide_normal(ext).separable;
      bool orc = oracle(inst);
      bool expected = gcd(static_cast<Residue>(k), m) == 1;
      record(params_name("group_ring", p), inst, tr);
      ++n_inst;
      if (tr.separable != expected || nr != expected || orc != expected)
        o.fail(params_name("group_ring", p) + ": expected " + std::to_string(expected) + " trace=" +
               std::to_string(tr.separable) + " normal=" + std::to_string(nr) + " oracle=" + std::to_string(orc));
    }
  o.detail = std::to_string(n_inst) + " pairs (k,m), exact match with gcd(k,m)=1";
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (Residue m = 2; m <= 9; ++m) {
    io::Params p{{"G", "C4"}, {"H", "C2"}, {"m", std::to_string(m)}};
    auto inst = io::make_fixture("group_ring", p);
    auto ext = RelativeExtension::make(inst.ring, inst.delta());
    auto tr = decide_trace(ext);
    bool nr = decide_normal(ext).separable;
    bool orc = oracle(inst);
    bool expected = m % 2 == 1;
    record(params_name("group_ring", p), inst, tr);
    if (tr.separable != expected || nr != expected || orc != expected)
      o.fail(params_name("group_ring", p) + ": trace=" + std::to_string(tr.separable) + " normal=" +
             std::to_string(nr) + " oracle=" + std::to_string(orc));
  }
  o.detail = "m = 2..9, separable iff 2 is a unit mod m";
  return o;
}

Outcome criterion4(const std::vector<testing::CorpusInstance>& corpus) {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t sep = 0, disagreements = 0, non_normal = 0, non_normal_sep = 0;
  std::map<std::string, std::size_t> families;
  for (const auto& c : corpus) {
    auto v = testing::all_verdicts(c.inst);
    ++families[c.family];
    sep += v.trace;
    if (!check_normal(c.inst.delta()).normal) {
      ++non_normal;
      non_normal_sep += v.trace;
    }
    if (v.trace != v.oracle_delta || v.trace != v.oracle_lambda) {
      ++disagreements;
      o.fail(c.description + ": trace=" + std::to_string(v.trace) + " oracle(Delta)=" + std::to_string(v.oracle_delta) +
             " oracle(Lambda)=" + std::to_string(v.oracle_lambda));
    }
    if (!v.agree() && v.trace == v.oracle_delta && v.trace == v.oracle_lambda) o.fail(c.description + ": normal/twisted disagree");
  }
  double dt = seconds_since(t0);
  if (corpus.size() < 200) o.fail("corpus has fewer than 200 instances");
  if (dt >= 600) o.fail("runtime " + std::to_string(dt) + " s");
  std::ostringstream d;
  d << corpus.size() << " instances (";
  bool first = true;
  for (const auto& [f, n] : families) {
    d << (first ? "" : ", ") << f << " " << n;
    first = false;
  }
  d << "), " << sep << " separable, " << non_normal << " with non-normal Delta (" << non_normal_sep
    << " separable), " << disagreements << " disagreements, " << dt << " s (limit 600 s)";
  o.detail = d.str();
  return o;
}

Outcome criterion5(const std::vector<testing::CorpusInstance>& corpus) {
  Outcome o;
  for (std::string g : {"C2", "C3"}) {
    auto inst = io::make_fixture("product", {{"G", g}, {"m", "3"}});
    auto t = transversal(inst.delta());
    std::size_t order = g == "C2" ? 2 : 3;
    // object 0 carries Delta(0) = G, object 1 the trivial group
    if (t.between(0, 0).size() != 1) o.fail(g + ": |T_{0,0}| = " + std::to_string(t.between(0, 0).size()));
    if (t.between(1, 0).size() != order) o.fail(g + ": |T_{1,0}| = " + std::to_string(t.between(1, 0).size()));
  }
  std::size_t normal = 0, pairs = 0;
  for (const auto& c : corpus) {
    auto delta = c.inst.delta();
    if (!check_normal(delta).normal) continue;
    ++normal;
    const FiniteGroupoid& g = *c.inst.groupoid;
    auto t = transversal(delta);
    for (ObjectId f = 0; f < g.object_count(); ++f)
      for (ObjectId e = 0; e < g.object_count(); ++e) {
        if (g.hom(f, e).empty()) continue;
        ++pairs;
        if (t.between(f, e).size() != isotropy_index(delta, e)) o.fail(c.description + ": |T_{f,e}| != index");
      }
  }
  o.detail = "product example for C2, C3; " + std::to_string(normal) + " normal corpus instances, " +
             std::to_string(pairs) + " connected pairs";
  return o;
}

Outcome criterion6() {
  Outcome o;
  int n_inst = 0;
  for (Residue m : {3, 5, 7})
    for (std::size_t k : {2u, 3u})
      for (int seed = 1; seed <= 6; ++seed) {
        io::Params p{{"k", std::to_string(k)}, {"m", std::to_string(m)}, {"seed", std::to_string(seed)}};
        auto inst = io::make_fixture("twisted", p);
        auto ext = RelativeExtension::make(inst.ring, inst.delta());
        bool tw = decide_twisted(ext).separable;
        auto tr = decide_trace(ext);
        bool expected = Modulus(m).is_unit(static_cast<Residue>(k));
        record(params_name("twisted", p), inst, tr);
        ++n_inst;
        if (tw != expected || tr.separable != expected)
          o.fail(params_name("twisted", p) + ": twisted=" + std::to_string(tw) + " trace=" + std::to_string(tr.separable));
      }
  o.detail = std::to_string(n_inst) + " random cocycles over m in {3,5,7}, k in {2,3}";
  return o;
}

Outcome criterion7(const std::vector<testing::CorpusInstance>& corpus, std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  std::vector<io::Instance> insts;
  for (const auto& c : corpus) insts.push_back(c.inst);
  insts.push_back(io::make_fixture("matrix", {{"n", "3"}, {"m", "4"}}));
  insts.push_back(io::make_fixture("group_ring", {{"G", "S3"}, {"H", "C3"}, {"m", "6"}}));
  insts.push_back(io::make_fixture("twisted", {{"k", "3"}, {"m", "7"}, {"seed", "2"}}));
  insts.push_back(io::make_fixture("skew_gf", {}));
  insts.push_back(io::make_fixture("product", {{"G", "C3"}, {"m", "2"}}));
  std::vector<std::pair<std::string, Tally>> lemmas = {{"gamma-composition", {}},  {"choice-independence", {}},
                                                      {"intertwining", {}},       {"transversal-invariance", {}},
                                                      {"trace-transport", {}},    {"w-identities", {}},
                                                      {"fixed-ring", {}}};
  for (const auto& inst : insts) {
    auto ext = RelativeExtension::make(inst.ring, inst.delta());
    testing::check_gamma_composition(ext, rng, lemmas[0].second);
    testing::check_choice_independence(ext, 1 + rng() % 100000, rng, lemmas[1].second);
    testing::check_intertwining(ext, rng, lemmas[2].second);
    testing::check_transversal_invariance(ext, rng, lemmas[3].second);
    testing::check_trace_transport(ext, rng, lemmas[4].second);
    testing::check_w_identities(ext, 1 + rng() % 100000, lemmas[5].second);
    testing::check_fixed_ring(ext, lemmas[6].second);
  }
  std::ostringstream d;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    const auto& [name, t] = lemmas[i];
    d << (i ? ", " : "") << name << " " << t.checks - t.failures << "/" << t.checks;
    if (t.checks < 100) o.fail(name + ": only " + std::to_string(t.checks) + " checks");
    for (const auto& m : t.messages) o.fail(name + ": " + m);
  }
  o.detail = d.str();
  return o;
}

// Runs the CLI; returns the exit status, or -1 if it could not be run.
int run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion8(const std::string& cli, std::uint64_t seed) {
  Outcome o;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("gsep-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::mt19937_64 rng(seed);
  std::size_t accepted = 0, rejected = 0, cli_runs = 0;
  for (std::size_t i = 0; i < g_verdicts.size(); ++i) {
    const auto& v = g_verdicts[i];
    auto ext = RelativeExtension::make(v.inst.ring, v.inst.delta());
    const GradedRing& r = *v.inst.ring;
    std::string inst_path = (dir / ("inst" + std::to_string(i) + ".json")).string();
    std::ofstream(inst_path) << io::dump_canonical(io::instance_to_json(v.inst));
    auto cert_json = [&](const std::vector<Certificate>& certs) {
      io::Json arr = io::Json::array();
      for (const auto& c : certs) arr.push_back({{"f", c.f}, {"r", c.r}});
      std::string path = (dir / "cert.json").string();
      std::ofstream(path) << arr.dump();
      return path;
    };
    if (v.separable) {
      bool lib = certify(ext, v.certs).ok;
      bool element = true;
      try {
        certificate_to_element(ext, v.certs);
      } catch (const Error& e) {
        element = false;
      }
      int code = cli.empty() ? 0 : run_cli(cli, "certify " + inst_path + " --cert " + cert_json(v.certs));
      cli_runs += !cli.empty();
      if (lib && element && code == 0)
        ++accepted;
      else
        o.fail(v.name + ": certificate not accepted (cli exit " + std::to_string(code) + ")");
    } else {
      // No certificate exists, so every candidate must be refused: the unit,
      // each basis vector, and random elements of the central subring.
      auto comps = connected_components(r.groupoid());
      std::vector<Vector> candidates = {r.algebra().unit()};
      for (std::size_t k = 0; k < r.rank(); ++k) candidates.push_back(r.algebra().basis(k));
      auto central = central_subring(ext);
      for (int k = 0; k < 8; ++k) candidates.push_back(testing::random_combination(r.modulus(), r.rank(), central, rng));
      bool first = true;
      for (const auto& cand : candidates) {
        std::vector<Certificate> certs;
        for (const auto& cls : comps.classes) certs.push_back({cls.front(), cand});
        bool lib_ok = certify(ext, certs).ok;
        int code = 1;
        if (first && !cli.empty()) {
          code = run_cli(cli, "certify " + inst_path + " --cert " + cert_json(certs));
          ++cli_runs;
          first = false;
        }
        if (lib_ok || code != 1)
          o.fail(v.name + ": perturbed certificate accepted");
        else
          ++rejected;
      }
    }
  }
  fs::remove_all(dir);
  std::ostringstream d;
  d << accepted << " certificates accepted, " << rejected << " perturbed certificates rejected, " << cli_runs
    << " CLI runs";
  o.detail = d.str();
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto inst = io::make_fixture("skew_gf", {});
  auto ext = RelativeExtension::make(inst.ring, inst.delta());
  Vector tr = crossed_trace(ext, 0, 0, Vector{0, 1});
  if (tr != Vector{1, 0}) o.fail("crossed_trace(omega) != 1");
  auto rep = decide_trace(ext);
  Vector omega = {0, 1, 0, 0};  // omega u_e
  if (!rep.separable)
    o.fail("decide_trace: not separable");
  else if (rep.components[0].certificate->r != omega)
    o.fail("certificate is not omega");
  o.detail = "crossed_trace(omega) = 1, certificate r = omega u_e";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = 20240601;
  std::size_t count = 200;
  std::string cli;
#ifdef GSEP_CLI
  cli = GSEP_CLI;
#endif
  app.add_option("--seed", seed, "Corpus seed");
  app.add_option("--count", count, "Corpus size for criterion 4");
  app.add_option("--cli", cli, "Path to graded-sep for the certify round trip");
  CLI11_PARSE(app, argc, argv);

  auto corpus = testing::random_corpus({.seed = seed, .count = count});
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"matrix rings separable over the diagonal", criterion1},
      {"group ring Z/m[C_k] separable iff gcd(k,m)=1", criterion2},
      {"Z/m[C4] over Z/m[C2] separable iff 2 invertible", criterion3},
      {"trace = oracle(Delta) = oracle(Lambda) on random corpus", [&] { return criterion4(corpus); }},
      {"transversal sizes, non-normal example and normal corpus", [&] { return criterion5(corpus); }},
      {"twisted rings: index criterion", criterion6},
      {"lemma suite", [&] { return criterion7(corpus, seed + 1); }},
      {"certificate soundness", [&] { return criterion8(cli, seed + 2); }},
      {"GF(4) over Z/2 with Frobenius", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %s  %s  [%s] (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}

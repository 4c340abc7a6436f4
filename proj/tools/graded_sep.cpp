// graded-sep: validate instances, decide separability, check certificates and
// emit fixtures. JSON goes to stdout, human-readable notes to stderr.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gsep/instance.hpp"

namespace {

using gsep::io::Json;

enum Exit : int {
  kOk = 0,
  kNo = 1,
  kViolation = 2,
  kParse = 3,
  kDisagree = 4,
  kNotStrong = 5,
};

struct Globals {
  std::size_t max_rank = 0;  // 0: use the instance's bound
  std::uint64_t seed = 0;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

gsep::OracleOptions oracle_options(const gsep::io::Instance& inst, const Globals& g) {
  return gsep::OracleOptions{g.max_rank ? g.max_rank : inst.max_rank};
}

gsep::RelativeExtension extension(const gsep::io::Instance& inst, const Globals& g) {
  gsep::ExtensionOptions opts;
  opts.partition.seed = g.seed;
  return gsep::RelativeExtension::make(inst.ring, inst.delta(), opts);
}

bool alpha_trivial(const gsep::GradedRing& r) {
  const gsep::CrossedSystem* sys = r.crossed();
  if (!sys) return false;
  for (gsep::MorphismId s = 0; s < r.groupoid().morphism_count(); ++s)
    if (!(sys->algebra(r.groupoid().dom(s)) == sys->algebra(r.groupoid().cod(s))) ||
        !(sys->alpha[s] == gsep::Matrix::identity(sys->alpha[s].rows())))
      return false;
  return true;
}

int cmd_validate(const std::string& path) {
  auto inst = gsep::io::load_instance_file(path);
  auto delta = inst.delta();
  auto strong = gsep::check_strong(*inst.ring);
  auto normal = gsep::check_normal(delta);
  Json out{{"valid", true},
           {"objects", inst.groupoid->object_count()},
           {"morphisms", inst.groupoid->morphism_count()},
           {"rank", inst.ring->rank()},
           {"modulus", inst.ring->modulus().value()},
           {"kind", inst.ring->crossed() ? gsep::kind_name(inst.ring->crossed()->kind) : "graded"},
           {"strong", strong.strong},
           {"normal", normal.normal},
           {"components", gsep::connected_components(*inst.groupoid).classes.size()}};
  if (!strong.strong) out["strong_witness"] = strong.witness;
  emit(out);
  return kOk;
}

Json oracle_json(const gsep::SeparabilityReport& r, const char* subring) {
  Json j = gsep::io::report_to_json(r);
  j["subring"] = subring;
  return j;
}

int cmd_decide(const std::string& path, const std::string& method, const Globals& g) {
  auto inst = gsep::io::load_instance_file(path);
  auto delta = inst.delta();
  auto opts = oracle_options(inst, g);
  if (method == "oracle") {
    auto r = gsep::oracle_decide(*inst.ring, inst.ring->support(delta.members()), opts);
    emit(oracle_json(r, "delta"));
    return r.separable ? kOk : kNo;
  }
  if (method != "all") {
    auto m = gsep::parse_method(method);
    if (!m) throw CLI::ValidationError("--method", "unknown method " + method);
    auto ext = extension(inst, g);
    gsep::SeparabilityReport r = *m == gsep::Method::Trace    ? gsep::decide_trace(ext)
                                 : *m == gsep::Method::Normal ? gsep::decide_normal(ext)
                                                              : gsep::decide_twisted(ext);
    emit(gsep::io::report_to_json(r));
    return r.separable ? kOk : kNo;
  }

  Json reports = Json::array();
  std::vector<bool> verdicts;
  auto strong = gsep::check_strong(*inst.ring);
  if (strong.strong) {
    auto ext = extension(inst, g);
    auto tr = gsep::decide_trace(ext);
    verdicts.push_back(tr.separable);
    reports.push_back(gsep::io::report_to_json(tr));
    if (gsep::check_normal(delta).normal) {
      auto nr = gsep::decide_normal(ext);
      verdicts.push_back(nr.separable);
      reports.push_back(gsep::io::report_to_json(nr));
    }
    if (alpha_trivial(*inst.ring)) {
      auto tw = gsep::decide_twisted(ext);
      verdicts.push_back(tw.separable);
      reports.push_back(gsep::io::report_to_json(tw));
    }
    auto ol = gsep::oracle_decide(*inst.ring, inst.ring->support(ext.lambda().members()), opts);
    verdicts.push_back(ol.separable);
    reports.push_back(oracle_json(ol, "lambda"));
  } else {
    std::cerr << "not strongly graded (witness " << strong.witness << "); running the oracle only\n";
  }
  auto od = gsep::oracle_decide(*inst.ring, inst.ring->support(delta.members()), opts);
  verdicts.push_back(od.separable);
  reports.push_back(oracle_json(od, "delta"));

  bool agree = std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == verdicts.front(); });
  emit(Json{{"method", "all"}, {"agree", agree}, {"separable", verdicts.front()}, {"reports", reports}});
  if (!agree) {
    std::cerr << "methods disagree\n";
    return kDisagree;
  }
  return verdicts.front() ? kOk : kNo;
}

int cmd_certify(const std::string& path, const std::string& cert_path, const Globals& g) {
  auto inst = gsep::io::load_instance_file(path);
  std::ifstream in(cert_path);
  if (!in) throw gsep::io::ParseError("cannot open " + cert_path);
  Json cj;
  try {
    in >> cj;
  } catch (const Json::exception& e) {
    throw gsep::io::ParseError(e.what());
  }
  auto certs = gsep::io::certificates_from_json(cj);
  auto ext = extension(inst, g);
  auto outcome = gsep::certify(ext, certs, oracle_options(inst, g));
  Json out{{"ok", outcome.ok}};
  if (!outcome.ok) out["failed"] = Json{{"step", outcome.step}, {"witness", outcome.witness}, {"detail", outcome.detail}};
  emit(out);
  if (!outcome.ok) std::cerr << "certificate rejected at " << outcome.step << ": " << outcome.detail << "\n";
  return outcome.ok ? kOk : kNo;
}

int cmd_fixtures(const std::string& name, const std::vector<std::string>& raw, const std::string& out_path) {
  gsep::io::Params params;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw gsep::io::ParseError("fixture parameter must be key=value: " + kv);
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto inst = gsep::io::make_fixture(name, params);
  std::string text = gsep::io::dump_canonical(gsep::io::instance_to_json(inst));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
    std::cerr << "wrote " << out_path << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability of groupoid-graded rings over Z/m"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--max-rank", globals.max_rank, "Bound on tensor presentation size");
  app.add_option("--seed", globals.seed, "Seed for randomized partitions of unity (0: canonical)");

  std::string file, method = "trace", cert, fixture, out_path;
  std::vector<std::string> params;

  auto* validate = app.add_subcommand("validate", "Validate an instance file");
  validate->add_option("file", file)->required();
  auto* decide = app.add_subcommand("decide", "Decide separability of R over R_Delta");
  decide->add_option("file", file)->required();
  decide->add_option("--method", method)->check(CLI::IsMember({"trace", "normal", "twisted", "oracle", "all"}));
  auto* certify = app.add_subcommand("certify", "Check a separability certificate");
  certify->add_option("file", file)->required();
  certify->add_option("--cert", cert)->required();
  auto* fixtures = app.add_subcommand("fixtures", "Emit a fixture instance");
  fixtures->add_option("name", fixture)->required();
  fixtures->add_option("params", params, "key=value parameters");
  fixtures->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*decide) return cmd_decide(file, method, globals);
    if (*certify) return cmd_certify(file, cert, globals);
    if (*fixtures) return cmd_fixtures(fixture, params, out_path);
  } catch (const gsep::io::ParseError& e) {
    emit(Json{{"error", "parse"}, {"message", e.what()}});
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const gsep::Error& e) {
    emit(Json{{"valid", false}, {"violation", gsep::io::violation_to_json(e.violation())}});
    if (e.fault() == gsep::Fault::NotStronglyGraded) {
      std::cerr << "not strongly graded at morphism " << e.violation().witness.at(0) << "\n";
      return kNotStrong;
    }
    std::cerr << e.what() << "\n";
    return kViolation;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  }
  return kOk;
}

// khat: command-line front end for the localized group library.
//
// Reports are JSON objects with sorted keys on stdout (or --out). Exit
// status is 0 on success, 2 for invalid input or violated preconditions,
// and 1 for internal errors.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "khat/json_io.hpp"
#include "khat/khat.hpp"

namespace {

using namespace khat;

struct GlobalOptions {
  std::string primes = "2,3,5,7";
  std::uint64_t seed = 0;
  std::string out;
  bool unsafe_n = false;
  bool timing = false;
};

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw ValidationError(path + ": malformed JSON: " + e.what());
  }
}

LocalizedGroup load_group(const std::string &path) {
  try {
    return group_from_json(read_json_file(path), "group");
  } catch (const DimensionError &e) {
    throw DimensionError(path + ": " + e.what());
  } catch (const ValidationError &e) {
    throw ValidationError(path + ": " + e.what());
  }
}

QVector parse_vector_arg(const std::string &text, std::size_t dim, const std::string &what) {
  QVector v;
  try {
    v = parse_vector(text);
  } catch (const ValidationError &e) {
    throw ValidationError(what + ": " + e.what());
  }
  if (v.size() != dim)
    throw DimensionError(what + ": length " + std::to_string(v.size()) +
                         " differs from ambient_dim " + std::to_string(dim));
  return v;
}

Integer parse_prime_arg(const std::string &text) {
  Integer p = parse_integer(text);
  if (!is_prime(p))
    throw ValidationError("prime: " + text + " is not prime");
  return p;
}

/// "0,2", "{0,2}" or "" (the empty set).
IndexSet parse_index_set(std::string text) {
  std::erase_if(text, [](char c) { return c == '{' || c == '}' || c == ' '; });
  IndexSet out;
  if (text.empty())
    return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("index set: '" + part + "' is not a nonnegative integer");
    out.insert(std::stoul(part));
  }
  return out;
}

class Runner {
public:
  explicit Runner(const GlobalOptions &opts) : opts_(opts) {}

  void start(std::string command) {
    command_ = std::move(command);
    primes_ = parse_prime_tuple(opts_.primes);
    started_ = std::chrono::steady_clock::now();
  }

  [[nodiscard]] const PrimeTuple &primes() const { return primes_; }

  [[nodiscard]] std::size_t cap(std::size_t n) const {
    return opts_.unsafe_n ? std::max(n, default_experiment_cap) : default_experiment_cap;
  }

  void emit_report(Json inputs, Json result) const {
    Json report = {{"command", command_},
                   {"inputs", std::move(inputs)},
                   {"primes", to_json(primes_)},
                   {"result", std::move(result)},
                   {"seed", opts_.seed}};
    if (opts_.timing) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started_;
      report["timing"] = {{"seconds", dt.count()}};
    }
    write(report);
  }

  void write(const Json &j) const {
    const std::string text = j.dump(2) + "\n";
    if (opts_.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(opts_.out);
    if (!f)
      throw ValidationError(opts_.out + ": cannot open output file");
    f << text;
  }

private:
  const GlobalOptions &opts_;
  std::string command_;
  PrimeTuple primes_;
  std::chrono::steady_clock::time_point started_;
};

Json group_checks(const LocalizedGroup &g, const PrimeTuple &p) {
  return {{"classification", to_json(classify(g, p))}, {"rank", g.rank()}};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact computations with prime-localized subgroups of Q^d"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--primes", opts.primes, "Prime tuple p1,p3,p4,p5")->capture_default_str();
  app.add_option("--seed", opts.seed, "Seed echoed into reports")->capture_default_str();
  app.add_option("--out", opts.out, "Write the report to this file instead of stdout");
  app.add_flag("--unsafe-n", opts.unsafe_n, "Lift the experiment size cap");
  app.add_flag("--timing", opts.timing, "Include wall-clock timing in reports");

  Runner run(opts);

  // build
  auto *build = app.add_subcommand("build", "Write a witness-family group file");
  std::string family;
  std::size_t build_n = 1;
  std::string build_u;
  build->add_option("family", family, "base or U")->required()->check(CLI::IsMember({"base", "U"}));
  build->add_option("--n", build_n, "Rank parameter n >= 1")->required();
  build->add_option("--u", build_u, "Subset U of {0..n-1}, e.g. 0,2");
  build->callback([&] {
    run.start("build");
    const IndexSet u = parse_index_set(build_u);
    if (family == "base" && !u.empty())
      throw ValidationError("build base takes no --u");
    run.write(to_json(family == "base" ? build_G_base(build_n, run.primes())
                                       : build_G_U(build_n, u, run.primes())));
  });

  // classify
  auto *cls = app.add_subcommand("classify", "Classify a group with respect to the prime tuple");
  std::string cls_path;
  cls->add_option("group", cls_path, "Group file")->required();
  cls->callback([&] {
    run.start("classify");
    const LocalizedGroup g = load_group(cls_path);
    run.emit_report({{"group", cls_path}}, to_json(classify(g, run.primes())));
  });

  // member
  auto *mem = app.add_subcommand("member", "Decide membership of a vector");
  std::string mem_path, mem_vec;
  mem->add_option("group", mem_path, "Group file")->required();
  mem->add_option("vector", mem_vec, "Comma-separated rationals, e.g. 1/2,0")->required();
  mem->callback([&] {
    run.start("member");
    const LocalizedGroup g = load_group(mem_path);
    const QVector v = parse_vector_arg(mem_vec, g.ambient_dim(), "vector");
    run.emit_report({{"group", mem_path}, {"vector", to_json(v)}}, {{"member", member(v, g)}});
  });

  // pomega
  auto *pom = app.add_subcommand("pomega", "Compute the subgroup of infinitely p-divisible elements");
  std::string pom_path, pom_prime;
  pom->add_option("group", pom_path, "Group file")->required();
  pom->add_option("prime", pom_prime, "Prime p")->required();
  pom->callback([&] {
    run.start("pomega");
    const LocalizedGroup g = load_group(pom_path);
    const Integer p = parse_prime_arg(pom_prime);
    run.emit_report({{"group", pom_path}, {"prime", to_json(p)}}, {{"group", to_json(p_omega(g, p))}});
  });

  // pure
  auto *pur = app.add_subcommand("pure", "Decide whether H is pure in G");
  std::string pur_h, pur_g;
  pur->add_option("H", pur_h, "Subgroup file")->required();
  pur->add_option("G", pur_g, "Group file")->required();
  pur->callback([&] {
    run.start("pure");
    const LocalizedGroup h = load_group(pur_h);
    const LocalizedGroup g = load_group(pur_g);
    run.emit_report({{"H", pur_h}, {"G", pur_g}}, {{"pure", is_pure(h, g)}});
  });

  // closure
  auto *clo = app.add_subcommand("closure", "Compute the K-hat closure inside an ambient group");
  std::string clo_ambient, clo_base;
  std::vector<std::string> clo_elems;
  clo->add_option("ambient", clo_ambient, "Ambient group file")->required();
  clo->add_option("--base", clo_base, "Base group file");
  clo->add_option("--elems", clo_elems, "Element vectors, e.g. --elems 1,0 0,1/3");
  clo->callback([&] {
    run.start("closure");
    const LocalizedGroup ambient = load_group(clo_ambient);
    LocalizedGroup base(ambient.ambient_dim());
    Json inputs = {{"ambient", clo_ambient}};
    if (!clo_base.empty()) {
      base = load_group(clo_base);
      inputs["base"] = clo_base;
    }
    std::vector<QVector> elems;
    Json jelems = Json::array();
    for (std::size_t i = 0; i < clo_elems.size(); ++i) {
      elems.push_back(parse_vector_arg(clo_elems[i], ambient.ambient_dim(),
                                       "elems[" + std::to_string(i) + "]"));
      jelems.push_back(to_json(elems.back()));
    }
    inputs["elems"] = jelems;
    run.emit_report(inputs, to_json(closure_op(elems, base, ambient, run.primes())));
  });

  // gtype-eq
  auto *gte = app.add_subcommand("gtype-eq", "Compare the Galois types of b1 in N1 and b2 in N2 over a base");
  std::string gte_base, gte_n1, gte_b1, gte_n2, gte_b2;
  gte->add_option("base", gte_base, "Base group file")->required();
  gte->add_option("N1", gte_n1, "First ambient group file")->required();
  gte->add_option("b1", gte_b1, "First element")->required();
  gte->add_option("N2", gte_n2, "Second ambient group file")->required();
  gte->add_option("b2", gte_b2, "Second element")->required();
  gte->callback([&] {
    run.start("gtype-eq");
    const LocalizedGroup base = load_group(gte_base);
    const LocalizedGroup n1 = load_group(gte_n1);
    const LocalizedGroup n2 = load_group(gte_n2);
    const QVector b1 = parse_vector_arg(gte_b1, n1.ambient_dim(), "b1");
    const QVector b2 = parse_vector_arg(gte_b2, n2.ambient_dim(), "b2");
    auto t1 = gtype(b1, base, n1, run.primes());
    auto t2 = gtype(b2, base, n2, run.primes());
    Json result = to_json(gtype_equal(t1, t2));
    result["types"] = Json::array({to_json(t1), to_json(t2)});
    run.emit_report({{"base", gte_base},
                     {"N1", gte_n1},
                     {"b1", to_json(b1)},
                     {"N2", gte_n2},
                     {"b2", to_json(b2)}},
                    result);
  });

  // experiment
  auto *exp = app.add_subcommand("experiment", "Run the finite-rank experiments");
  exp->require_subcommand(1);

  auto *ins = exp->add_subcommand("instability", "Count distinct Galois types of z_0 over G_base(n)");
  std::size_t ins_n = 1;
  ins->add_option("--n", ins_n, "Rank parameter")->required();
  ins->callback([&] {
    run.start("experiment instability");
    auto r = instability_report(ins_n, run.primes(), run.cap(ins_n));
    run.emit_report({{"n", ins_n}}, to_json(r));
  });

  auto *jep = exp->add_subcommand("jep", "Jointly embed two groups into one K-hat group");
  std::string jep_g1, jep_g2;
  jep->add_option("G1", jep_g1, "First group file")->required();
  jep->add_option("G2", jep_g2, "Second group file")->required();
  jep->callback([&] {
    run.start("experiment jep");
    const LocalizedGroup g1 = load_group(jep_g1);
    const LocalizedGroup g2 = load_group(jep_g2);
    const JointEmbedding e = joint_embed(g1, g2, run.primes());
    const std::size_t d = e.h.ambient_dim();
    Json result = group_checks(e.h, run.primes());
    result["H"] = to_json(e.h);
    result["embeddings"] = Json::array(
        {{{"offset", e.offset1}, {"pure", is_pure(pad_group(g1, e.offset1, d), e.h)}},
         {{"offset", e.offset2}, {"pure", is_pure(pad_group(g2, e.offset2, d), e.h)}}});
    run.emit_report({{"G1", jep_g1}, {"G2", jep_g2}}, result);
  });

  auto *amg = exp->add_subcommand("amalgamation", "Certify that G_base <= G_U, G_V has no amalgam");
  std::size_t amg_n = 1;
  std::string amg_u, amg_v;
  amg->add_option("--n", amg_n, "Rank parameter")->required();
  amg->add_option("--u", amg_u, "Subset U")->required();
  amg->add_option("--v", amg_v, "Subset V")->required();
  amg->callback([&] {
    run.start("experiment amalgamation");
    if (amg_n > run.cap(amg_n))
      throw ValidationError("amalgamation: n = " + std::to_string(amg_n) + " exceeds the cap " +
                            std::to_string(run.cap(amg_n)));
    const IndexSet u = parse_index_set(amg_u), v = parse_index_set(amg_v);
    auto cert = amalgamation_certificate(amg_n, u, v, run.primes());
    auto check = verify_certificate(cert);
    run.emit_report({{"n", amg_n}, {"U", to_json(u)}, {"V", to_json(v)}},
                    {{"certificate", to_json(cert)},
                     {"verification", to_json(check)},
                     {"status", check.verified ? "all-verified" : "failed"}});
  });

  auto *ver = exp->add_subcommand("verify-certificate", "Re-check every fact of a certificate");
  std::string ver_path;
  ver->add_option("certificate", ver_path, "Certificate file or amalgamation report")->required();
  ver->callback([&] {
    run.start("experiment verify-certificate");
    Json j = read_json_file(ver_path);
    if (j.contains("result") && j["result"].contains("certificate"))
      j = j["result"]["certificate"];
    auto check = verify_certificate(certificate_from_json(j));
    Json result = to_json(check);
    result["status"] = check.verified ? "all-verified" : "failed";
    run.emit_report({{"certificate", ver_path}}, result);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError &e) {
    std::cerr << "khat: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError &e) {
    std::cerr << "khat: precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception &e) {
    std::cerr << "khat: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "khat: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// Command line front end: generators | verma | classify | center | weights | verify.

#include "CLI11.hpp"
#include "report.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <new>
#include <optional>
#include <string>
#include <thread>

namespace {

using namespace wgb;
using report::json;

enum Exit { ok = 0, failed = 1, validation = 2, internal = 3, resource = 4 };

struct RunConfig {
  std::string partition;
  std::string tableau;
  int depth = 8;
  int kmax = 3;
  std::string format = "json";
  std::uint64_t seed = 1;
  long max_terms = limits().max_terms;
  long max_matrix_dim = limits().max_matrix_dim;
  bool timings = false;
};

int thread_cap() {
  int hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("WGB_THREADS");
  if (!env || !*env) return hw;
  std::size_t used = 0;
  int cap = 0;
  try {
    cap = std::stoi(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == std::string(env).size() && cap >= 1, "WGB_THREADS must be a positive integer");
  return std::min(hw, cap);
}

Pyramid pyramid_of(const RunConfig& cfg) {
  require(!cfg.partition.empty(), "--partition is required");
  return build_pyramid(parse_partition(cfg.partition));
}

Tableau tableau_of(const RunConfig& cfg, const Pyramid& P) {
  require(!cfg.tableau.empty(), "--tableau is required");
  return parse_tableau(P, cfg.tableau);
}

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.format == "json")
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k];
  return s;
}

int cmd_generators(const RunConfig& cfg) {
  GeneratorSet G = build_generator_set(pyramid_of(cfg));
  std::ostringstream os;
  os << "partition " << G.P.label() << ": " << G.F.size() << " F, " << G.H.size() << " H, " << G.E.size()
     << " E\n";
  for (std::size_t k = 0; k < G.size(); ++k) {
    const auto& g = G.at(k);
    os << g.name << " [degree " << g.symbol.degree << "] = " << report::element_text(g.value) << '\n';
  }
  emit(cfg, report::generators(G), os.str());
  return ok;
}

int cmd_verma(const RunConfig& cfg) {
  Pyramid P = pyramid_of(cfg);
  Tableau A = tableau_of(cfg, P);
  GeneratorSet G = build_generator_set(P);
  VermaSlice V = build_verma(G, A.entries, cfg.depth);
  json j = report::verma(V, A);
  std::ostringstream os;
  os << "highest weight (" << join(to_strings(V.lambda)) << "), depth " << V.depth << '\n';
  for (const auto& w : j["weights"])
    os << "  depth " << w["depth"].get<int>() << "  weight (" << join(w["weight"].get<std::vector<std::string>>())
       << ")  m_dim " << w["m_dim"].get<int>() << "  l_dim " << w["l_dim"].get<int>() << '\n';
  os << "m_total " << j["m_total"].get<long>() << ", l_total " << j["l_total"].get<long>() << ", "
     << j["verdict"].get<std::string>() << " (classifier: " << j["classifier"].get<std::string>() << ")\n";
  emit(cfg, j, os.str());
  return ok;
}

int cmd_classify(const RunConfig& cfg) {
  Pyramid P = pyramid_of(cfg);
  json j = report::classification(tableau_of(cfg, P));
  std::ostringstream os;
  os << j["verdict"].get<std::string>();
  if (!j["witness"].is_null()) os << " (witness " << j["witness"].get<std::string>() << ")";
  os << "; RS shape " << j["rs_shape"].dump() << (j["rs_agrees"].get<bool>() ? " agrees" : " DISAGREES") << '\n';
  emit(cfg, j, os.str());
  return ok;
}

int cmd_center(const RunConfig& cfg) {
  Pyramid P = pyramid_of(cfg);
  Tableau A = tableau_of(cfg, P);
  require(cfg.kmax >= 1, "--kmax must be positive");
  GeneratorSet G = build_generator_set(P);
  auto cvs = central_character(G, A.entries, cfg.kmax);
  std::ostringstream os;
  for (const auto& cv : cvs)
    os << "G_" << cv.k << ": " << to_string(cv.via_psi) << " (highest weight " << to_string(cv.via_highest_weight)
       << ", verma " << to_string(cv.via_verma) << (cv.annihilates ? ", scalar on slice" : ", NOT scalar on slice")
       << ")\n";
  emit(cfg, report::center(P, A, cvs), os.str());
  return ok;
}

int cmd_weights(const RunConfig& cfg) {
  Pyramid P = pyramid_of(cfg);
  json j = report::weights(P);
  std::ostringstream os;
  os << "partition " << P.label() << ", jordan type " << j["jordan_type"].dump() << '\n';
  for (const char* key : {"eta", "o", "rho", "gamma", "delta", "epsilon", "rho0"})
    os << "  " << key << " = (" << join(j[key].get<std::vector<std::string>>()) << ")\n";
  emit(cfg, j, os.str());
  return ok;
}

int cmd_verify(const RunConfig& cfg) {
  SuiteOptions opt;
  if (!cfg.partition.empty()) opt.partition = build_pyramid(parse_partition(cfg.partition)).parts;
  opt.seed = cfg.seed;
  opt.threads = thread_cap();
  auto rs = run_acceptance(opt);
  std::ostringstream os;
  bool all = true, limit = false;
  for (const auto& r : rs) {
    os << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << ": " << r.detail;
    os << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
    all &= r.passed;
    limit |= r.resource_limit;
  }
  emit(cfg, report::suite(rs, cfg.timings), os.str());
  if (limit) return resource;
  return all ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite W-algebras of type A: generators, highest weight theory, tableau classification"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized property sampling");
  app.add_option("--max-terms", cfg.max_terms, "Largest element, in terms")->check(CLI::PositiveNumber);
  app.add_option("--max-matrix-dim", cfg.max_matrix_dim, "Largest linear system or module slice")
      ->check(CLI::PositiveNumber);

  auto partition = [&](CLI::App* s, bool needed) {
    auto* o = s->add_option("--partition,-p", cfg.partition, "Row lengths top to bottom, e.g. 1,2");
    if (needed) o->required();
  };
  auto* gen = app.add_subcommand("generators", "Explicit generators of U(g,e)");
  partition(gen, true);
  auto* ver = app.add_subcommand("verma", "Truncated Verma module and its irreducible quotient");
  partition(ver, true);
  ver->add_option("--tableau,-t", cfg.tableau, "Highest weight tableau")->required();
  ver->add_option("--depth", cfg.depth, "Truncation depth (at most 64)")->check(CLI::Range(0, 64));
  auto* cls = app.add_subcommand("classify", "Finite-dimensionality of the irreducible quotient");
  partition(cls, true);
  cls->add_option("--tableau,-t", cfg.tableau, "Highest weight tableau")->required();
  auto* cen = app.add_subcommand("center", "Central character on the Gelfand invariants");
  partition(cen, true);
  cen->add_option("--tableau,-t", cfg.tableau, "Highest weight tableau")->required();
  cen->add_option("--kmax", cfg.kmax, "Largest invariant degree")->check(CLI::PositiveNumber);
  auto* wts = app.add_subcommand("weights", "Special weights and grading data");
  partition(wts, true);
  auto* vfy = app.add_subcommand("verify", "Run the acceptance suite");
  partition(vfy, false);
  vfy->add_flag("--timings", cfg.timings, "Include timings in JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : validation;
  }

  try {
    limits().max_terms = cfg.max_terms;
    limits().max_matrix_dim = cfg.max_matrix_dim;
    if (gen->parsed()) return cmd_generators(cfg);
    if (ver->parsed()) return cmd_verma(cfg);
    if (cls->parsed()) return cmd_classify(cfg);
    if (cen->parsed()) return cmd_center(cfg);
    if (wts->parsed()) return cmd_weights(cfg);
    if (vfy->parsed()) return cmd_verify(cfg);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return validation;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return resource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return resource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  }
  return internal;
}

#pragma once

#include "json.hpp"
#include "wgb/acceptance.hpp"
#include "wgb/hwt.hpp"
#include "wgb/tableau.hpp"
#include "wgb/walg.hpp"

#include <string>
#include <vector>

namespace wgb::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "wgb-report/1";

/// Self-describing conventions shared by every JSON document.
inline json convention() {
  json c;
  c["partition"] = "row lengths weakly increase top to bottom; boxes numbered row-major from the top left";
  c["grading"] = "deg e_ij = 2(col(j) - col(i))";
  c["orders"] = {
      {"PR", "factors sorted by good degree descending, then (i,j)"},
      {"PI", "factors of negative degree, then degree 0, then positive, each block as in PR"},
      {"HC", "factors with i>j, then diagonal, then i<j, each block by (i,j)"},
  };
  c["shift"] = "S_nu sends e_ii to e_ii + nu_i";
  c["weights"] = "indexed by box, entries are exact rationals 'a' or 'a/b'";
  c["tableau"] = "rows top to bottom separated by ';', entries by ','";
  return c;
}

inline json envelope(const std::string& command) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["convention"] = convention();
  return j;
}

inline json rationals(const std::vector<Rational>& v) { return to_strings(v); }

inline json element(const PbwElt& u) {
  json terms = json::array();
  for (const auto& [m, c] : u.sorted_terms()) {
    json factors = json::array();
    for (auto [i, j] : factors_of(m)) factors.push_back({i, j});
    terms.push_back({{"coeff", to_string(c)}, {"factors", factors}});
  }
  return {{"order", u.order()->name}, {"terms", terms}};
}

/// Human-readable form, e.g. "e11*e22 - e12 - e22".
inline std::string element_text(const PbwElt& u) {
  auto ts = u.sorted_terms();
  if (ts.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ts) {
    Rational a = abs(c);
    out += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    first = false;
    std::string word;
    for (auto [i, j] : factors_of(m)) {
      if (!word.empty()) word += '*';
      word += "e" + std::to_string(i) + (u.order()->N > 9 ? "," : "") + std::to_string(j);
    }
    if (word.empty())
      out += to_string(a);
    else
      out += (a == 1 ? "" : to_string(a) + "*") + word;
  }
  return out;
}

inline json generator(const Generator& g, const char* kind) {
  json j;
  j["name"] = g.name;
  j["kind"] = kind;
  j["degree"] = g.symbol.degree;
  j["kazhdan"] = g.kazhdan;
  j["weight"] = rationals(g.symbol.weight);
  j["value"] = element(g.value);
  return j;
}

inline json generators(const GeneratorSet& G) {
  json j = envelope("generators");
  j["partition"] = G.P.parts;
  j["counts"] = {{"F", G.F.size()}, {"H", G.H.size()}, {"E", G.E.size()}};
  json list = json::array();
  for (const auto& g : G.F) list.push_back(generator(g, "F"));
  for (const auto& g : G.H) list.push_back(generator(g, "H"));
  for (const auto& g : G.E) list.push_back(generator(g, "E"));
  j["generators"] = list;
  return j;
}

inline json verma(const VermaSlice& V, const Tableau& A) {
  json j = envelope("verma");
  j["partition"] = V.P.parts;
  j["tableau"] = format_tableau(A);
  j["depth"] = V.depth;
  j["highest_weight"] = rationals(V.lambda);
  j["h_scalars"] = rationals(V.h_scalars);
  json ws = json::array();
  long m_total = 0;
  for (const auto& mu : V.weights) {
    ws.push_back({{"weight", rationals(mu)},
                  {"depth", V.weight_depth.at(mu)},
                  {"m_dim", V.m_dims.at(mu)},
                  {"l_dim", V.l_dims.at(mu)}});
    m_total += V.m_dims.at(mu);
  }
  j["weights"] = ws;
  j["m_total"] = m_total;
  j["l_total"] = total_l_dim(V);
  auto pv = finite_dim_probe(V);
  j["verdict"] = pv.closed ? "closed" : "open";
  j["classifier"] = to_string(classify(A));
  return j;
}

inline json classification(const Tableau& A) {
  json j = envelope("classify");
  auto rep = cls_crosscheck(A);
  auto cs = has_column_strict_rep(A);
  j["partition"] = A.shape.parts;
  j["tableau"] = format_tableau(A);
  j["verdict"] = to_string(rep.verdict);
  j["witness"] = cs.found ? json(format_tableau(cs.witness)) : json(nullptr);
  j["rs_representative"] = format_tableau(rep.representative);
  j["rs_shape"] = rep.shape;
  j["rs_agrees"] = rep.agree();
  return j;
}

inline json center(const Pyramid& P, const Tableau& A, const std::vector<CentralValue>& cvs) {
  json j = envelope("center");
  j["partition"] = P.parts;
  j["tableau"] = format_tableau(A);
  json vs = json::array();
  for (const auto& cv : cvs)
    vs.push_back({{"k", cv.k},
                  {"value", to_string(cv.via_psi)},
                  {"via_highest_weight", to_string(cv.via_highest_weight)},
                  {"via_verma", to_string(cv.via_verma)},
                  {"annihilates", cv.annihilates}});
  j["values"] = vs;
  return j;
}

inline json weights(const Pyramid& P) {
  json j = envelope("weights");
  auto s = special_weights(P);
  j["partition"] = P.parts;
  j["jordan_type"] = jordan_type(nilpotent_e(P), P.N);
  json boxes = json::array();
  for (int b = 1; b <= P.N; ++b) boxes.push_back({{"box", b}, {"row", P.row[b]}, {"col", P.col[b]}});
  j["boxes"] = boxes;
  j["eta"] = rationals(s.eta);
  j["o"] = rationals(s.o);
  j["rho"] = rationals(s.rho);
  j["gamma"] = rationals(s.gamma);
  j["delta"] = rationals(s.delta);
  j["epsilon"] = rationals(s.epsilon);
  j["rho0"] = rationals(rho0(P));
  return j;
}

inline json suite(const std::vector<CriterionResult>& rs, bool with_timings) {
  json j = envelope("verify");
  json cs = json::array();
  bool all = true;
  for (const auto& r : rs) {
    json c = {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}};
    if (with_timings) c["seconds"] = r.seconds;
    cs.push_back(c);
    all &= r.passed;
  }
  j["criteria"] = cs;
  j["passed"] = all;
  return j;
}

}  // namespace wgb::report

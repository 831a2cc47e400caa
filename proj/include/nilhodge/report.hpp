#pragma once

#include <nlohmann/json.hpp>

#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilhodge/cohomology.hpp"
#include "nilhodge/deformation.hpp"
#include "nilhodge/harmonic.hpp"
#include "nilhodge/predictor.hpp"
#include "nilhodge/series.hpp"
#include "nilhodge/verify.hpp"

namespace nilhodge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kLieAlgebraDisclaimer =
    "Lie-algebra cohomology only: numbers are those of the invariant complex, which equal the manifold's for "
    "nilmanifolds where the invariant complex computes the cohomology";

/// A report: a machine-readable document plus its text rendering. Keys keep
/// insertion order and scalars print canonically, so equal inputs give
/// byte-identical documents.
struct Report {
  std::string kind;
  Json doc;
  std::string text;

  std::string json() const { return doc.dump(2) + "\n"; }
};

namespace detail {

inline std::string bideg(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }

inline std::string grid_table(const std::string& title, int rows, int cols,
                              const std::function<std::string(int, int)>& cell) {
  std::ostringstream os;
  os << title << "\n" << std::setw(5) << "p\\q";
  for (int q = 0; q < cols; ++q) os << std::setw(5) << q;
  os << "\n";
  for (int p = 0; p < rows; ++p) {
    os << std::setw(5) << p;
    for (int q = 0; q < cols; ++q) os << std::setw(5) << cell(p, q);
    os << "\n";
  }
  return os.str();
}

inline Json form_list(const std::vector<Form>& forms, const std::vector<std::string>& names) {
  Json a = Json::array();
  for (const auto& f : forms) a.push_back(f.str(names));
  return a;
}

}  // namespace detail

inline Report make_report(const std::string& kind, const LiePresentation& P, bool metric_dependent = false) {
  Report r;
  r.kind = kind;
  r.doc["kind"] = kind;
  Json meta;
  meta["name"] = P.name();
  meta["dim"] = P.n();
  meta["coframe"] = P.names();
  meta["note"] = P.note();
  meta["complex_parallelizable"] = P.complex_parallelizable();
  r.doc["presentation"] = meta;
  Json disclaimers = Json::array({kLieAlgebraDisclaimer});
  if (metric_dependent) disclaimers.push_back(std::string("metric: ") + kMetricNote);
  r.doc["disclaimers"] = disclaimers;
  r.text = kind + " for " + (P.name().empty() ? std::string("presentation") : P.name()) + " (n = " +
           std::to_string(P.n()) + ")\n";
  return r;
}

inline void finish_text(Report& r) {
  r.text += "\nnote: ";
  r.text += kLieAlgebraDisclaimer;
  r.text += "\n";
  if (r.doc["disclaimers"].size() > 1) r.text += "note: " + r.doc["disclaimers"][1].get<std::string>() + "\n";
}

inline Json structure_equations(const LiePresentation& P) {
  Json d;
  for (int k = 1; k <= P.n(); ++k) d[P.names()[static_cast<std::size_t>(k - 1)]] = P.d_tau(k).str(P.names());
  return d;
}

inline Report validate_report(const LiePresentation& P) {
  Report r = make_report("validate", P);
  r.doc["valid"] = true;
  r.doc["d"] = structure_equations(P);
  r.doc["nilpotent_adapted"] = P.nilpotent_adapted();
  r.text += "valid: d^2 = 0 and no (0,2)-components\n";
  for (int k = 1; k <= P.n(); ++k)
    r.text += "  d " + P.names()[static_cast<std::size_t>(k - 1)] + " = " + P.d_tau(k).str(P.names()) + "\n";
  r.text += std::string("complex parallelizable: ") + (P.complex_parallelizable() ? "yes" : "no") + "\n";
  r.text += std::string("nilpotent (adapted coframe): ") + (P.nilpotent_adapted() ? "yes" : "inconclusive") + "\n";
  finish_text(r);
  return r;
}

inline Report cohomology_report(const CohomologyEngine& E, const std::vector<Theory>& theories,
                                bool representatives = false) {
  const auto& P = E.presentation();
  const int n = P.n();
  Report r = make_report("cohomology", P, representatives);
  Json tables;
  for (Theory t : theories) {
    if (t == Theory::de_rham) {
      Json betti = Json::array();
      std::string line = "de_rham b_k:";
      for (int k = 0; k <= 2 * n; ++k) {
        betti.push_back(E.betti(k));
        line += " " + std::to_string(E.betti(k));
      }
      tables["de_rham"] = betti;
      r.text += "\n" + line + "\n";
      continue;
    }
    Json rows = Json::array();
    for (int p = 0; p <= n; ++p) {
      Json row = Json::array();
      for (int q = 0; q <= n; ++q) row.push_back(E.dimension(t, p, q));
      rows.push_back(row);
    }
    tables[to_string(t)] = rows;
    r.text += "\n" + detail::grid_table(to_string(t) + " h^{p,q}", n + 1, n + 1, [&](int p, int q) {
      return std::to_string(E.dimension(t, p, q));
    });
  }
  r.doc["tables"] = tables;
  if (representatives) {
    Json reps;
    for (Theory t : theories) {
      if (t == Theory::de_rham) continue;
      Json per;
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
          per[detail::bideg(p, q)] = detail::form_list(E.group(t, p, q).representatives, P.names());
      reps[to_string(t)] = per;
    }
    r.doc["representatives"] = reps;
  }
  finish_text(r);
  return r;
}

inline Report conditions_report(const CohomologyEngine& E) {
  const auto& P = E.presentation();
  const int n = P.n();
  Report r = make_report("conditions", P);
  struct Cls {
    const char* name;
    const char* meaning;
    std::function<bool(int, int)> f;
  };
  std::vector<Cls> classes{
      {"B", "iota^{p,q}_{BC,del} injective", [&](int p, int q) { return E.cond_B(p, q); }},
      {"S", "iota^{p,q}_{dbar,A} injective", [&](int p, int q) { return E.cond_S(p, q); }},
      {"calB", "iota^{p-1,q}_{BC,dbar} surjective", [&](int p, int q) { return E.cond_calB(p, q); }},
      {"calS", "del(ker dbar on A^{p-1,q}) inside im dbar", [&](int p, int q) { return E.cond_calS(p, q); }},
  };
  Json conds;
  for (const auto& c : classes) {
    Json rows = Json::array();
    for (int p = 0; p <= n; ++p) {
      Json row = Json::array();
      for (int q = 0; q <= n; ++q) row.push_back(c.f(p, q));
      rows.push_back(row);
    }
    conds[c.name] = {{"meaning", c.meaning}, {"holds", rows}};
    r.text += "\n" + detail::grid_table(std::string(c.name) + ": " + c.meaning + " (1 = holds)", n + 1, n + 1,
                                        [&](int p, int q) { return c.f(p, q) ? std::string("1") : std::string("."); });
  }
  r.doc["conditions"] = conds;
  Json maps = Json::array();
  using T = Theory;
  const std::vector<std::pair<T, T>> arrows{
      {T::bott_chern, T::del}, {T::bott_chern, T::dolbeault}, {T::del, T::aeppli}, {T::dolbeault, T::aeppli},
      {T::bott_chern, T::aeppli}};
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      for (auto [s, t] : arrows) {
        auto m = E.induced_map(s, t, p, q);
        maps.push_back({{"map", m.id()},
                        {"kernel_dim", m.kernel_dim},
                        {"cokernel_dim", m.cokernel_dim},
                        {"injective", m.injective()},
                        {"surjective", m.surjective()}});
      }
  r.doc["induced_maps"] = maps;
  r.doc["sgg"] = E.sgg();
  r.text += std::string("\nsGG (iota^{0,1}_{BC,dbar} surjective): ") + (E.sgg() ? "yes" : "no") + "\n";
  finish_text(r);
  return r;
}

inline Json derivation_json(const Derivation& d) {
  Json j;
  j["bidegree"] = {d.p, d.q};
  j["verdict"] = to_string(d.verdict);
  Json attempts = Json::array();
  for (const auto& a : d.attempts) {
    Json conds = Json::array();
    for (const auto& c : a.conditions) conds.push_back({{"condition", c.name}, {"holds", c.holds}});
    Json prem = Json::array();
    for (auto [p, q] : a.premises) prem.push_back({p, q});
    attempts.push_back({{"rule", to_string(a.rule)}, {"conditions", conds}, {"premises", prem}, {"succeeded", a.succeeded}});
  }
  j["attempts"] = attempts;
  Json subs = Json::array();
  for (const auto& s : d.premises) subs.push_back(derivation_json(*s));
  j["premises"] = subs;
  return j;
}

/// Predictions for the listed bidegrees, or for all when the list is empty.
inline Report predict_report(const CohomologyEngine& E, std::vector<std::pair<int, int>> bidegrees) {
  const auto& P = E.presentation();
  const int n = P.n();
  Report r = make_report("predict", P);
  InvariancePredictor pred(E);
  if (bidegrees.empty()) {
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) bidegrees.emplace_back(p, q);
    r.text += "\n" + detail::grid_table("deformation invariance of h^{p,q}_dbar (G = guaranteed, . = no conclusion)",
                                        n + 1, n + 1, [&](int p, int q) {
                                          return pred.predict(p, q)->guaranteed() ? std::string("G") : std::string(".");
                                        });
  }
  Json preds = Json::array();
  for (auto [p, q] : bidegrees) {
    auto d = pred.predict(p, q);
    preds.push_back(derivation_json(*d));
    r.text += "\n" + render(*d);
  }
  r.doc["predictions"] = preds;
  r.doc["note"] = "no-conclusion means the sufficient conditions fail; it does not assert that the number varies";
  finish_text(r);
  return r;
}

struct Comparison {
  Theory theory;
  int p, q;
};

inline Report deform_report(const LiePresentation& P, const Beltrami& phi, const std::string& bindings,
                            const std::vector<Comparison>& compare) {
  Report r = make_report("deform", P);
  auto D = deform_structure(P, phi);
  r.doc["parameters"] = bindings;
  r.doc["phi"] = phi.str(P.names());
  r.doc["deformed_d"] = structure_equations(D.derived);
  r.text += "phi = " + phi.str(P.names()) + (bindings.empty() ? "" : "  at " + bindings) + "\n";
  r.text += "structure equations in the deformed coframe:\n";
  for (int k = 1; k <= P.n(); ++k)
    r.text += "  d " + P.names()[static_cast<std::size_t>(k - 1)] + "(t) = " + D.derived.d_tau(k).str(P.names()) + "\n";
  CohomologyEngine before(P), after(D.derived);
  Json cmp = Json::array();
  for (const auto& c : compare) {
    auto h0 = before.dimension(c.theory, c.p, c.q);
    auto ht = after.dimension(c.theory, c.p, c.q);
    cmp.push_back({{"theory", to_string(c.theory)},
                   {"bidegree", {c.p, c.q}},
                   {"base", h0},
                   {"deformed", ht},
                   {"upper_semicontinuous", ht <= h0}});
    r.text += to_string(c.theory) + " h^{" + detail::bideg(c.p, c.q) + "}: " + std::to_string(h0) + " → " +
              std::to_string(ht) + "\n";
  }
  r.doc["comparisons"] = cmp;
  finish_text(r);
  return r;
}

inline Report kuranishi_report(const LiePresentation& P, const KuranishiResult& k) {
  Report r = make_report("kuranishi", P, true);
  const auto& params = k.phi.params();
  Json basis = Json::array();
  for (std::size_t i = 0; i < k.basis.size(); ++i) basis.push_back({{"parameter", params[i]}, {"eta", k.basis[i].str(P.names())}});
  r.doc["order"] = k.phi.order();
  r.doc["basis"] = basis;
  Json coeffs = Json::array();
  for (int deg = 1; deg <= k.phi.order(); ++deg)
    for (const auto& [I, c] : k.phi.degree(deg))
      coeffs.push_back({{"monomial", monomial_name(I, params)}, {"phi", c.str(P.names())}});
  r.doc["coefficients"] = coeffs;
  auto vv_map = [&](const std::map<MultiIndex, VectorValuedForm>& m) {
    Json a = Json::array();
    for (const auto& [I, v] : m) a.push_back({{"monomial", monomial_name(I, params)}, {"value", v.str(P.names())}});
    return a;
  };
  r.doc["obstruction"] = vv_map(k.obstruction);
  r.doc["defect"] = vv_map(k.defect);
  r.doc["note"] = k.note;
  r.text += std::to_string(k.basis.size()) + " harmonic directions";
  r.text += k.note.empty() ? "\n" : " (" + k.note + ")\n";
  for (const auto& b : basis) r.text += "  " + b["parameter"].get<std::string>() + ": " + b["eta"].get<std::string>() + "\n";
  r.text += "higher coefficients:\n";
  bool any = false;
  for (const auto& c : coeffs) {
    if (c["monomial"].get<std::string>().find('*') == std::string::npos &&
        c["monomial"].get<std::string>().find('^') == std::string::npos)
      continue;
    any = true;
    r.text += "  " + c["monomial"].get<std::string>() + ": " + c["phi"].get<std::string>() + "\n";
  }
  if (!any) r.text += "  none\n";
  r.text += "obstruction terms: " + std::to_string(k.obstruction.size()) + ", recursion defects: " +
            std::to_string(k.defect.size()) + "\n";
  finish_text(r);
  return r;
}

inline Report extend_report(const LiePresentation& P, const ExtensionResult& e) {
  Report r = make_report("extend", P, true);
  const auto& params = e.sigma.params();
  r.doc["mode"] = to_string(e.mode);
  r.doc["route"] = e.route;
  r.doc["waived_hypotheses"] = e.waived;
  Json coeffs = Json::array();
  for (const auto& [I, f] : e.sigma.terms()) coeffs.push_back({{"monomial", monomial_name(I, params)}, {"sigma", f.str(P.names())}});
  r.doc["coefficients"] = coeffs;
  Json res = Json::array();
  for (const auto& [I, f] : e.residual) res.push_back({{"monomial", monomial_name(I, params)}, {"defect", f.str(P.names())}});
  r.doc["residual"] = res;
  r.doc["residual_free"] = e.residual_free();
  r.text += "mode " + to_string(e.mode) + ", route: " + e.route + "\n";
  for (const auto& w : e.waived) r.text += "waived hypothesis: " + w + "\n";
  for (const auto& c : coeffs)
    r.text += "  [" + c["monomial"].get<std::string>() + "] " + c["sigma"].get<std::string>() + "\n";
  r.text += e.residual_free() ? "residual: zero at every order\n"
                              : "residual: nonzero at " + std::to_string(e.residual.size()) + " multi-indices\n";
  for (const auto& d : res) r.text += "  [" + d["monomial"].get<std::string>() + "] " + d["defect"].get<std::string>() + "\n";
  finish_text(r);
  return r;
}

inline Report pairing_report(const CohomologyEngine& E, int p, int q) {
  const auto& P = E.presentation();
  const int n = P.n();
  Report r = make_report("pairing", P, true);
  auto a = E.group(Theory::aeppli, n - p, n - q).representatives;
  auto b = E.group(Theory::bott_chern, p, q).representatives;
  Matrix m = E.pairing_matrix(p, q);
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  bool full = m.rows() == m.cols() && rank(m) == m.rows();
  r.doc["aeppli_bidegree"] = {n - p, n - q};
  r.doc["bott_chern_bidegree"] = {p, q};
  r.doc["aeppli_basis"] = detail::form_list(a, P.names());
  r.doc["bott_chern_basis"] = detail::form_list(b, P.names());
  r.doc["matrix"] = rows;
  r.doc["nondegenerate"] = full;
  r.text += "pairing H_A^{" + detail::bideg(n - p, n - q) + "} x H_BC^{" + detail::bideg(p, q) + "} (" +
            std::to_string(a.size()) + " x " + std::to_string(b.size()) + ")\n";
  for (const auto& row : rows) {
    r.text += " ";
    for (const auto& c : row) r.text += " " + c.get<std::string>();
    r.text += "\n";
  }
  r.text += std::string("nondegenerate: ") + (full ? "yes" : "no") + "\n";
  finish_text(r);
  return r;
}

inline Report verify_report(const LiePresentation& P, const VerifyReport& v) {
  Report r = make_report("verify", P, true);
  Json checks = Json::array();
  for (const auto& c : v.checks) {
    Json j{{"check", c.name}, {"passed", c.passed}, {"failed", c.failed}};
    if (c.failed) j["first_failure"] = c.first_failure;
    checks.push_back(j);
    r.text += std::string(c.failed ? "FAIL " : "ok   ") + std::to_string(c.passed) + "/" +
              std::to_string(c.passed + c.failed) + "  " + c.name + "\n";
    if (c.failed) r.text += "     first failure: " + c.first_failure + "\n";
  }
  r.doc["checks"] = checks;
  r.doc["failures"] = v.failures();
  r.text += "failures: " + std::to_string(v.failures()) + "\n";
  finish_text(r);
  return r;
}

}  // namespace nilhodge

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilhodge/parse.hpp"
#include "nilhodge/report.hpp"

using namespace nilhodge;

namespace {

struct Common {
  std::string file;
  std::string builtin_name;
  std::string format = "table";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "structure file");
  cmd->add_option("--builtin", c.builtin_name, "torus(n), iwasawa or cfp");
  cmd->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--out", c.out, "also write the JSON document to this file");
}

LiePresentation load(const Common& c) {
  if (!c.file.empty() && !c.builtin_name.empty()) throw CLI::ValidationError("give either a file or --builtin, not both");
  if (!c.builtin_name.empty()) return builtin(c.builtin_name);
  if (c.file.empty()) throw CLI::ValidationError("a structure file or --builtin is required");
  return load_presentation(c.file);
}

std::pair<int, int> parse_bidegree(const std::string& s) {
  int p = 0, q = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> p >> comma >> q) || comma != ',' || !is.eof()) throw CLI::ValidationError("bidegree must look like p,q: " + s);
  return {p, q};
}

Comparison parse_comparison(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--compare needs theory:p,q, got " + s);
  auto [p, q] = parse_bidegree(s.substr(colon + 1));
  return {theory_from_string(s.substr(0, colon)), p, q};
}

std::vector<Theory> parse_theories(const std::string& s) {
  std::vector<Theory> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(theory_from_string(item));
  return out;
}

int emit(const Report& r, const Common& c, bool ok = true) {
  std::cout << (c.format == "json" ? r.json() : r.text);
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw ParseError("cannot write '" + c.out + "'");
    f << r.json();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge, Bott-Chern and Aeppli numbers of invariant complex structures, and their deformations"};
  app.require_subcommand(1);

  Common validate_o, coh_o, cond_o, pred_o, def_o, kur_o, ext_o, pair_o, ver_o;

  auto* validate = app.add_subcommand("validate", "check d^2 = 0 and integrability");
  add_common(validate, validate_o);

  auto* coh = app.add_subcommand("cohomology", "cohomology tables");
  add_common(coh, coh_o);
  std::string theories = "dolbeault,del,bott_chern,aeppli,de_rham";
  bool reps = false;
  coh->add_option("--theories", theories, "comma-separated theories");
  coh->add_flag("--representatives", reps, "list harmonic representatives");

  auto* cond = app.add_subcommand("conditions", "condition classes, induced maps and sGG");
  add_common(cond, cond_o);

  auto* pred = app.add_subcommand("predict", "sufficient conditions for deformation invariance of h^{p,q}");
  add_common(pred, pred_o);
  std::vector<std::string> pred_bidegrees;
  pred->add_option("--bidegree", pred_bidegrees, "p,q (repeatable; default all)");

  auto* def = app.add_subcommand("deform", "structure equations and cohomology of a deformed structure");
  add_common(def, def_o);
  std::string def_beltrami, def_t;
  std::vector<std::string> def_compare;
  def->add_option("--beltrami", def_beltrami, "Beltrami file")->required();
  def->add_option("--t", def_t, "parameter values, e.g. t1=i/2,t2=1/3");
  def->add_option("--compare", def_compare, "theory:p,q (repeatable)");

  auto* kur = app.add_subcommand("kuranishi", "Kuranishi power series and its obstruction");
  add_common(kur, kur_o);
  int kur_order = 2;
  std::string kur_beltrami;
  kur->add_option("--order", kur_order, "truncation order")->check(CLI::Range(1, 8));
  kur->add_option("--beltrami", kur_beltrami, "Beltrami file whose parameter directions replace the harmonic basis");

  auto* ext = app.add_subcommand("extend", "power-series extension of a Dolbeault class");
  add_common(ext, ext_o);
  std::string ext_beltrami, ext_sigma, ext_bidegree, ext_mode = "pq";
  int ext_order = 3;
  bool ext_waive = false;
  ext->add_option("--beltrami", ext_beltrami, "Beltrami file; its parameters become the series variables")->required();
  ext->add_option("--sigma", ext_sigma, "dbar-closed form, e.g. \"1*t1^t2\"")->required();
  ext->add_option("--bidegree", ext_bidegree, "p,q of sigma")->required();
  ext->add_option("--mode", ext_mode, "pq, p0, 0q or vanishing")->check(CLI::IsMember({"pq", "p0", "0q", "vanishing"}));
  ext->add_option("--order", ext_order, "truncation order")->check(CLI::Range(0, 8));
  ext->add_flag("--waive-hypotheses", ext_waive, "record failing hypotheses instead of stopping");

  auto* pair = app.add_subcommand("pairing", "Aeppli / Bott-Chern duality pairing");
  add_common(pair, pair_o);
  std::string pair_bidegree = "1,1";
  pair->add_option("--bidegree", pair_bidegree, "p,q of the Bott-Chern side");

  auto* ver = app.add_subcommand("verify", "identity suite and duality checks");
  add_common(ver, ver_o);
  std::size_t ver_samples = 50;
  ver->add_option("--samples", ver_samples, "random Beltrami differentials per identity")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return emit(validate_report(load(validate_o)), validate_o);
    if (*coh) {
      CohomologyEngine E(load(coh_o));
      return emit(cohomology_report(E, parse_theories(theories), reps), coh_o);
    }
    if (*cond) {
      CohomologyEngine E(load(cond_o));
      return emit(conditions_report(E), cond_o);
    }
    if (*pred) {
      CohomologyEngine E(load(pred_o));
      std::vector<std::pair<int, int>> bds;
      for (const auto& s : pred_bidegrees) bds.push_back(parse_bidegree(s));
      return emit(predict_report(E, bds), pred_o);
    }
    if (*def) {
      auto P = load(def_o);
      auto fam = load_beltrami(def_beltrami, P.names());
      Beltrami phi = fam.at(parse_bindings(def_t));
      std::vector<Comparison> cmp;
      for (const auto& s : def_compare) cmp.push_back(parse_comparison(s));
      Report r = deform_report(P, phi, def_t, cmp);
      bool ok = true;
      for (const auto& c : r.doc["comparisons"]) ok = ok && c["upper_semicontinuous"].get<bool>();
      return emit(r, def_o, ok);
    }
    if (*kur) {
      auto P = load(kur_o);
      std::optional<std::vector<Beltrami>> dirs;
      if (!kur_beltrami.empty()) dirs = load_beltrami(kur_beltrami, P.names()).directions;
      auto k = kuranishi_series(P, kur_order, dirs);
      return emit(kuranishi_report(P, k), kur_o, k.consistent());
    }
    if (*ext) {
      auto P = load(ext_o);
      auto fam = load_beltrami(ext_beltrami, P.names());
      auto series = linear_family(fam.params, fam.directions, std::max(ext_order, 1));
      auto [p, q] = parse_bidegree(ext_bidegree);
      Form sigma = parse_form(ext_sigma, P.names());
      auto e = extend_series(P, series, sigma, p, q, extend_mode_from_string(ext_mode), ext_order, ext_waive);
      return emit(extend_report(P, e), ext_o, e.residual_free());
    }
    if (*pair) {
      CohomologyEngine E(load(pair_o));
      auto [p, q] = parse_bidegree(pair_bidegree);
      return emit(pairing_report(E, p, q), pair_o);
    }
    if (*ver) {
      auto P = load(ver_o);
      VerifyOptions opt;
      opt.samples = ver_samples;
      auto v = verify(P, opt);
      return emit(verify_report(P, v), ver_o, v.ok());
    }
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  }
  return 0;
}

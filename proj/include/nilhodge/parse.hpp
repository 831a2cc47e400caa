#pragma once

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nilhodge/beltrami.hpp"
#include "nilhodge/errors.hpp"
#include "nilhodge/presentation.hpp"

namespace nilhodge {

namespace detail {

inline Scalar parse_scalar(const std::string& text, const std::string& where) {
  try {
    return Scalar::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

/// Slot index of "name" (tau) or "~name" (conjugate).
inline int slot_of(const std::string& token, const std::vector<std::string>& names, const std::string& where) {
  bool conj = !token.empty() && token.front() == '~';
  std::string base = conj ? token.substr(1) : token;
  auto it = std::find(names.begin(), names.end(), base);
  if (it == names.end()) throw ParseError(where + ": unknown coframe element '" + token + "'");
  int k = static_cast<int>(it - names.begin());
  return conj ? static_cast<int>(names.size()) + k : k;
}

inline std::string scalar_text(const YAML::Node& node, const std::string& where) {
  if (!node) throw ParseError(where + ": missing coeff");
  if (!node.IsScalar()) throw ParseError(where + ": coeff must be a string");
  return node.as<std::string>();
}

inline YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> coframe_of(const YAML::Node& doc, int n) {
  std::vector<std::string> names;
  if (doc["coframe"]) {
    for (const auto& c : doc["coframe"]) names.push_back(c.as<std::string>());
    if (static_cast<int>(names.size()) != n) throw ParseError("coframe has " + std::to_string(names.size()) +
                                                              " names but dim is " + std::to_string(n));
  } else {
    names = default_names(n);
  }
  for (const auto& s : names)
    if (s.empty() || s.front() == '~') throw ParseError("invalid coframe name '" + s + "'");
  return names;
}

inline int dim_of(const YAML::Node& doc) {
  if (!doc.IsMap() || !doc["dim"]) throw ParseError("missing field 'dim'");
  try {
    return doc["dim"].as<int>();
  } catch (const YAML::Exception&) {
    throw ParseError("'dim' must be an integer");
  }
}

}  // namespace detail

/// Reads a structure file: dim, optional coframe names and name, and d as a
/// mapping name -> [{coeff, wedge: [a, b]}]. Validation (d^2 = 0, no
/// (0,2)-parts) happens in the presentation constructor.
inline LiePresentation parse_presentation(const std::string& text) {
  YAML::Node doc = detail::load_yaml(text);
  int n = detail::dim_of(doc);
  if (n < 1 || n > kMaxDim) throw ParseError("dim must be between 1 and " + std::to_string(kMaxDim));
  auto names = detail::coframe_of(doc, n);
  std::vector<Form> d(static_cast<std::size_t>(n), Form(n));
  try {
    if (doc["d"]) {
      if (!doc["d"].IsMap()) throw ParseError("'d' must be a mapping");
      for (const auto& entry : doc["d"]) {
        std::string key = entry.first.as<std::string>();
        int k = detail::slot_of(key, names, "d");
        if (k >= n) throw ParseError("d: give d of the (1,0)-coframe only, not '" + key + "'");
        for (const auto& term : entry.second) {
          std::string where = "d[" + key + "]";
          Scalar c = detail::parse_scalar(detail::scalar_text(term["coeff"], where), where);
          const auto& w = term["wedge"];
          if (!w || !w.IsSequence() || w.size() != 2) throw ParseError(where + ": wedge needs two factors");
          int a = detail::slot_of(w[0].as<std::string>(), names, where);
          int b = detail::slot_of(w[1].as<std::string>(), names, where);
          d[static_cast<std::size_t>(k)] += c * wedge(Form::monomial(n, Mask{1} << a), Form::monomial(n, Mask{1} << b));
        }
      }
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed structure file: ") + e.what());
  }
  std::string name = doc["name"] ? doc["name"].as<std::string>() : std::string();
  std::string note = doc["note"] ? doc["note"].as<std::string>() : std::string();
  return LiePresentation(names, d, name, note);
}

inline LiePresentation load_presentation(const std::string& path) {
  return parse_presentation(detail::read_file(path));
}

/// Canonical structure file: terms sorted by slot pair, coefficients in
/// lowest terms, empty differentials omitted.
inline std::string serialize_presentation(const LiePresentation& P) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (!P.name().empty()) out << YAML::Key << "name" << YAML::Value << P.name();
  out << YAML::Key << "dim" << YAML::Value << P.n();
  out << YAML::Key << "coframe" << YAML::Value << YAML::Flow << P.names();
  out << YAML::Key << "d" << YAML::Value << YAML::BeginMap;
  Form probe(P.n());
  for (int k = 1; k <= P.n(); ++k) {
    const Form& f = P.d_tau(k);
    if (f.is_zero()) continue;
    out << YAML::Key << P.names()[static_cast<std::size_t>(k - 1)] << YAML::Value << YAML::BeginSeq;
    std::vector<std::tuple<int, int, Scalar>> sorted;
    for (const auto& [m, c] : f.terms()) sorted.emplace_back(std::countr_zero(m), std::countr_zero(m & (m - 1)), c);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& x, const auto& y) { return std::pair{std::get<0>(x), std::get<1>(x)} < std::pair{std::get<0>(y), std::get<1>(y)}; });
    for (const auto& [a, b, c] : sorted) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "coeff" << YAML::Value << YAML::DoubleQuoted << c.str();
      out << YAML::Key << "wedge" << YAML::Value << YAML::Flow << YAML::BeginSeq << probe.slot_name(a, P.names())
          << probe.slot_name(b, P.names()) << YAML::EndSeq;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

/// Parameter values "t1=i/2,t2=1/3".
inline std::map<std::string, Scalar> parse_bindings(const std::string& text) {
  std::map<std::string, Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("binding '" + item + "' is not of the form name=value");
    std::string key = item.substr(0, eq);
    if (out.count(key)) throw ParseError("parameter '" + key + "' bound twice");
    out.emplace(key, detail::parse_scalar(item.substr(eq + 1), "binding " + key));
  }
  return out;
}

/// phi = phi_0 + sum_k t_k phi_k, linear in named parameters.
struct BeltramiFamily {
  int n = 0;
  std::vector<std::string> params;
  Beltrami constant;
  std::vector<Beltrami> directions;  ///< one per parameter

  Beltrami at(const std::map<std::string, Scalar>& values) const {
    Beltrami phi = constant;
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto it = values.find(params[k]);
      if (it == values.end()) throw ParseError("parameter '" + params[k] + "' is not bound");
      phi += directions[k] * it->second;
    }
    for (const auto& [key, v] : values)
      if (std::find(params.begin(), params.end(), key) == params.end())
        throw ParseError("binding for unknown parameter '" + key + "'");
    return phi;
  }
};

/// Reads a Beltrami file: dim, optional parameters, and phi as a list of
/// {coeff, param?, conj_coframe: ~tj, vector: tk} meaning coeff * param *
/// conj(tau^j) (x) theta_k.
inline BeltramiFamily parse_beltrami(const std::string& text, const std::vector<std::string>& names) {
  YAML::Node doc = detail::load_yaml(text);
  BeltramiFamily fam;
  fam.n = detail::dim_of(doc);
  if (static_cast<std::size_t>(fam.n) != names.size())
    throw PresentationMismatch("Beltrami file has dim " + std::to_string(fam.n) + " but the presentation has " +
                               std::to_string(names.size()));
  fam.constant = Beltrami(fam.n);
  try {
    if (doc["parameters"])
      for (const auto& p : doc["parameters"]) {
        fam.params.push_back(p.as<std::string>());
        fam.directions.emplace_back(fam.n);
      }
    if (!doc["phi"] || !doc["phi"].IsSequence()) throw ParseError("missing list 'phi'");
    for (const auto& term : doc["phi"]) {
      const std::string where = "phi";
      Scalar c = detail::parse_scalar(detail::scalar_text(term["coeff"], where), where);
      if (!term["conj_coframe"] || !term["vector"]) throw ParseError("phi: terms need conj_coframe and vector");
      std::string cj = term["conj_coframe"].as<std::string>();
      std::string v = term["vector"].as<std::string>();
      if (cj.empty() || cj.front() != '~') throw ParseError("phi: conj_coframe must name a conjugate, got '" + cj + "'");
      int j = detail::slot_of(cj, names, where) - fam.n + 1;
      int i = detail::slot_of(v, names, where) + 1;
      if (i > fam.n) throw ParseError("phi: vector must be a (1,0)-frame element, got '" + v + "'");
      Beltrami* target = &fam.constant;
      if (term["param"]) {
        std::string p = term["param"].as<std::string>();
        auto it = std::find(fam.params.begin(), fam.params.end(), p);
        if (it == fam.params.end()) throw ParseError("phi: undeclared parameter '" + p + "'");
        target = &fam.directions[static_cast<std::size_t>(it - fam.params.begin())];
      }
      target->at(i, j) += c;
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed Beltrami file: ") + e.what());
  }
  return fam;
}

inline BeltramiFamily load_beltrami(const std::string& path, const std::vector<std::string>& names) {
  return parse_beltrami(detail::read_file(path), names);
}

/// Inverse of Form::str: "c*a^b^~c + ..." with parenthesised compound
/// coefficients; a bare coefficient is a constant.
inline Form parse_form(const std::string& text, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  Form out(n);
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "0") return out;
  if (s.empty()) throw ParseError("empty form");
  // Split at '+' outside parentheses that follows a monomial or a closing
  // coefficient; a '+' inside "(a+bi)" stays.
  std::vector<std::string> terms;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in '" + text + "'");
    if (s[k] == '+' && depth == 0 && k > start) {
      terms.push_back(s.substr(start, k - start));
      start = k + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + text + "'");
  terms.push_back(s.substr(start));
  for (const auto& term : terms) {
    if (term.empty()) throw ParseError("empty term in '" + text + "'");
    std::string coeff = term, mono;
    std::size_t star = std::string::npos;
    depth = 0;
    for (std::size_t k = 0; k < term.size(); ++k) {
      if (term[k] == '(') ++depth;
      if (term[k] == ')') --depth;
      if (term[k] == '*' && depth == 0) {
        star = k;
        break;
      }
    }
    if (star != std::string::npos) {
      coeff = term.substr(0, star);
      mono = term.substr(star + 1);
    }
    Form f = Form::constant(n, detail::parse_scalar(coeff, "form"));
    if (!mono.empty() && mono != "1") {
      std::stringstream ms(mono);
      std::string factor;
      while (std::getline(ms, factor, '^'))
        f = wedge(f, Form::monomial(n, Mask{1} << detail::slot_of(factor, names, "form")));
    }
    out += f;
  }
  return out;
}

}  // namespace nilhodge

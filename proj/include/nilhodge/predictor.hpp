#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nilhodge/cohomology.hpp"

namespace nilhodge {

enum class Verdict { by_inv_pq, by_inv_p0, by_inv_0q, q_equals_n, by_vanishing, no_conclusion };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::by_inv_pq: return "guaranteed-by-inv-pq";
    case Verdict::by_inv_p0: return "guaranteed-by-inv-p0";
    case Verdict::by_inv_0q: return "guaranteed-by-inv-0q";
    case Verdict::q_equals_n: return "guaranteed-q-equals-n";
    case Verdict::by_vanishing: return "guaranteed-by-vanishing";
    case Verdict::no_conclusion: return "no-conclusion";
  }
  return "?";
}

struct Condition {
  std::string name;
  bool holds;
};

/// One attempted rule: the conditions it checked and the bidegrees it relies on.
struct RuleAttempt {
  Verdict rule;
  std::vector<Condition> conditions;
  std::vector<std::pair<int, int>> premises;
  bool succeeded = false;
};

/// Derivation of a verdict. For a guaranteed verdict, `attempts` ends with the
/// successful rule and `premises` holds the derivations it relied on.
struct Derivation {
  int p = 0, q = 0;
  Verdict verdict = Verdict::no_conclusion;
  std::vector<RuleAttempt> attempts;
  std::vector<std::shared_ptr<const Derivation>> premises;

  bool guaranteed() const { return verdict != Verdict::no_conclusion; }
};

/// Sufficient conditions for deformation invariance of h^{p,q}_dbar, tried in a
/// fixed order; the first rule whose conditions and premises hold wins.
/// "no-conclusion" never means the number is known to jump.
class InvariancePredictor {
public:
  explicit InvariancePredictor(const CohomologyEngine& E) : E_(E) {}

  std::shared_ptr<const Derivation> predict(int p, int q) {
    auto key = std::pair{p, q};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto d = std::make_shared<Derivation>();
    d->p = p;
    d->q = q;
    const int n = E_.n();
    if (p < 0 || q < 0 || p > n || q > n) throw DegreeMismatch("bidegree out of range");

    auto premise = [&](int pp, int qq, RuleAttempt& a, std::vector<std::shared_ptr<const Derivation>>& used) {
      if (qq < 0) return true;  // the empty base case
      a.premises.emplace_back(pp, qq);
      auto sub = predict(pp, qq);
      used.push_back(sub);
      return sub->guaranteed();
    };
    auto attempt = [&](Verdict rule, std::vector<Condition> conds, std::vector<std::pair<int, int>> needs) {
      RuleAttempt a{rule, std::move(conds), {}, false};
      bool ok = true;
      for (const auto& c : a.conditions) ok = ok && c.holds;
      std::vector<std::shared_ptr<const Derivation>> used;
      if (ok)
        for (auto [pp, qq] : needs) ok = ok && premise(pp, qq, a, used);
      a.succeeded = ok;
      d->attempts.push_back(a);
      if (ok) {
        d->verdict = rule;
        d->premises = std::move(used);
      }
      return ok;
    };
    auto sup = [](int a, int b) { return "^{" + std::to_string(a) + "," + std::to_string(b) + "}"; };

    bool done = false;
    if (q == n) done = attempt(Verdict::q_equals_n, {}, {{p, n - 1}});
    if (!done && p == 0)
      done = attempt(Verdict::by_inv_0q, {{"calB" + sup(1, q), E_.cond_calB(1, q)}}, {{0, q - 1}});
    if (!done && q == 0) {
      bool s_next = E_.cond_S(p + 1, 0);
      bool s_side = E_.cond_S(p, 1);
      std::vector<Condition> conds{{"S" + sup(p + 1, 0), s_next}, {"S" + sup(p, 1), s_side}};
      if (!s_side && p == 1) conds[1] = {"calS^{1,1} (in place of S^{1,1})", E_.cond_calS(1, 1)};
      done = attempt(Verdict::by_inv_p0, conds, {});
    }
    if (!done)
      done = attempt(Verdict::by_inv_pq,
                     {{"B" + sup(p + 1, q), E_.cond_B(p + 1, q)}, {"S" + sup(p, q + 1), E_.cond_S(p, q + 1)}},
                     {{p, q - 1}});
    if (!done) {
      bool vanish = E_.dimension(Theory::dolbeault, p, q + 1) == 0;
      attempt(Verdict::by_vanishing, {{"h" + sup(p, q + 1) + " = 0", vanish}}, {{p, q - 1}});
    }
    memo_.emplace(key, d);
    return d;
  }

private:
  const CohomologyEngine& E_;
  std::map<std::pair<int, int>, std::shared_ptr<const Derivation>> memo_;
};

inline std::shared_ptr<const Derivation> invariance_predict(const CohomologyEngine& E, int p, int q) {
  return InvariancePredictor(E).predict(p, q);
}

/// Indented text rendering of a derivation tree.
inline std::string render(const Derivation& d, int indent = 0) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string s = pad + "(" + std::to_string(d.p) + "," + std::to_string(d.q) + "): " + to_string(d.verdict) + "\n";
  for (const auto& a : d.attempts) {
    s += pad + "  " + (a.succeeded ? "[ok] " : "[--] ") + to_string(a.rule);
    for (const auto& c : a.conditions) s += " " + c.name + (c.holds ? "=yes" : "=no");
    s += "\n";
  }
  for (const auto& sub : d.premises) s += render(*sub, indent + 4);
  return s;
}

}  // namespace nilhodge

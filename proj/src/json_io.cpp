#include "qva/json_io.hpp"

#include <string>
#include <tuple>
#include <vector>

#include "qva/errors.hpp"

namespace qva {

Json scalar_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  fail(ErrorCode::InvalidInput, "expected an integer or a \"num/den\" string");
}

Json poly_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(scalar_json(c));
  return out;
}

Polynomial poly_from_json(const Json& j) {
  if (!j.is_array())
    fail(ErrorCode::InvalidInput, "expected a coefficient array (lowest power first)");
  std::vector<Scalar> coeffs;
  for (const auto& c : j) coeffs.push_back(scalar_from_json(c));
  return Polynomial(std::move(coeffs));
}

Json ratfunc_json(const RationalFn& g) {
  Json out;
  out["num"] = poly_json(g.num);
  out["den"] = poly_json(g.den);
  return out;
}

RationalFn ratfunc_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num"))
    fail(ErrorCode::InvalidInput,
         "expected {\"num\": [...], \"den\": [...]} with coefficient arrays");
  Polynomial num = poly_from_json(j.at("num"));
  Polynomial den = j.contains("den") ? poly_from_json(j.at("den"))
                                     : Polynomial::constant(Scalar(1));
  if (den.is_zero()) fail(ErrorCode::InvalidInput, "denominator must be nonzero");
  return RationalFn::make(std::move(num), std::move(den));
}

Json series_json(const TruncSeries& s) {
  Json out;
  out["lo"] = s.lo();
  out["trunc"] = s.trunc();
  Json coeffs = Json::array();
  for (int k = s.lo(); k < s.trunc(); ++k) coeffs.push_back(scalar_json(s.coeff(k)));
  out["coeffs"] = std::move(coeffs);
  return out;
}

namespace {
Json mode_list(const std::vector<int>& labels) {
  Json out = Json::array();
  for (int m : labels) out.push_back(-m);
  return out;
}
}  // namespace

Json monomial_json(const FockMonomial& m) {
  Json out;
  out["e"] = mode_list(m.e);
  out["f"] = mode_list(m.f);
  out["psi"] = mode_list(m.psi);
  return out;
}

Json vector_json(const FockVector& v) {
  Json out = Json::array();
  for (const auto& [mono, c] : v) {
    Json term;
    term["mono"] = monomial_json(mono);
    term["c"] = scalar_json(c);
    out.push_back(std::move(term));
  }
  return out;
}

Json witness_json(const Witness& w) {
  Json out;
  out["check"] = w.check;
  out["m"] = w.m;
  out["n"] = w.n;
  out["degree"] = w.degree;
  out["vector_index"] = w.vector_index;
  out["monomial"] = w.monomial;
  out["lhs"] = w.lhs_coeff;
  out["rhs"] = w.rhs_coeff;
  return out;
}

Json relation_report_json(const RelationReport& r) {
  Json out;
  out["pass"] = r.pass;
  out["checks"] = r.checks;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  out["witnesses"] = std::move(ws);
  return out;
}

Json independence_report_json(const IndependenceReport& r) {
  Json out;
  out["pass"] = r.pass;
  Json per = Json::array();
  for (const auto& d : r.per_degree) {
    Json e;
    e["degree"] = d.degree;
    e["count"] = d.count;
    e["rank"] = d.rank;
    e["pass"] = d.pass;
    per.push_back(std::move(e));
  }
  out["per_degree"] = std::move(per);
  return out;
}

Json mat_json(const Mat& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(scalar_json(c));
    out.push_back(std::move(r));
  }
  return out;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, "expected a matrix (array of rows)");
  Mat out;
  for (const auto& row : j) {
    if (!row.is_array()) fail(ErrorCode::InvalidInput, "matrix rows must be arrays");
    std::vector<Scalar> r;
    for (const auto& c : row) r.push_back(scalar_from_json(c));
    out.push_back(std::move(r));
  }
  return out;
}

Json aalpha_module_json(const AAlphaModule& u) {
  Json out;
  out["dim"] = u.dim;
  out["e0"] = mat_json(u.E0);
  out["f0"] = mat_json(u.F0);
  out["psi0"] = mat_json(u.Psi0);
  return out;
}

AAlphaModule aalpha_module_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("e0") || !j.contains("f0") || !j.contains("psi0"))
    fail(ErrorCode::InvalidInput,
         "expected {\"dim\": n, \"e0\": ..., \"f0\": ..., \"psi0\": ...}");
  AAlphaModule u;
  u.E0 = mat_from_json(j.at("e0"));
  u.F0 = mat_from_json(j.at("f0"));
  u.Psi0 = mat_from_json(j.at("psi0"));
  u.dim = j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(u.E0.size());
  return u;
}

Json aalpha_report_json(const AAlphaReport& r) {
  Json out;
  out["pass"] = r.pass;
  out["alpha"] = scalar_json(r.alpha);
  out["checks"] = r.checks;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json e;
    e["relation"] = w.relation;
    e["row"] = w.row;
    e["col"] = w.col;
    e["lhs"] = w.lhs;
    e["rhs"] = w.rhs;
    ws.push_back(std::move(e));
  }
  out["witnesses"] = std::move(ws);
  return out;
}

Json irreducibility_json(const IrreducibilityReport& r) {
  Json out;
  out["irreducible"] = r.irreducible;
  out["detail"] = r.detail;
  return out;
}

Json classify_json(const ClassifyReport& r) {
  Json out;
  out["alpha"] = scalar_json(r.alpha);
  out["case"] = r.case_name;
  out["notes"] = r.notes;
  out["has_u_lambda"] = r.has_u_lambda;
  out["open_case"] = r.open_case;
  if (r.nilpotency) {
    Json c;
    c["certified"] = r.nilpotency->certified;
    c["word_length_cap"] = r.nilpotency->word_length_cap;
    c["ambient_words"] = r.nilpotency->ambient_words;
    c["relator_rows"] = r.nilpotency->relator_rows;
    c["targets"] = r.nilpotency->targets;
    out["nilpotency"] = std::move(c);
  } else {
    out["nilpotency"] = nullptr;
  }
  return out;
}

Json graded_module_json(const GradedModule& m) {
  Json out;
  out["alpha"] = scalar_json(m.alpha);
  out["degree_bound"] = m.degree_bound;
  out["word_cap"] = m.word_cap;
  out["dims"] = m.dims;
  out["stabilized"] = m.stabilized;
  out["skipped_rows"] = m.skipped_rows;
  out["basis"] = m.basis_words;
  Json act = Json::array();
  for (const auto& [key, mat] : m.act) {
    const auto& [gen, mode, from] = key;
    Json e;
    e["gen"] = gen == 0 ? "e" : gen == 1 ? "f" : "psi";
    e["mode"] = mode;
    e["from_degree"] = from;
    e["matrix"] = mat_json(mat);
    act.push_back(std::move(e));
  }
  out["action"] = std::move(act);
  if (!m.missing_actions.empty()) out["missing_actions"] = m.missing_actions;
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qva

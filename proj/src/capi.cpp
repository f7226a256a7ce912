#include "qva.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>
#include <vector>

#include "qva/ding_iohara.hpp"
#include "qva/errors.hpp"
#include "qva/json_io.hpp"
#include "qva/ratfunc.hpp"
#include "qva/vacuum.hpp"

struct qva_engine {
  qva::AhContext ctx;
};

namespace {

thread_local std::string g_last_error;

int code_of(qva::ErrorCode c) { return static_cast<int>(c) + 1; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn(), which must return the JSON payload, and handles the
// error-code / last-error / out-parameter contract.
template <typename Fn>
int guarded(char** out_json, Fn&& fn) {
  if (out_json) *out_json = nullptr;
  try {
    qva::Json payload = fn();
    if (out_json) *out_json = dup_string(qva::dump_json(payload));
    g_last_error.clear();
    return QVA_OK;
  } catch (const qva::Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const qva::Json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return QVA_E_INVALID_INPUT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QVA_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QVA_E_INTERNAL;
  }
}

qva::Json parse_text(const char* text, const char* what) {
  if (!text) qva::fail(qva::ErrorCode::InvalidInput,
                       std::string(what) + " must not be NULL");
  return qva::Json::parse(text);
}

qva::RationalFn parse_g(const char* g_json) {
  return qva::ratfunc_from_json(parse_text(g_json, "g"));
}

qva::Scalar parse_scalar_text(const char* text, const char* what) {
  if (!text) qva::fail(qva::ErrorCode::InvalidInput,
                       std::string(what) + " must not be NULL");
  return qva::Scalar::parse(text);
}

qva::Gen parse_gen(const char* gen) {
  if (gen) {
    std::string s(gen);
    if (s == "e") return qva::Gen::E;
    if (s == "f") return qva::Gen::F;
    if (s == "psi") return qva::Gen::Psi;
  }
  qva::fail(qva::ErrorCode::InvalidInput, "gen must be \"e\", \"f\" or \"psi\"");
}

qva::FockVector parse_vector(const qva::AhContext& ctx, const char* text) {
  qva::Json j = parse_text(text, "vector");
  if (!j.is_array())
    qva::fail(qva::ErrorCode::InvalidInput,
              "expected an array of {\"mono\": ..., \"c\": ...} terms");
  qva::FockVector v;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("mono") || !term.contains("c"))
      qva::fail(qva::ErrorCode::InvalidInput,
                "each term needs \"mono\" and \"c\"");
    const auto& mj = term.at("mono");
    qva::FockMonomial m;
    m.super = ctx.super();
    auto read_block = [&](const char* key, std::vector<int>* dst) {
      if (!mj.contains(key)) return;
      for (const auto& e : mj.at(key)) {
        long long mode = e.get<long long>();
        if (mode >= 0)
          qva::fail(qva::ErrorCode::InvalidInput,
                    "monomial modes must be negative (creation operators)");
        dst->push_back(static_cast<int>(-mode));
      }
    };
    read_block("e", &m.e);
    read_block("f", &m.f);
    read_block("psi", &m.psi);
    std::sort(m.e.begin(), m.e.end(), std::greater<int>());
    std::sort(m.f.begin(), m.f.end(), std::greater<int>());
    std::sort(m.psi.begin(), m.psi.end(), std::greater<int>());
    m.validate();
    v.add(m, qva::scalar_from_json(term.at("c")));
  }
  return v;
}

}  // namespace

extern "C" {

const char* qva_version(void) { return "0.1.0"; }

const char* qva_last_error(void) { return g_last_error.c_str(); }

const char* qva_error_name(int code) {
  if (code == QVA_OK) return "ok";
  int raw = code - 1;
  if (raw < 0 || raw > static_cast<int>(qva::ErrorCode::Internal))
    return "unknown";
  return qva::error_code_name(static_cast<qva::ErrorCode>(raw));
}

void qva_string_free(char* s) { std::free(s); }

int qva_expand(const char* g_json, const char* at, int trunc, char** out_json) {
  return guarded(out_json, [&]() {
    qva::RationalFn g = parse_g(g_json);
    if (trunc <= 0)
      qva::fail(qva::ErrorCode::InvalidConfig, "trunc must be positive");
    if (!qva::check_symmetry(g))
      qva::fail(qva::ErrorCode::SymmetryViolated,
                "g(z) g(1/z) != 1: the engine only handles symmetric g");
    std::string where = at ? at : "0";
    qva::TruncSeries s = qva::TruncSeries::zero(trunc);
    std::string var;
    if (where == "0") {
      s = qva::iota_z0(g, trunc);
      var = "z";
    } else if (where == "inf") {
      s = qva::iota_zinf(g, trunc);
      var = "1/z";
    } else if (where == "exp") {
      s = qva::iota_exp(g, trunc);
      var = "x";
    } else {
      qva::fail(qva::ErrorCode::InvalidInput,
                "at must be \"0\", \"inf\" or \"exp\"");
    }
    qva::Json out;
    out["at"] = where;
    out["var"] = var;
    qva::Json body = qva::series_json(s);
    out["lo"] = body["lo"];
    out["trunc"] = body["trunc"];
    out["coeffs"] = body["coeffs"];
    return out;
  });
}

int qva_factor(const char* g_json, int trunc, char** out_json) {
  return guarded(out_json, [&]() {
    qva::RationalFn g = parse_g(g_json);
    if (trunc <= 0)
      qva::fail(qva::ErrorCode::InvalidConfig, "trunc must be positive");
    qva::CanonicalG cg = qva::canonicalize(g);
    qva::HFactorization fact = qva::factor_h(cg, trunc);
    qva::Json out;
    out["epsilon"] = fact.epsilon;
    out["h"] = qva::series_json(fact.h);
    out["q"] = qva::series_json(fact.q);
    qva::Json canon;
    canon["sign"] = cg.sign;
    canon["shift"] = cg.l;
    canon["poly"] = qva::poly_json(cg.p);
    out["canonical"] = std::move(canon);
    return out;
  });
}

int qva_engine_create(const char* config_json, qva_engine** out) {
  if (out) *out = nullptr;
  char* sink = nullptr;
  int rc = guarded(&sink, [&]() -> qva::Json {
    qva::Json cfg = parse_text(config_json, "config");
    if (!cfg.is_object() || !cfg.contains("g"))
      qva::fail(qva::ErrorCode::InvalidInput,
                "config needs at least {\"g\": ..., \"degree_bound\": ...}");
    qva::RationalFn g = qva::ratfunc_from_json(cfg.at("g"));
    if (!cfg.contains("degree_bound"))
      qva::fail(qva::ErrorCode::InvalidInput, "config needs \"degree_bound\"");
    int degree = cfg.at("degree_bound").get<int>();
    int lo = -(degree + 1), hi = degree + 2;
    if (cfg.contains("window")) {
      const auto& w = cfg.at("window");
      if (!w.is_array() || w.size() != 2)
        qva::fail(qva::ErrorCode::InvalidInput, "window must be [lo, hi]");
      lo = w[0].get<int>();
      hi = w[1].get<int>();
    }
    int trunc = degree + 8;
    if (cfg.contains("trunc")) trunc = cfg.at("trunc").get<int>();
    if (!out)
      qva::fail(qva::ErrorCode::InvalidInput, "out must not be NULL");
    *out = new qva_engine{qva::AhContext(g, degree, lo, hi, trunc)};
    return qva::Json(nullptr);
  });
  qva_string_free(sink);
  return rc;
}

void qva_engine_destroy(qva_engine* engine) { delete engine; }

int qva_engine_info(qva_engine* engine, char** out_json) {
  return guarded(out_json, [&]() -> qva::Json {
    if (!engine)
      qva::fail(qva::ErrorCode::InvalidInput, "engine must not be NULL");
    const qva::AhContext& ctx = engine->ctx;
    qva::Json out;
    out["super"] = ctx.super();
    out["epsilon"] = ctx.factorization().epsilon;
    out["degree_bound"] = ctx.degree_bound();
    out["window"] = {ctx.window_lo(), ctx.window_hi()};
    out["h"] = qva::series_json(ctx.h());
    out["q"] = qva::series_json(ctx.factorization().q);
    return out;
  });
}

int qva_engine_basis(qva_engine* engine, int degree, char** out_json) {
  return guarded(out_json, [&]() -> qva::Json {
    if (!engine)
      qva::fail(qva::ErrorCode::InvalidInput, "engine must not be NULL");
    qva::Json out = qva::Json::array();
    for (const auto& v : engine->ctx.pbw_vectors(degree))
      out.push_back(qva::vector_json(v));
    return out;
  });
}

int qva_engine_act(qva_engine* engine, const char* gen, int mode,
                   const char* vector_json, char** out_json) {
  return guarded(out_json, [&]() -> qva::Json {
    if (!engine)
      qva::fail(qva::ErrorCode::InvalidInput, "engine must not be NULL");
    qva::Gen g = parse_gen(gen);
    qva::FockVector v = parse_vector(engine->ctx, vector_json);
    return qva::vector_json(engine->ctx.apply_mode(g, mode, v));
  });
}

int qva_engine_phi(qva_engine* engine, int i, const char* vector_json,
                   char** out_json) {
  return guarded(out_json, [&]() -> qva::Json {
    if (!engine)
      qva::fail(qva::ErrorCode::InvalidInput, "engine must not be NULL");
    qva::FockVector v = parse_vector(engine->ctx, vector_json);
    return qva::vector_json(engine->ctx.apply_phi(i, v));
  });
}

int qva_engine_verify_relations(qva_engine* engine, int degree, int win_lo,
                                int win_hi, char** out_json) {
  return guarded(out_json, [&]() -> qva::Json {
    if (!engine)
      qva::fail(qva::ErrorCode::InvalidInput, "engine must not be NULL");
    return qva::relation_report_json(
        engine->ctx.verify_relations(degree, win_lo, win_hi));
  });
}

int qva_engine_verify_independence(qva_engine* engine, int max_degree,
                                   char** out_json) {
  return guarded(out_json, [&]() -> qva::Json {
    if (!engine)
      qva::fail(qva::ErrorCode::InvalidInput, "engine must not be NULL");
    return qva::independence_report_json(
        engine->ctx.verify_pbw_independence(max_degree));
  });
}

int qva_engine_verify_derivation(qva_engine* engine, int degree, int m_lo,
                                 int m_hi, int phi_imax, char** out_json) {
  return guarded(out_json, [&]() -> qva::Json {
    if (!engine)
      qva::fail(qva::ErrorCode::InvalidInput, "engine must not be NULL");
    return qva::relation_report_json(
        engine->ctx.verify_derivation(degree, m_lo, m_hi, phi_imax));
  });
}

int qva_u_lambda(const char* lambda, char** out_json) {
  return guarded(out_json, [&]() {
    return qva::aalpha_module_json(
        qva::make_u_lambda(parse_scalar_text(lambda, "lambda")));
  });
}

int qva_verify_aalpha(const char* alpha, const char* module_json,
                      char** out_json) {
  return guarded(out_json, [&]() {
    qva::AAlphaModule u =
        qva::aalpha_module_from_json(parse_text(module_json, "module"));
    return qva::aalpha_report_json(
        qva::verify_aalpha(u, parse_scalar_text(alpha, "alpha")));
  });
}

int qva_irreducible(const char* module_json, char** out_json) {
  return guarded(out_json, [&]() {
    qva::AAlphaModule u =
        qva::aalpha_module_from_json(parse_text(module_json, "module"));
    return qva::irreducibility_json(qva::check_irreducible_2dim(u));
  });
}

int qva_classify_aalpha(const char* alpha, char** out_json) {
  return guarded(out_json, [&]() {
    return qva::classify_json(
        qva::classify_aalpha(parse_scalar_text(alpha, "alpha")));
  });
}

int qva_verma(const char* g_json, const char* module_json, int degree_bound,
              int word_cap, char** out_json) {
  return guarded(out_json, [&]() {
    qva::RationalFn g = parse_g(g_json);
    qva::AAlphaModule u =
        qva::aalpha_module_from_json(parse_text(module_json, "module"));
    qva::ComponentTable table =
        qva::make_component_table(g, 2 * degree_bound + 8);
    qva::GradedModule mod = qva::build_verma(table, u, degree_bound, word_cap);
    qva::RelationReport rel = qva::verify_graded_relations(table, mod);
    qva::Json out;
    out["module"] = qva::graded_module_json(mod);
    out["relations"] = qva::relation_report_json(rel);
    return out;
  });
}

}  // extern "C"

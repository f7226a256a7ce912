// qva — command-line front end for the exact quantum vertex algebra engine.
// Talks to the library exclusively through the C interface in qva.h; all
// structured data crosses that boundary as JSON text.
//
// Exit codes: 0 success / verification passed, 1 verification found a
// counterexample, 2 invalid input or configuration, 3 the input g is not
// symmetric, 4 the input g needs irrational roots, 5 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qva.h"

namespace {

using Json = nlohmann::ordered_json;

struct CommonOpts {
  bool json = false;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

int exit_code_for(int rc) {
  switch (rc) {
    case QVA_OK:
      return 0;
    case QVA_E_SYMMETRY_VIOLATED:
      return 3;
    case QVA_E_IRRATIONAL_ROOTS:
      return 4;
    case QVA_E_FACTORIZATION_MISMATCH:
    case QVA_E_INTERNAL:
      return 5;
    default:
      return 2;
  }
}

// Option values starting with '@' name a file holding the actual payload.
std::string slurp_arg(const std::string& s) {
  if (s.empty() || s[0] != '@') return s;
  std::ifstream in(s.substr(1));
  if (!in) throw CLI::ValidationError("cannot read file: " + s.substr(1));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string strip_unit_den(const std::string& frac) {
  auto slash = frac.find('/');
  if (slash != std::string::npos && frac.substr(slash) == "/1")
    return frac.substr(0, slash);
  return frac;
}

std::string coeff_text(const Json& c) {
  if (c.is_string()) return strip_unit_den(c.get<std::string>());
  return c.dump();
}

std::string power_text(const std::string& var, int k) {
  std::string base = var.find('/') != std::string::npos ? "(" + var + ")" : var;
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

std::string series_text(int lo, const Json& coeffs, const std::string& var) {
  std::string out;
  int k = lo;
  for (const auto& c : coeffs) {
    std::string cs = coeff_text(c);
    if (cs != "0") {
      bool neg = !cs.empty() && cs[0] == '-';
      std::string mag = neg ? cs.substr(1) : cs;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (k == 0)
        out += mag;
      else if (mag == "1")
        out += power_text(var, k);
      else
        out += mag + " " + power_text(var, k);
    }
    ++k;
  }
  return out.empty() ? "0" : out;
}

std::string monomial_text(const Json& mono) {
  std::string out;
  for (const char* key : {"e", "f", "psi"}) {
    if (!mono.contains(key)) continue;
    for (const auto& m : mono.at(key))
      out += std::string(key) + "(" + std::to_string(m.get<long long>()) + ")";
  }
  return out + "|0>";
}

std::string vector_text(const Json& vec, const std::string& indent) {
  if (vec.empty()) return indent + "0";
  std::string out;
  for (const auto& term : vec) {
    if (!out.empty()) out += "\n";
    out += indent + coeff_text(term.at("c")) + "  " +
           monomial_text(term.at("mono"));
  }
  return out;
}

std::string witness_text(const Json& w) {
  std::ostringstream os;
  os << w.value("check", std::string("?")) << " m=" << w.value("m", 0)
     << " n=" << w.value("n", 0) << " degree=" << w.value("degree", 0)
     << " vector=" << w.value("vector_index", 0) << " at "
     << w.value("monomial", std::string("?")) << ": lhs="
     << coeff_text(w.value("lhs", Json("?"))) << " rhs="
     << coeff_text(w.value("rhs", Json("?")));
  return os.str();
}

std::string relation_summary(const Json& rep) {
  std::ostringstream os;
  bool pass = rep.value("pass", false);
  os << (pass ? "PASS" : "FAIL") << " (" << rep.value("checks", 0)
     << " checks";
  const auto& ws = rep.at("witnesses");
  if (!ws.empty()) {
    os << ", " << ws.size() << " witness" << (ws.size() == 1 ? "" : "es")
       << ")\n  first: " << witness_text(ws.front());
  } else {
    os << ")";
  }
  return os.str();
}

// Shared invocation plumbing: runs the C call, annotates/prints the payload,
// returns the process exit code. `humanize` turns the payload into terminal
// text; `passed` extracts the verdict for verification commands (nullptr
// means the command has no pass/fail semantics).
template <typename Call, typename Humanize>
int dispatch(const CommonOpts& opts, Call&& call, Humanize&& humanize,
             bool (*passed)(const Json&)) {
  auto t0 = std::chrono::steady_clock::now();
  char* raw = nullptr;
  int rc = call(&raw);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::string payload;
  if (raw) {
    payload.assign(raw);
    qva_string_free(raw);
  }
  if (rc != QVA_OK) {
    std::cerr << "qva: error [" << qva_error_name(rc)
              << "]: " << qva_last_error() << "\n";
    return exit_code_for(rc);
  }

  Json body = Json::parse(payload);
  bool ok = passed ? passed(body) : true;

  std::string text;
  if (opts.json) {
    if (opts.seed) body["seed"] = *opts.seed;
    if (opts.timing) body["timing_ms"] = ms;
    text = body.dump(2) + "\n";
  } else {
    text = humanize(body);
    if (!text.empty() && text.back() != '\n') text += "\n";
    if (opts.seed) text += "seed: " + std::to_string(*opts.seed) + "\n";
    if (opts.timing) text += "timing: " + std::to_string(ms) + " ms\n";
  }

  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path);
    if (!out) {
      std::cerr << "qva: cannot write " << opts.out_path << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return ok ? 0 : 1;
}

bool report_pass(const Json& j) { return j.value("pass", false); }
bool verma_pass(const Json& j) {
  return j.at("relations").value("pass", false);
}

void add_common(CLI::App* sub, CommonOpts* opts) {
  sub->add_flag("--json", opts->json, "Emit the full JSON payload");
  sub->add_option("--out", opts->out_path, "Write output to a file");
  sub->add_option("--seed", opts->seed,
                  "Echoed into the output (the engine is deterministic)");
  sub->add_flag("--timing", opts->timing, "Report elapsed wall time");
}

std::string engine_config(const std::string& g_json, int degree,
                          const std::vector<int>& window,
                          std::optional<int> trunc) {
  Json cfg;
  cfg["g"] = Json::parse(g_json);
  cfg["degree_bound"] = degree;
  if (window.size() == 2) cfg["window"] = window;
  if (trunc) cfg["trunc"] = *trunc;
  return cfg.dump();
}

// Creates the engine, runs fn with it, destroys it. Returns the C code.
template <typename Fn>
auto with_engine(const std::string& cfg, Fn&& fn) {
  return [cfg, fn](char** out) {
    qva_engine* eng = nullptr;
    int rc = qva_engine_create(cfg.c_str(), &eng);
    if (rc != QVA_OK) return rc;
    rc = fn(eng, out);
    qva_engine_destroy(eng);
    return rc;
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qva — exact engine for a quantum vertex algebra: series expansions, "
      "the vacuum module and its relation checks, and graded modules over "
      "the associated quantum algebra"};
  app.require_subcommand(1);

  // Option storage shared across subcommands (each parse touches one).
  std::string g_arg, vec_arg, module_arg, gen_arg, at_arg = "0";
  std::string alpha_arg, lambda_arg;
  int trunc = 16, degree = 3, mode = 0, phi_i = 0, phi_imax = 4;
  std::optional<int> engine_trunc;
  int word_cap = -1;
  std::vector<int> window;
  CommonOpts opts;

  auto add_g = [&](CLI::App* sub) {
    return sub
        ->add_option("--g", g_arg,
                     "Rational function {\"num\":[...],\"den\":[...]} "
                     "(inline JSON or @file)")
        ->required();
  };
  auto module_json = [&]() -> std::string {
    if (!module_arg.empty()) return slurp_arg(module_arg);
    if (!lambda_arg.empty()) {
      char* out = nullptr;
      int rc = qva_u_lambda(lambda_arg.c_str(), &out);
      if (rc != QVA_OK) {
        std::string msg = qva_last_error();
        qva_string_free(out);
        throw CLI::ValidationError("--u-lambda: " + msg);
      }
      std::string s(out);
      qva_string_free(out);
      return s;
    }
    throw CLI::ValidationError("need --module or --u-lambda");
  };
  auto add_module = [&](CLI::App* sub) {
    sub->add_option("--module", module_arg,
                    "Zero-mode module {\"e0\":...,\"f0\":...,\"psi0\":...} "
                    "(inline JSON or @file)");
    sub->add_option("--u-lambda", lambda_arg,
                    "Use the standard 2-dimensional module at this lambda");
  };

  CLI::App* expand = app.add_subcommand(
      "expand", "Expand g as a series at 0, infinity, or in e^x");
  add_g(expand);
  expand->add_option("--at", at_arg, "Expansion point: 0, inf, or exp")
      ->check(CLI::IsMember({"0", "inf", "exp"}));
  expand->add_option("--trunc", trunc, "Retain powers below this bound");
  add_common(expand, &opts);

  CLI::App* factor = app.add_subcommand(
      "factor", "Factor h(x) = g(e^x) as eps * q(x)/q(-x) with q(0) = 1");
  add_g(factor);
  factor->add_option("--trunc", trunc, "Retain powers below this bound");
  add_common(factor, &opts);

  CLI::App* basis = app.add_subcommand(
      "vacuum-basis", "Spanning vectors of the vacuum module at one weight");
  add_g(basis);
  basis->add_option("--degree", degree, "Weight to enumerate")->required();
  basis->add_option("--trunc", engine_trunc, "Series truncation override");
  add_common(basis, &opts);

  CLI::App* act = app.add_subcommand(
      "act", "Apply one generator mode to a vacuum-module vector");
  add_g(act);
  act->add_option("--gen", gen_arg, "Generator: e, f, or psi")
      ->required()
      ->check(CLI::IsMember({"e", "f", "psi"}));
  act->add_option("--mode", mode, "Mode index (negative modes create)")
      ->required();
  act->add_option("--vec", vec_arg,
                  "Input vector JSON or @file (default: the vacuum)");
  act->add_option("--degree", degree, "Engine degree bound (default 6)")
      ->default_val(6);
  act->add_option("--trunc", engine_trunc, "Series truncation override");
  add_common(act, &opts);

  CLI::App* phi = app.add_subcommand(
      "phi", "Apply the i-th dressing operator to a vacuum-module vector");
  add_g(phi);
  phi->add_option("--i", phi_i, "Dressing operator index (i >= 0)")
      ->required();
  phi->add_option("--vec", vec_arg,
                  "Input vector JSON or @file (default: the vacuum)");
  phi->add_option("--degree", degree, "Engine degree bound (default 6)")
      ->default_val(6);
  phi->add_option("--trunc", engine_trunc, "Series truncation override");
  add_common(phi, &opts);

  CLI::App* verify = app.add_subcommand(
      "verify", "Run one of the exhaustive verification suites");
  std::string suite;
  verify->add_option("suite", suite,
                     "ah (defining relations), independence (exact ranks), "
                     "derivation (grading operator), atilde (graded module "
                     "relations), aalpha (zero-mode relations)")
      ->required()
      ->check(CLI::IsMember(
          {"ah", "independence", "derivation", "atilde", "aalpha"}));
  verify->add_option("--g", g_arg,
                     "Rational function (inline JSON or @file); required "
                     "for ah/independence/derivation/atilde");
  verify->add_option("--degree", degree,
                     "Maximum weight (ah/derivation/independence) or degree "
                     "bound (atilde)");
  verify->add_option("--window", window, "Mode window [lo hi]")
      ->expected(2);
  verify->add_option("--phi-imax", phi_imax,
                     "Highest dressing index for the derivation suite");
  verify->add_option("--word-cap", word_cap,
                     "Straightening word cap for atilde (default: degree)");
  verify->add_option("--alpha", alpha_arg, "Zero-mode parameter for aalpha");
  add_module(verify);
  verify->add_option("--trunc", engine_trunc, "Series truncation override");
  add_common(verify, &opts);

  CLI::App* classify = app.add_subcommand(
      "classify-aalpha", "Classify the zero-mode algebra at one alpha");
  classify->add_option("--alpha", alpha_arg, "Parameter value, e.g. -1 or 3/2")
      ->required();
  add_common(classify, &opts);

  CLI::App* irred = app.add_subcommand(
      "irreducible", "Decide irreducibility of a 2-dimensional zero-mode "
                     "module");
  add_module(irred);
  add_common(irred, &opts);

  CLI::App* verma = app.add_subcommand(
      "verma", "Build the truncated induced module over the mode algebra of "
               "g and verify its graded relations");
  add_g(verma);
  add_module(verma);
  verma->add_option("--degree", degree, "Degree bound")->default_val(2);
  verma->add_option("--word-cap", word_cap,
                    "Straightening word cap (default: degree)");
  add_common(verma, &opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (expand->parsed()) {
      std::string g = slurp_arg(g_arg);
      return dispatch(
          opts,
          [&](char** out) {
            return qva_expand(g.c_str(), at_arg.c_str(), trunc, out);
          },
          [&](const Json& j) {
            return "g at " + at_arg + ": " +
                   series_text(j.at("lo").get<int>(), j.at("coeffs"),
                               j.at("var").get<std::string>()) +
                   "  (+ O(" +
                   power_text(j.at("var").get<std::string>(),
                              j.at("trunc").get<int>()) +
                   "))";
          },
          nullptr);
    }
    if (factor->parsed()) {
      std::string g = slurp_arg(g_arg);
      return dispatch(
          opts,
          [&](char** out) { return qva_factor(g.c_str(), trunc, out); },
          [&](const Json& j) {
            const Json& h = j.at("h");
            const Json& q = j.at("q");
            std::ostringstream os;
            os << "epsilon = " << j.at("epsilon").get<int>() << "\n";
            os << "q = "
               << series_text(q.at("lo").get<int>(), q.at("coeffs"), "x")
               << "\n";
            os << "h = "
               << series_text(h.at("lo").get<int>(), h.at("coeffs"), "x");
            return os.str();
          },
          nullptr);
    }
    if (basis->parsed()) {
      std::string cfg =
          engine_config(slurp_arg(g_arg), degree, window, engine_trunc);
      return dispatch(
          opts,
          with_engine(cfg,
                      [&](qva_engine* e, char** out) {
                        return qva_engine_basis(e, degree, out);
                      }),
          [&](const Json& j) {
            std::ostringstream os;
            os << j.size() << " vectors at weight " << degree << ":";
            int idx = 0;
            for (const auto& v : j) {
              os << "\n[" << idx++ << "]\n" << vector_text(v, "  ");
            }
            return os.str();
          },
          nullptr);
    }
    if (act->parsed() || phi->parsed()) {
      std::string vec =
          vec_arg.empty() ? R"([{"mono":{},"c":1}])" : slurp_arg(vec_arg);
      std::string cfg =
          engine_config(slurp_arg(g_arg), degree, window, engine_trunc);
      std::function<int(char**)> call;
      if (act->parsed())
        call = with_engine(cfg, [&](qva_engine* e, char** out) {
          return qva_engine_act(e, gen_arg.c_str(), mode, vec.c_str(), out);
        });
      else
        call = with_engine(cfg, [&](qva_engine* e, char** out) {
          return qva_engine_phi(e, phi_i, vec.c_str(), out);
        });
      return dispatch(
          opts, call, [&](const Json& j) { return vector_text(j, "  "); },
          nullptr);
    }
    if (verify->parsed()) {
      if (suite == "aalpha") {
        if (alpha_arg.empty())
          throw CLI::ValidationError("verify aalpha needs --alpha");
        std::string mod = module_json();
        return dispatch(
            opts,
            [&](char** out) {
              return qva_verify_aalpha(alpha_arg.c_str(), mod.c_str(), out);
            },
            [&](const Json& j) {
              std::ostringstream os;
              os << "zero-mode relations at alpha="
                 << coeff_text(j.at("alpha")) << ": "
                 << (j.value("pass", false) ? "PASS" : "FAIL") << " ("
                 << j.value("checks", 0) << " checks)";
              for (const auto& w : j.at("witnesses"))
                os << "\n  " << w.value("relation", std::string("?"))
                   << " entry (" << w.value("row", 0) << ","
                   << w.value("col", 0) << "): lhs="
                   << coeff_text(w.value("lhs", Json("?"))) << " rhs="
                   << coeff_text(w.value("rhs", Json("?")));
              return os.str();
            },
            report_pass);
      }
      if (suite == "atilde") {
        if (g_arg.empty())
          throw CLI::ValidationError("verify atilde needs --g");
        std::string g = slurp_arg(g_arg);
        std::string mod = module_json();
        int cap = word_cap > 0 ? word_cap : degree;
        return dispatch(
            opts,
            [&](char** out) {
              return qva_verma(g.c_str(), mod.c_str(), degree, cap, out);
            },
            [&](const Json& j) {
              const Json& m = j.at("module");
              std::ostringstream os;
              os << "graded module: dims=" << m.at("dims").dump()
                 << " stabilized=" << m.at("stabilized").dump() << "\n";
              os << "graded relations: "
                 << relation_summary(j.at("relations"));
              return os.str();
            },
            verma_pass);
      }
      if (g_arg.empty())
        throw CLI::ValidationError("verify " + suite + " needs --g");
      std::string cfg = engine_config(slurp_arg(g_arg), degree, window,
                                      engine_trunc);
      int lo = window.size() == 2 ? window[0] : -(degree + 1);
      int hi = window.size() == 2 ? window[1] : degree + 2;
      auto humanize = [&](const Json& j) {
        if (suite == "independence") {
          std::ostringstream os;
          os << "independence: " << (j.value("pass", false) ? "PASS" : "FAIL");
          for (const auto& d : j.at("per_degree"))
            os << "\n  degree " << d.value("degree", 0) << ": "
               << d.value("count", 0) << " vectors, rank "
               << d.value("rank", 0)
               << (d.value("pass", false) ? "" : "  <- MISMATCH");
          return os.str();
        }
        return (suite == "ah" ? std::string("defining relations: ")
                              : std::string("derivation: ")) +
               relation_summary(j);
      };
      std::function<int(char**)> call;
      if (suite == "ah")
        call = with_engine(cfg, [&](qva_engine* e, char** out) {
          return qva_engine_verify_relations(e, degree, lo, hi, out);
        });
      else if (suite == "independence")
        call = with_engine(cfg, [&](qva_engine* e, char** out) {
          return qva_engine_verify_independence(e, degree, out);
        });
      else
        call = with_engine(cfg, [&](qva_engine* e, char** out) {
          return qva_engine_verify_derivation(e, degree, lo, hi, phi_imax,
                                              out);
        });
      return dispatch(opts, call, humanize, report_pass);
    }
    if (classify->parsed()) {
      return dispatch(
          opts,
          [&](char** out) {
            return qva_classify_aalpha(alpha_arg.c_str(), out);
          },
          [&](const Json& j) {
            std::ostringstream os;
            os << "alpha=" << coeff_text(j.at("alpha")) << ": "
               << j.value("case", std::string("?"));
            for (const auto& note : j.at("notes"))
              os << "\n  " << note.get<std::string>();
            if (!j.at("nilpotency").is_null()) {
              const Json& c = j.at("nilpotency");
              os << "\n  nilpotency certificate: "
                 << (c.value("certified", false) ? "certified" : "NOT certified")
                 << " (cap " << c.value("word_length_cap", 0) << ", "
                 << c.value("ambient_words", 0) << " words, "
                 << c.value("relator_rows", 0) << " relator rows)";
            }
            return os.str();
          },
          nullptr);
    }
    if (irred->parsed()) {
      std::string mod = module_json();
      return dispatch(
          opts,
          [&](char** out) { return qva_irreducible(mod.c_str(), out); },
          [&](const Json& j) {
            return std::string(j.value("irreducible", false)
                                   ? "irreducible"
                                   : "reducible") +
                   " (" + j.value("detail", std::string("")) + ")";
          },
          nullptr);
    }
    if (verma->parsed()) {
      std::string g = slurp_arg(g_arg);
      std::string mod = module_json();
      int cap = word_cap > 0 ? word_cap : degree;
      return dispatch(
          opts,
          [&](char** out) {
            return qva_verma(g.c_str(), mod.c_str(), degree, cap, out);
          },
          [&](const Json& j) {
            const Json& m = j.at("module");
            std::ostringstream os;
            os << "alpha = " << coeff_text(m.at("alpha")) << "\n";
            os << "dims = " << m.at("dims").dump()
               << "  stabilized = " << m.at("stabilized").dump() << "\n";
            os << "basis:";
            int d = 0;
            for (const auto& layer : m.at("basis")) {
              os << "\n  degree " << d++ << ":";
              for (const auto& w : layer)
                os << " " << w.get<std::string>();
            }
            os << "\ngraded relations: " << relation_summary(j.at("relations"));
            return os.str();
          },
          verma_pass);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "qva: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "qva: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qva: " << e.what() << "\n";
    return 5;
  }
  return 2;
}

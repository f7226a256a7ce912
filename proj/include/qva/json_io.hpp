#pragma once

#include <string>

#include <json.hpp>

#include "qva/ding_iohara.hpp"
#include "qva/fock.hpp"
#include "qva/ratfunc.hpp"
#include "qva/report.hpp"

namespace qva {

// All engine JSON uses ordered maps so output is deterministic.
using Json = nlohmann::ordered_json;

// Scalars serialize as the canonical "num/den" string; parsing accepts a
// JSON integer or a "num" / "num/den" string (InvalidInput otherwise).
Json scalar_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

// Polynomials and rational functions: coefficient arrays, lowest power
// first. A rational function is {"num": [...], "den": [...]}; "den"
// defaults to [1] when absent.
Json poly_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j);
Json ratfunc_json(const RationalFn& g);
RationalFn ratfunc_from_json(const Json& j);

// Series: {"lo": l, "trunc": t, "coeffs": [...]} with coeffs for powers
// l .. t-1.
Json series_json(const TruncSeries& s);

// Fock data: a monomial lists the modes of each block (negative integers,
// e.g. ebar(-2) ebar(-1) -> "e": [-2, -1]); a vector is an array of
// {"mono": ..., "c": ...} terms in the deterministic basis order.
Json monomial_json(const FockMonomial& m);
Json vector_json(const FockVector& v);

// Reports.
Json witness_json(const Witness& w);
Json relation_report_json(const RelationReport& r);
Json independence_report_json(const IndependenceReport& r);

// Zero-mode modules and graded modules.
Json mat_json(const Mat& m);
Mat mat_from_json(const Json& j);
Json aalpha_module_json(const AAlphaModule& u);
AAlphaModule aalpha_module_from_json(const Json& j);
Json aalpha_report_json(const AAlphaReport& r);
Json irreducibility_json(const IrreducibilityReport& r);
Json classify_json(const ClassifyReport& r);
Json graded_module_json(const GradedModule& m);

// Canonical dump: 2-space indent plus a trailing newline.
std::string dump_json(const Json& j);

}  // namespace qva

#pragma once

#include <string>
#include <vector>

namespace qva {

// One located counterexample from a verification suite.
struct Witness {
  std::string check;        // e.g. "ee", "ef", "derivation_e", "phi_compat"
  int m = 0, n = 0;         // mode arguments (n unused where inapplicable)
  int degree = 0;           // degree of the probe vector
  int vector_index = 0;     // index of the probe within its degree
  std::string monomial;     // first differing basis monomial / basis word
  std::string lhs_coeff;
  std::string rhs_coeff;
};

struct RelationReport {
  bool pass = true;
  long long checks = 0;
  std::vector<Witness> witnesses;  // capped; empty iff pass
};

struct IndependenceDegree {
  int degree = 0;
  long long count = 0;  // vectors produced
  long long rank = 0;   // exact rank of their coordinate matrix
  bool pass = false;
};

struct IndependenceReport {
  bool pass = true;
  std::vector<IndependenceDegree> per_degree;
};

}  // namespace qva

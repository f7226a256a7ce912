#pragma once

#include <map>
#include <vector>

#include "qva/scalar.hpp"

namespace qva {

// Sparse row vector: column index -> nonzero coefficient.
using SparseRow = std::map<int, Scalar>;

void row_add_scaled(SparseRow* target, const SparseRow& src, const Scalar& c);

// Incrementally maintained reduced row echelon form over Q with the pivot
// of each row at its LARGEST column index. Reducing a vector eliminates
// pivot columns from the top down, so the induced basis of the quotient
// space consists of the never-pivotal (low-index) columns. Callers control
// which vectors get eliminated first through the column numbering.
class RowSpace {
 public:
  // Fully reduces v against the stored rows.
  SparseRow reduce(SparseRow v) const;
  // Reduces and, if nonzero remains, normalizes and inserts it (also
  // eliminating its pivot from the stored rows). Returns true when the
  // rank grew.
  bool add(SparseRow v);
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int col) const { return rows_.count(col) > 0; }
  // All columns in [0, n) that are not pivotal, ascending.
  std::vector<int> nonpivot_columns(int n) const;

 private:
  // pivot column -> row (pivot coefficient 1, all other pivots eliminated)
  std::map<int, SparseRow, std::greater<int>> rows_;
};

}  // namespace qva

#include "qva/linalg.hpp"

namespace qva {

void row_add_scaled(SparseRow* target, const SparseRow& src, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [col, x] : src) {
    auto [it, inserted] = target->try_emplace(col, Scalar(0));
    it->second += x * c;
    if (it->second.is_zero()) target->erase(it);
  }
}

SparseRow RowSpace::reduce(SparseRow v) const {
  // Eliminate from the largest column down; each elimination only
  // introduces entries at strictly smaller columns.
  SparseRow out;
  while (!v.empty()) {
    auto top = std::prev(v.end());
    int col = top->first;
    Scalar c = top->second;
    auto it = rows_.find(col);
    if (it == rows_.end()) {
      out.emplace(col, std::move(c));
      v.erase(top);
    } else {
      row_add_scaled(&v, it->second, -c);  // removes col (pivot coeff is 1)
    }
  }
  return out;
}

bool RowSpace::add(SparseRow v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  auto top = std::prev(v.end());
  int pivot = top->first;
  Scalar inv = top->second.inverse();
  for (auto& [col, c] : v) c *= inv;
  // Back-substitute into existing rows so the form stays fully reduced.
  for (auto& [p, row] : rows_) {
    auto hit = row.find(pivot);
    if (hit == row.end()) continue;
    Scalar c = hit->second;
    row.erase(hit);
    row_add_scaled(&row, v, -c);
    row.erase(pivot);
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

std::vector<int> RowSpace::nonpivot_columns(int n) const {
  std::vector<int> out;
  for (int c = 0; c < n; ++c)
    if (!rows_.count(c)) out.push_back(c);
  return out;
}

}  // namespace qva

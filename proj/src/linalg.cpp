#include "fdet/linalg.hpp"

namespace fdet {

void axpy(SparseVec& y, const QComplex& c, const SparseVec& x) {
  if (c.is_zero()) return;
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, c * v);
    if (!inserted) {
      it->second += c * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

SparseVec scaled(const SparseVec& x, const QComplex& c) {
  SparseVec out;
  if (c.is_zero()) return out;
  for (const auto& [k, v] : x) out.emplace_hint(out.end(), k, v * c);
  return out;
}

Reduction EchelonBasis::reduce(const SparseVec& v) const {
  Reduction r{v, {}};
  auto it = r.remainder.begin();
  while (it != r.remainder.end()) {
    auto p = pivot_row_.find(it->first);
    if (p == pivot_row_.end()) {
      ++it;
      continue;
    }
    const std::size_t key = it->first;
    const QComplex c = it->second;
    const Row& row = rows_[p->second];
    axpy(r.remainder, -c, row.vec);
    axpy(r.combination, c, row.prov);
    it = r.remainder.upper_bound(key);
  }
  return r;
}

std::optional<SparseVec> EchelonBasis::insert(const SparseVec& v, std::size_t tag) {
  Reduction r = reduce(v);
  SparseVec prov{{tag, QComplex(1)}};
  axpy(prov, QComplex(-1), r.combination);
  if (r.remainder.empty()) return prov;
  const auto lead = r.remainder.begin();
  const QComplex inv = QComplex(1) / lead->second;
  pivot_row_.emplace(lead->first, rows_.size());
  rows_.push_back({scaled(r.remainder, inv), scaled(prov, inv)});
  return std::nullopt;
}

}  // namespace fdet

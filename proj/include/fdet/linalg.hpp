#pragma once

// Exact sparse linear algebra over complex rationals: a semi-echelon basis
// that records, for every stored row, how it was obtained from the inserted
// vectors. This is enough for span membership, rank, kernels and solving.

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fdet/qcomplex.hpp"

namespace fdet {

using SparseVec = std::map<std::size_t, QComplex>;

/// y += c * x
void axpy(SparseVec& y, const QComplex& c, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const QComplex& c);

struct Reduction {
  SparseVec remainder;
  /// Coefficients over insertion tags: v = sum combination[t] * input_t + remainder.
  SparseVec combination;
};

class EchelonBasis {
 public:
  /// Inserts v under `tag`. Returns the linear relation among inputs
  /// (sum rel[t] * input_t = 0, with rel[tag] = 1) when v is dependent.
  std::optional<SparseVec> insert(const SparseVec& v, std::size_t tag);

  Reduction reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).remainder.empty(); }

  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t index) const { return pivot_row_.count(index) > 0; }

 private:
  struct Row {
    SparseVec vec;   // leading entry 1 at its pivot
    SparseVec prov;  // vec = sum prov[t] * input_t
  };
  std::vector<Row> rows_;
  std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

}  // namespace fdet

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dca/quiver.hpp"

namespace dca {

// Coefficients over global basis ids.
using SparseVec = std::map<int, Rat>;

struct BasisMon {
  Word word;  // empty for a vertex idempotent
  int src = 0, tgt = 0, weight = 0;
};

class TruncatedAlgebra;
using AlgebraPtr = std::shared_ptr<const TruncatedAlgebra>;

struct AlgebraElement {
  const TruncatedAlgebra* alg = nullptr;
  SparseVec c;
  bool is_zero() const { return c.empty(); }
};

// The path algebra kQ/(I), weight-graded, exact through w_max.  Also serves
// as the representation of the cornering eAe and the quotient A/AeA, which
// reuse the parent's monomials.
class TruncatedAlgebra : public std::enable_shared_from_this<TruncatedAlgebra> {
 public:
  static AlgebraPtr build(const WeightedQuiverPresentation& p, int w_max);

  AlgebraPtr corner_algebra() const;                // eAe
  AlgebraPtr quotient_by_idempotent_ideal() const;  // A/AeA

  WeightedQuiverPresentation pres;
  int w_max = 0;
  std::vector<BasisMon> basis;

  int n_vertices() const { return (int)pres.vertices.size(); }
  const std::vector<int>& block(int s, int t, int w) const;
  int dim(int s, int t, int w) const { return (int)block(s, t, w).size(); }
  int dim_weight(int w) const;
  int total_dim() const { return (int)basis.size(); }
  bool certify_finite() const;
  std::string mon_label(int id) const;

  AlgebraElement zero() const { return {this, {}}; }
  AlgebraElement monomial(int id, const Rat& coeff = 1) const;
  AlgebraElement idempotent(int v) const;
  // Normal form of an arrow word; non-composable words give zero.
  AlgebraElement path_element(const Word& w) const;
  AlgebraElement from_poly(const PathPoly& poly) const;

  AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement scale(const Rat& c, const AlgebraElement& x) const;
  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;

  // Product of two basis monomials; throws window_error above w_max.
  const SparseVec& mul_mon(int i, int j) const;

 private:
  enum class Kind { path, corner, quotient };
  Kind kind_ = Kind::path;
  AlgebraPtr parent_;
  std::vector<int> parent_id_;        // own id -> parent id (corner/quotient)
  std::map<int, int> own_id_;         // parent id -> own id (corner)
  std::map<int, SparseVec> proj_;     // parent id -> own coords (quotient)
  std::vector<std::vector<std::vector<std::vector<int>>>> blocks_;  // [s][t][w]
  std::map<Word, SparseVec> red_;     // candidate word -> normal form (path kind)
  mutable std::map<std::pair<int, int>, SparseVec> mul_cache_;

  SparseVec extend(const SparseVec& v, int arrow) const;
  SparseVec project_parent(const SparseVec& v) const;
  friend class std::shared_ptr<TruncatedAlgebra>;
};

}  // namespace dca

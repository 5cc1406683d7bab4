#pragma once

#include <functional>
#include <set>

#include "dca/complex.hpp"
#include "dca/end_dga.hpp"

namespace dca {

// A bigraded dga presented abstractly: block complex plus basis products.
// Both the endomorphism dga and truncated free dgas are viewed through this.
struct DgaView {
  const BlockComplex* cx = nullptr;
  std::function<Vec(BlockKey, int, BlockKey, int)> mul;
  BlockKey unit_key{0, 0};
  Vec unit;
  std::function<bool(BlockKey)> trusted;

  bool is_trusted(BlockKey k) const { return trusted ? trusted(k) : cx->is_complete(k); }
};

DgaView view_of(const EndomorphismDga& E);

// A-infinity structure on a finite bigraded basis.  Operations are stored as
// exact tables on non-unit basis tuples; missing tuples are zero.  m_1 is the
// differential of cx.  Strict unitality is built into m().
struct AInfinityStructure {
  BlockComplex cx;
  int arity_max = 2;
  int w_lo = 0, w_hi = 0;  // certified total-weight window for tuples

  std::vector<BlockKey> elem_block;  // gid -> block
  std::vector<int> elem_idx;         // gid -> index within block
  std::map<BlockKey, std::vector<int>> gids;
  int unit_gid = -1;
  std::map<std::vector<int>, SparseVec> ops;
  std::set<std::vector<int>> uncertified;

  int deg(int gid) const { return elem_block[gid].deg; }
  int wt(int gid) const { return elem_block[gid].w; }
  int tuple_weight(const std::vector<int>& t) const;
  int n_elems() const { return (int)elem_block.size(); }
  std::string label(int gid) const;

  // Throws window_error outside the certified window.
  SparseVec m(const std::vector<int>& tuple) const;

  // Builds gid bookkeeping from cx; keeps ops empty.
  void index_basis();
  int gid_of(BlockKey k, int idx) const { return gids.at(k)[idx]; }
};

// Hodge data chosen per block: section, projection and homotopy.
struct TransferData {
  std::map<BlockKey, Mat> sigma, pi, h;
};

struct MinimalModel {
  AInfinityStructure M;
  TransferData T;
  // A-infinity quasi-isomorphism components: per non-unit basis tuple of M,
  // the value of f_n in E (f_1 = sigma).
  std::map<std::vector<int>, std::pair<BlockKey, Vec>> f;
};

// Suspension sign relating an n-ary operation on elements to the same
// operation on suspended elements (j running from 0).
int dec_sign_of(const std::vector<int>& degs);

// Merkulov transfer onto cohomology, Adams-graded blockwise.  Operations are
// computed for all non-unit basis tuples with arity <= arity_max and total
// weight in [w_lo, w_hi]; tuples whose evaluation would leave the trusted
// window are recorded as uncertified instead of being reported as zero.
MinimalModel transfer_minimal_model(const DgaView& E, int arity_max, int w_lo, int w_hi);

// A dga wrapped as an A-infinity structure (m_1 = d, m_2 = product).
AInfinityStructure ainfty_from_dga(const DgaView& E, int w_lo, int w_hi,
                                   int arity_max = 6);

bool check_stasheff(const AInfinityStructure& A, int arity_max);

struct MasseyResult {
  bool defined = false;
  BlockKey key;
  Vec representative;  // cocycle in the ambient dga's coordinates
  Mat indeterminacy;   // columns: cocycles spanning indeterminacy + coboundaries
};

MasseyResult massey_product(const DgaView& E,
                            const std::vector<std::pair<BlockKey, Vec>>& classes);

}  // namespace dca

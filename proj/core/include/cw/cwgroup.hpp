#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cw/cyclo.hpp"
#include "cw/qform.hpp"
#include "cw/series.hpp"

namespace cw {

struct CWGenerator {
  enum class Kind { Unit, Quad, MacWilliams };
  Kind kind;
  Elem param = 0;   // unit r or idempotent iota
  int phi_idx = -1; // for Quad
  CycMatrix mat;
};

/// x_v -> x_{rv}: permutation matrix with the 1 of row v in column rv.
CycMatrix gen_unit(const FormRing& fr, Elem r);
/// x_v -> exp(2 pi i phi(v)) x_v
CycMatrix gen_quad(const FormRing& fr, const QuadMap& phi);
CycMatrix gen_quad_idx(const FormRing& fr, int phi_idx);
/// Partial MacWilliams transform h_{iota, v_iota}.
CycMatrix gen_macwilliams(const FormRing& fr, const SymIdem& si);

/// Full generator list: rho over a generating set of R* (or all units),
/// rho over a generating set of Phi (or all of it), and one h per symmetric
/// idempotent.  Identity matrices and duplicates are dropped.
std::vector<CWGenerator> cw_generators(const FormRing& fr, bool reduced = true);

/// A closed finite group of exact cyclotomic matrices.  Elements live in an
/// append-only arena of canonical serializations, indexed by insertion (BFS)
/// order, so element indices are deterministic.
class MatrixGroup {
public:
  MatrixGroup() = default;

  const CycRing* ring() const { return ring_; }
  int dim() const { return dim_; }
  size_t order() const { return count_; }
  const std::vector<CycMatrix>& generators() const { return gens_; }

  CycMatrix element(size_t idx) const;
  /// Index of a matrix in the group, or -1.
  int64_t find(const CycMatrix& m) const;
  bool contains(const CycMatrix& m) const { return find(m) >= 0; }

  /// Breadth-first closure of the generators under multiplication.
  static MatrixGroup close(std::vector<CycMatrix> gens, size_t cap = 10'000'000);

  void dump(std::ostream& os) const;
  static MatrixGroup load(std::istream& is);

private:
  friend MatrixGroup close_impl(std::vector<CycMatrix>, size_t);
  bool insert(const CycMatrix& m);
  void rehash(size_t want);

  const CycRing* ring_ = nullptr;
  int dim_ = 0;
  std::vector<CycMatrix> gens_;
  std::vector<uint8_t> arena_;
  std::vector<uint64_t> offs_; // offs_[i] .. offs_[i+1] is element i
  std::vector<uint64_t> hashes_;
  std::vector<int64_t> table_; // open addressing, stores idx+1
  size_t count_ = 0;
};

/// Clifford-Weil group of genus m (generators from the matrix lift for m>1).
MatrixGroup build_group(const FormRing& fr, int genus = 1, size_t cap = 10'000'000,
                        bool reduced_gens = true);

/// Order of the cyclic group { c : cI in G }.
int64_t scalar_center(const MatrixGroup& G);
std::vector<Cyc> scalar_values(const MatrixGroup& G);

/// Molien series (1/|G|) sum_g 1/det(I - t g), truncated at `degree`.
/// Coefficients are verified to be nonnegative integers.
RatSeries molien(const MatrixGroup& G, int degree, int threads = 1);

/// Compress variables along a partition of the index set and close the
/// compressed generators.  Orbit compatibility of every generator is checked.
MatrixGroup symmetrize(const MatrixGroup& G, const std::vector<std::vector<int>>& orbits,
                       size_t cap = 10'000'000);

/// Orbits of the left action of R* on V, ascending by smallest element.
std::vector<std::vector<int>> unit_orbits(const FormRing& fr);

/// Greedy generating subset of the unit group (ascending element order).
std::vector<Elem> unit_group_generators(const FiniteRing& R);
/// Greedy generating subset of (Phi, +), as Phi indices.
std::vector<int> phi_group_generators(const FormRing& fr);

} // namespace cw

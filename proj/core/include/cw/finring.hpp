#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cw/errors.hpp"
#include "cw/rat.hpp"

namespace cw {

/// Elements of finite rings and modules are indices into the lexicographic
/// enumeration of residue vectors over the additive presentation.  Index 0 is
/// always the zero element.
using Elem = uint32_t;

struct RingSpec {
  enum class Kind { Zn, GF, MatRing, QuaternionicU, DirectProduct };
  Kind kind = Kind::Zn;
  int64_t n = 0;                 // Zn
  int64_t p = 0, f = 0;          // GF(p^f)
  std::vector<int64_t> poly;     // GF: monic irreducible, ascending coefficients, size f+1
  int m = 0;                     // MatRing dimension
  int64_t q = 0;                 // QuaternionicU parameter
  std::vector<RingSpec> sub;     // MatRing base (sub[0]) or DirectProduct factors

  static RingSpec Zn(int64_t n);
  static RingSpec GF(int64_t p, int64_t f, std::vector<int64_t> poly = {});
  static RingSpec MatRing(int m, RingSpec base);
  static RingSpec QuaternionicU(int64_t q);
  static RingSpec DirectProduct(std::vector<RingSpec> factors);
};

struct IdempotentSet {
  std::vector<Elem> elems;
  bool partial = false; // structured subset only (large matrix rings)
};

/// A finite ring presented by cyclic orders of additive generators and the
/// pairwise products of those generators.  Multiplication is the Z-bilinear
/// extension of the generator table; associativity and identity are checked
/// at construction.
class FiniteRing {
public:
  static std::shared_ptr<const FiniteRing> construct(const RingSpec& spec);
  static std::shared_ptr<const FiniteRing> mat_ring(int m, std::shared_ptr<const FiniteRing> base);

  size_t size() const { return size_; }
  int num_gens() const { return static_cast<int>(orders_.size()); }
  const std::vector<int64_t>& gen_orders() const { return orders_; }
  const std::string& name() const { return name_; }
  const RingSpec& spec() const { return spec_; }

  Elem zero() const { return 0; }
  Elem one() const { return one_; }
  Elem gen(int i) const { return gens_[i]; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  /// Additive n-fold multiple n*a.
  Elem zmul(int64_t n, Elem a) const;
  /// Multiplicative power a^k, k >= 0.
  Elem pow(Elem a, uint64_t k) const;

  std::vector<int64_t> residues(Elem a) const;
  Elem from_residues(std::span<const int64_t> r) const;

  /// All elements with a two-sided inverse, ascending index order.
  std::vector<Elem> units(size_t cap = (1u << 16)) const;
  std::optional<Elem> inverse(Elem a) const;
  bool is_unit(Elem a) const { return inverse(a).has_value(); }

  IdempotentSet idempotents(size_t cap = (1u << 16)) const;

  /// Base ring of a MatRing, null otherwise.
  std::shared_ptr<const FiniteRing> mat_base() const { return mat_base_; }
  int mat_dim() const { return mat_dim_; }
  /// Entry (i,j) of a MatRing element, as a base-ring element.
  Elem mat_entry(Elem a, int i, int j) const;
  Elem mat_from_entries(std::span<const Elem> entries) const;

private:
  FiniteRing() = default;
  void init(std::vector<int64_t> orders, std::vector<Elem> gen_prod, Elem one, std::string name);
  void validate() const;

  RingSpec spec_;
  std::string name_;
  std::vector<int64_t> orders_;
  std::vector<int64_t> strides_;
  std::vector<Elem> gens_;      // i-th additive generator as an element
  std::vector<Elem> gen_prod_;  // k*k generator products
  Elem one_ = 0;
  size_t size_ = 0;

  // dense tables, built when size_ <= kTableCap
  static constexpr size_t kTableCap = 1024;
  std::vector<Elem> add_tab_, mul_tab_, neg_tab_;
  std::vector<Elem> inv_tab_; // inverse or kNoInv, built with mul table
  static constexpr Elem kNoInv = 0xffffffffu;

  std::shared_ptr<const FiniteRing> mat_base_;
  int mat_dim_ = 0;

  Elem mul_slow(Elem a, Elem b) const;
};

/// A finite left module over a FiniteRing, presented like the ring itself
/// plus an action table of ring generators on module generators.
class FiniteModule {
public:
  static std::shared_ptr<const FiniteModule> regular(std::shared_ptr<const FiniteRing> ring);
  /// V^m as a left module over Mat_m(R); matring must be mat_ring(m, ring of base).
  static std::shared_ptr<const FiniteModule> power(std::shared_ptr<const FiniteModule> base,
                                                   int m,
                                                   std::shared_ptr<const FiniteRing> matring);

  const std::shared_ptr<const FiniteRing>& ring() const { return ring_; }
  size_t size() const { return size_; }
  int num_gens() const { return static_cast<int>(orders_.size()); }
  const std::vector<int64_t>& gen_orders() const { return orders_; }

  Elem zero() const { return 0; }
  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem zmul(int64_t n, Elem a) const;
  Elem act(Elem r, Elem v) const;

  std::vector<int64_t> residues(Elem a) const;
  Elem from_residues(std::span<const int64_t> r) const;

  /// For power modules: component c of v (an element of the base module).
  Elem component(Elem v, int c) const;
  Elem from_components(std::span<const Elem> comps) const;
  int power_degree() const { return power_m_; }
  const std::shared_ptr<const FiniteModule>& power_base() const { return power_base_; }
  bool is_regular() const { return regular_; }

private:
  FiniteModule() = default;
  void init(std::vector<int64_t> orders, std::vector<Elem> act_gen, std::string name);
  void validate() const;

  std::shared_ptr<const FiniteRing> ring_;
  std::string name_;
  std::vector<int64_t> orders_;
  std::vector<int64_t> strides_;
  std::vector<Elem> act_gen_; // ring-gen i (row) x module-gen j (col) -> elem
  size_t size_ = 0;

  static constexpr size_t kTableCap = 1024;
  static constexpr size_t kActTableCap = (1u << 20);
  std::vector<Elem> add_tab_, neg_tab_;
  std::vector<Elem> act_tab_; // |R| x |V|

  std::shared_ptr<const FiniteModule> power_base_;
  int power_m_ = 1;
  bool regular_ = false;

  Elem act_slow(Elem r, Elem v) const;
};

} // namespace cw

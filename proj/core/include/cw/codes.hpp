#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "cw/cwgroup.hpp"
#include "cw/qform.hpp"

namespace cw {

/// Homogeneous multivariate polynomial with integer coefficients; keys are
/// exponent vectors over the variable index set, kept sorted.
struct SparsePoly {
  int nvars = 0;
  int degree = 0;
  std::map<std::vector<uint16_t>, long long> terms;

  long long coefficient_sum() const;
  bool is_homogeneous() const;
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars == b.nvars && a.terms == b.terms;
  }
};

/// Left R-submodule of V^N presented by generator rows.
class Code {
public:
  Code(std::shared_ptr<const FormRing> fr, std::vector<std::vector<Elem>> rows);

  const FormRing& form_ring() const { return *fr_; }
  const std::shared_ptr<const FormRing>& form_ring_ptr() const { return fr_; }
  int length() const { return N_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<Elem>>& rows() const { return rows_; }

  /// |C|; chain-ring/field row reduction when V is the regular module over
  /// Z/p^f or GF, hashed distinct count otherwise.
  uint64_t size(uint64_t enum_cap = (1ull << 28)) const;

  /// Calls cb once per point of R^k; every codeword appears exactly
  /// mu = |R|^k / |C| times.
  void enumerate(const std::function<void(const std::vector<Elem>&)>& cb,
                 uint64_t enum_cap = (1ull << 28)) const;
  uint64_t fiber_count() const; // |R|^k
  /// Distinct codewords (materialized; for small codes).
  std::vector<std::vector<Elem>> codewords(uint64_t enum_cap = (1ull << 28)) const;

private:
  std::shared_ptr<const FormRing> fr_;
  int N_;
  std::vector<std::vector<Elem>> rows_;
  mutable uint64_t cached_size_ = 0;
};

struct DualityReport {
  bool self_orthogonal = false;
  bool self_dual = false;
};

DualityReport dual_and_selfdual_check(const Code& c);
/// True iff every phi in Phi vanishes on every codeword.  Self-orthogonal
/// codes use the generator fast path; `exhaustive` forces the definition.
bool isotropy_check(const Code& c, bool exhaustive = false, uint64_t enum_cap = (1ull << 28));
bool check_type(const Code& c);

SparsePoly cwe(const Code& c, uint64_t enum_cap = (1ull << 28));
SparsePoly cwe_m(const Code& c, int m, uint64_t enum_cap = (1ull << 28));
/// Substitute x_v -> y_{orbit(v)}.
SparsePoly swe(const SparsePoly& p, const std::vector<std::vector<int>>& orbits);

enum class InvarianceMode { Symbolic, Sampled };

struct InvarianceOptions {
  InvarianceMode mode = InvarianceMode::Symbolic;
  int samples = 40;            // sampled mode: number of evaluation points
  uint64_t seed = 0x5eedc0de;  // sampled mode: deterministic point generator
  uint64_t monomial_cap = 1'000'000;
};

/// Checks p(gX) = p(X) exactly.
bool invariance_check(const SparsePoly& p, const CycMatrix& g,
                      const InvarianceOptions& opt = {});

/// Verifies cwe(C^perp) = |C|^{-1} cwe(C)(sqrt(|V|) h X) symbolically; the
/// dual is computed by exhaustive scan over V^N.
bool macwilliams_verify(const Code& c, uint64_t scan_cap = (1ull << 20));

/// Both even-code conditions over F_2^f: sum c_i = 0 and sum_{i<j} c_i c_j = 0.
bool even_code_check(const Code& c, uint64_t enum_cap = (1ull << 28));

} // namespace cw

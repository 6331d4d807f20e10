#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "cw/cwgroup.hpp"
#include "cw/qform.hpp"

namespace cw {

/// Element of U(R,Phi): an invertible 2x2 matrix (a,b;c,d) over R together
/// with an upper-triangular Phi_2 datum (phi1, m; . , phi2), the middle entry
/// held through psi^{-1} as a ring element.
struct UElement {
  std::array<Elem, 4> A{0, 0, 0, 0}; // a b c d
  int phi1 = 0, phi2 = 0;            // indices into Phi
  Elem m = 0;                        // psi^{-1} of the off-diagonal entry

  friend bool operator==(const UElement& x, const UElement& y) {
    return x.A == y.A && x.phi1 == y.phi1 && x.phi2 == y.phi2 && x.m == y.m;
  }
  uint64_t key() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (Elem e : A) { h ^= e; h *= 0x100000001b3ULL; }
    h ^= static_cast<uint64_t>(phi1) << 1;
    h *= 0x100000001b3ULL;
    h ^= static_cast<uint64_t>(phi2) << 1;
    h *= 0x100000001b3ULL;
    h ^= m;
    h *= 0x100000001b3ULL;
    return h;
  }
};

struct UClosure {
  uint64_t order = 0;
  uint64_t ker_pi_order = 0;
  uint64_t pi_image_order = 0;
  std::vector<UElement> elements; // BFS order
};

/// The hyperbolic co-unitary group attached to a (genus-1) form ring.  All
/// qmodule computations run through the base-ring tables; the Mat_2 lift is
/// never materialized.
class HypCo {
public:
  explicit HypCo(std::shared_ptr<const FormRing> fr);

  const FormRing& form_ring() const { return *fr_; }

  UElement identity() const;
  bool is_valid(const UElement& x) const;
  /// Semi-direct product rule (A1,q1)(A2,q2) = (A1 A2, q1[A2] + q2); the
  /// result is validated.
  UElement mul(const UElement& x, const UElement& y) const;

  UElement d_generator(Elem u, int phi_idx) const;
  UElement H_generator(const SymIdem& si) const;
  /// d over generating sets plus one H per symmetric idempotent.
  std::vector<UElement> generators() const;

  UClosure closure(size_t cap = (1u << 22)) const;

  /// Matrix image of a generator under d(u,phi) -> rho(u) rho(phi),
  /// H_{iota,u,v} -> h_{iota,v}.
  CycMatrix generator_image(const UElement& g) const;

private:
  QZ eval_datum(const UElement& x, Elem v1, Elem v2) const;
  std::shared_ptr<const FormRing> fr_;
  int zero_phi_ = 0;
  std::vector<SymIdem> sym_idems_;
};

struct ProjectiveReport {
  uint64_t c_order = 0;
  int64_t center_order = 0;
  uint64_t u_order = 0;
  bool order_ok = false;   // |C| = |Z| * |U|
  bool words_ok = false;   // random words agree up to scalar
  int collisions = 0;      // word pairs actually compared
};

/// Checks |C_m(rho)| = |Z| * |U(Mat_m(R), Phi_m)| and the projective
/// homomorphism property on random generator words.
ProjectiveReport projective_consistency(const FormRing& fr, const MatrixGroup& G, int genus = 1,
                                        int words = 300, uint64_t seed = 0x9d2c5680);

} // namespace cw

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cw/rat.hpp"

namespace cw {

/// Shared per-conductor context: the L-th cyclotomic polynomial and power
/// reduction tables for the basis 1, z, ..., z^(phi(L)-1) of Q(zeta_L).
class CycRing {
public:
  static const CycRing* get(int64_t L);

  int64_t conductor() const { return L_; }
  int degree() const { return deg_; }
  const std::vector<int64_t>& cyclo_poly() const { return poly_; }
  /// Coordinates of z^e (0 <= e < max(L, 2 deg - 1)) in the power basis.
  const std::vector<int64_t>& power(int64_t e) const { return pow_red_[e]; }

private:
  explicit CycRing(int64_t L);
  int64_t L_;
  int deg_;
  std::vector<int64_t> poly_;
  std::vector<std::vector<int64_t>> pow_red_;
};

/// Exact element of Q(zeta_L) with rational coordinates in the power basis.
struct Cyc {
  const CycRing* ring = nullptr;
  std::vector<Rat> c;

  Cyc() = default;
  explicit Cyc(const CycRing* r) : ring(r), c(r->degree()) {}
  static Cyc zero(const CycRing* r) { return Cyc(r); }
  static Cyc one(const CycRing* r) {
    Cyc x(r);
    x.c[0] = Rat(1);
    return x;
  }
  static Cyc from_rat(const CycRing* r, const Rat& q) {
    Cyc x(r);
    x.c[0] = q;
    return x;
  }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const { return c[0]; }

  friend Cyc operator+(const Cyc& a, const Cyc& b);
  friend Cyc operator-(const Cyc& a, const Cyc& b);
  friend Cyc operator-(const Cyc& a);
  friend Cyc operator*(const Cyc& a, const Cyc& b);
  Cyc& operator+=(const Cyc& b) { *this = *this + b; return *this; }
  Cyc& operator*=(const Cyc& b) { *this = *this * b; return *this; }
  friend bool operator==(const Cyc& a, const Cyc& b);
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  /// Multiplicative inverse (linear solve); fails on zero.
  Cyc inverse() const;
  /// Galois automorphism z -> z^k, gcd(k, L) = 1.
  Cyc galois(int64_t k) const;
  /// Complex conjugation z -> z^(L-1).
  Cyc conj() const { return galois(ring->conductor() - 1); }
  /// Embedding into Q(zeta_M) for L | M.
  Cyc embed(const CycRing* target) const;

  std::string str() const;
};

/// zeta_L^k
Cyc root_of_unity(int64_t L, int64_t k);
/// The value exp(2 pi i q) for q in Q/Z, in the given ring (q.den | L required).
Cyc phase(const CycRing* ring, const QZ& q);

/// Positive real square root of a positive integer, built from zeta_8 and
/// quadratic Gauss sums.  Returns the value and the conductor it lives in.
std::pair<Cyc, int64_t> sqrt_int(int64_t n);

/// Square matrix over Q(zeta_L) stored as integer coordinates over a common
/// positive denominator; normalized (gcd of all coordinates and den is 1) so
/// equal matrices have identical bytes.
class CycMatrix {
public:
  CycMatrix() = default;
  CycMatrix(const CycRing* ring, int n);
  static CycMatrix identity(const CycRing* ring, int n);
  static CycMatrix scalar(const CycRing* ring, int n, const Cyc& v);

  const CycRing* ring() const { return ring_; }
  int dim() const { return n_; }
  int64_t den() const { return den_; }
  const std::vector<int64_t>& coords() const { return a_; }

  Cyc get(int i, int j) const;
  void set(int i, int j, const Cyc& v); // caller must normalize() afterwards
  void normalize();

  friend CycMatrix operator*(const CycMatrix& A, const CycMatrix& B);
  CycMatrix inverse() const;
  CycMatrix conj_transpose() const;
  CycMatrix transpose() const;
  friend bool operator==(const CycMatrix& A, const CycMatrix& B);
  friend bool operator!=(const CycMatrix& A, const CycMatrix& B) { return !(A == B); }

  bool is_identity() const;
  /// The scalar c if this equals c*I.
  std::optional<Cyc> scalar_value() const;

  void serialize(std::vector<uint8_t>& out) const;
  static CycMatrix deserialize(const CycRing* ring, int n, const uint8_t* p, size_t len);
  uint64_t hash() const;

  std::string str() const;

private:
  const CycRing* ring_ = nullptr;
  int n_ = 0;
  std::vector<int64_t> a_; // (i*n+j)*deg + t
  int64_t den_ = 1;
};

/// Coefficients of det(I - t g), ascending, length dim+1; entries are
/// algebraic integers in Z[zeta_L] (integer coordinates).
std::vector<std::vector<int64_t>> rev_charpoly(const CycMatrix& g);

} // namespace cw

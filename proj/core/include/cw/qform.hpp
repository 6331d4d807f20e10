#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cw/finring.hpp"
#include "cw/rat.hpp"

namespace cw {

/// Z-bilinear form V x V -> Q/Z, stored extensionally.
struct BilForm {
  std::shared_ptr<const FiniteModule> mod;
  std::vector<QZ> table; // row-major, table[v*|V|+w] = beta(v,w)

  QZ operator()(Elem v, Elem w) const { return table[static_cast<size_t>(v) * mod->size() + w]; }
  std::string key() const;
  friend bool operator==(const BilForm& a, const BilForm& b) { return a.table == b.table; }
};

/// Quadratic mapping V -> Q/Z (an element of Quad_0), stored extensionally.
struct QuadMap {
  std::shared_ptr<const FiniteModule> mod;
  std::vector<QZ> table;

  QZ operator()(Elem v) const { return table[v]; }
  std::string key() const;
  friend bool operator==(const QuadMap& a, const QuadMap& b) { return a.table == b.table; }
};

BilForm make_bilform(std::shared_ptr<const FiniteModule> mod, std::vector<QZ> table,
                     bool check = true);
QuadMap make_quadmap(std::shared_ptr<const FiniteModule> mod, std::vector<QZ> table,
                     bool check = true);

/// beta^tau(v,w) = beta(w,v)
BilForm tau(const BilForm& b);
/// {{beta}}(v) = beta(v,v)
QuadMap brace(const BilForm& b);
/// lambda(phi)(v,w) = phi(v+w) - phi(v) - phi(w); rejects non-Quad_0 input
BilForm lambda_of(const QuadMap& phi);
/// phi[r](v) = phi(rv)
QuadMap qaction(const QuadMap& phi, Elem r);
/// beta[(r,s)](v,w) = beta(rv,sw)
BilForm bilaction(const BilForm& b, Elem r, Elem s);
QuadMap quad_add(const QuadMap& a, const QuadMap& b);
BilForm bil_add(const BilForm& a, const BilForm& b);

struct Admissibility {
  std::vector<Elem> J;            // r -> r^J
  Elem eps = 0;
  std::vector<BilForm> M;         // indexed by ring element r: beta_r = beta(1 (x) r)
  std::unordered_map<std::string, Elem> psi_inv; // table key -> r
};

/// Verifies beta nonsingular, M tau-closed and psi bijective; solves for the
/// induced anti-automorphism J and the unit eps.
Admissibility admissibility(const BilForm& beta);

/// Least set containing {0} and gens, closed under pointwise addition and
/// the substitution actions [r] for all ring elements r.
std::vector<QuadMap> phi_closure(const std::vector<QuadMap>& gens, const FiniteRing& ring,
                                 size_t cap = (1u << 20));

struct SymIdem {
  Elem iota, u, v;
};

class FormRing {
public:
  /// Builds Phi by qmodule closure of the generators and checks the form-ring
  /// conditions {{M}} <= Phi, lambda(Phi) <= M.
  static FormRing validate(std::shared_ptr<const FiniteRing> ring,
                           std::shared_ptr<const FiniteModule> mod, BilForm beta,
                           std::vector<QuadMap> phi_gens, std::string name,
                           size_t closure_cap = (1u << 20));
  /// Same checks against an explicitly given Phi (used by the matrix lift).
  static FormRing validate_with_phi(std::shared_ptr<const FiniteRing> ring,
                                    std::shared_ptr<const FiniteModule> mod, BilForm beta,
                                    std::vector<QuadMap> phi, std::string name);

  const std::shared_ptr<const FiniteRing>& ring() const { return ring_; }
  const std::shared_ptr<const FiniteModule>& module() const { return mod_; }
  const BilForm& beta() const { return beta_; }
  const std::vector<QuadMap>& phi() const { return phi_; }
  const std::vector<int>& phi_gen_indices() const { return phi_gen_idx_; }
  const std::string& name() const { return name_; }

  int phi_index(const QuadMap& q) const; // -1 if absent
  const BilForm& M(Elem r) const { return adm_.M[r]; }
  /// psi^{-1} of a bilinear form in M; -1 sentinel throws.
  Elem psi_inv(const BilForm& b) const;
  bool in_M(const BilForm& b) const;
  Elem J(Elem r) const { return adm_.J[r]; }
  Elem eps() const { return adm_.eps; }
  /// psi^{-1}(tau(psi(r)))
  Elem tau_hat(Elem r) const { return tau_hat_[r]; }
  /// psi^{-1}(lambda(phi_i))
  Elem lambda_psi_inv(int phi_idx) const { return lambda_psi_inv_[phi_idx]; }
  /// Phi-index of {{beta_r}}
  int brace_index(Elem r) const { return brace_idx_[r]; }
  int64_t conductor() const { return conductor_; }

  /// Size of ker(lambda) on Phi.
  size_t ker_lambda_size() const;

  /// Evaluate phi_i on a module element.
  QZ phi_value(int phi_idx, Elem v) const { return phi_[phi_idx].table[v]; }

private:
  FormRing() = default;
  void finish(std::string name);

  std::shared_ptr<const FiniteRing> ring_;
  std::shared_ptr<const FiniteModule> mod_;
  BilForm beta_;
  std::vector<QuadMap> phi_;
  std::unordered_map<std::string, int> phi_idx_;
  std::vector<int> phi_gen_idx_;
  Admissibility adm_;
  std::vector<Elem> tau_hat_;
  std::vector<Elem> lambda_psi_inv_;
  std::vector<int> brace_idx_;
  int64_t conductor_ = 1;
  std::string name_;
};

/// One witness triple per symmetric idempotent, in element enumeration order;
/// iota = 1 always uses (1,1,1).  Non-symmetric idempotents are omitted.
std::vector<SymIdem> symmetric_idempotents(const FormRing& fr, size_t cap = (1u << 16));

/// The matrix form ring Mat_m(rho) = (Mat_m(R), V^m, beta^(m), Phi_m).
FormRing matrix_lift(const FormRing& fr, int m, size_t cap = (1u << 22));

} // namespace cw

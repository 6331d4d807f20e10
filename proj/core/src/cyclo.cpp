#include "cw/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cw {

namespace {

// exact division of integer polynomials (ascending coeffs), remainder must be 0
std::vector<int64_t> poly_divide_exact(std::vector<int64_t> num, const std::vector<int64_t>& den) {
  int dn = static_cast<int>(num.size()) - 1;
  int dd = static_cast<int>(den.size()) - 1;
  std::vector<int64_t> q(dn - dd + 1, 0);
  for (int k = dn - dd; k >= 0; --k) {
    int64_t c = num[k + dd] / den[dd];
    if (c * den[dd] != num[k + dd]) fail(Err::ArithmeticOverflow, "inexact poly division");
    q[k] = c;
    for (int i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
  }
  for (auto v : num)
    if (v != 0) fail(Err::ArithmeticOverflow, "nonzero remainder in poly division");
  return q;
}

std::vector<int64_t> cyclotomic_poly(int64_t L) {
  if (L == 1) return {-1, 1};
  // x^L - 1 divided by product of Phi_d for proper divisors d
  std::vector<int64_t> p(L + 1, 0);
  p[0] = -1;
  p[L] = 1;
  for (int64_t d = 1; d < L; ++d) {
    if (L % d == 0) p = poly_divide_exact(p, cyclotomic_poly(d));
  }
  return p;
}

std::mutex g_ring_mutex;
std::map<int64_t, CycRing*> g_rings;

} // namespace

CycRing::CycRing(int64_t L) : L_(L) {
  poly_ = cyclotomic_poly(L);
  deg_ = static_cast<int>(poly_.size()) - 1;
  int64_t max_e = std::max<int64_t>(L, 2 * deg_ - 1);
  pow_red_.resize(max_e);
  std::vector<int64_t> cur(deg_, 0);
  cur[0] = 1;
  for (int64_t e = 0; e < max_e; ++e) {
    pow_red_[e] = cur;
    // multiply by x and reduce
    int64_t top = cur[deg_ - 1];
    for (int i = deg_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < deg_; ++i) cur[i] -= top * poly_[i];
  }
}

const CycRing* CycRing::get(int64_t L) {
  if (L < 1) fail(Err::BadSpec, "conductor must be positive");
  std::lock_guard<std::mutex> lock(g_ring_mutex);
  auto it = g_rings.find(L);
  if (it != g_rings.end()) return it->second;
  auto* r = new CycRing(L);
  g_rings.emplace(L, r);
  return r;
}

bool Cyc::is_zero() const {
  for (const auto& q : c)
    if (!q.is_zero()) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c.size(); ++i)
    if (!c[i].is_zero()) return false;
  return true;
}

Cyc operator+(const Cyc& a, const Cyc& b) {
  Cyc r(a.ring);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Cyc operator-(const Cyc& a, const Cyc& b) {
  Cyc r(a.ring);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

Cyc operator-(const Cyc& a) {
  Cyc r(a.ring);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = -a.c[i];
  return r;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
  int deg = a.ring->degree();
  std::vector<Rat> conv(2 * deg - 1);
  for (int i = 0; i < deg; ++i) {
    if (a.c[i].is_zero()) continue;
    for (int j = 0; j < deg; ++j) {
      if (b.c[j].is_zero()) continue;
      conv[i + j] += a.c[i] * b.c[j];
    }
  }
  Cyc r(a.ring);
  for (int i = 0; i < deg; ++i) r.c[i] = conv[i];
  for (int e = deg; e < 2 * deg - 1; ++e) {
    if (conv[e].is_zero()) continue;
    const auto& red = a.ring->power(e);
    for (int i = 0; i < deg; ++i)
      if (red[i] != 0) r.c[i] += conv[e] * Rat(red[i]);
  }
  return r;
}

bool operator==(const Cyc& a, const Cyc& b) { return a.c == b.c; }

Cyc Cyc::inverse() const {
  if (is_zero()) fail(Err::NotInvertible, "inverse of zero");
  int deg = ring->degree();
  // solve (this * x) = 1 as a linear system over Q
  // columns: this * z^j
  std::vector<std::vector<Rat>> A(deg, std::vector<Rat>(deg + 1));
  for (int j = 0; j < deg; ++j) {
    Cyc zj(ring);
    zj.c = std::vector<Rat>(deg);
    const auto& pw = ring->power(j);
    for (int i = 0; i < deg; ++i) zj.c[i] = Rat(pw[i]);
    Cyc col = *this * zj;
    for (int i = 0; i < deg; ++i) A[i][j] = col.c[i];
  }
  A[0][deg] = Rat(1);
  // Gaussian elimination
  for (int col = 0, row = 0; col < deg && row < deg; ++col) {
    int piv = -1;
    for (int r = row; r < deg; ++r)
      if (!A[r][col].is_zero()) { piv = r; break; }
    if (piv < 0) fail(Err::NotInvertible, "singular multiplication matrix");
    std::swap(A[piv], A[row]);
    Rat inv = Rat(1) / A[row][col];
    for (int j = col; j <= deg; ++j) A[row][j] = A[row][j] * inv;
    for (int r = 0; r < deg; ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      Rat f = A[r][col];
      for (int j = col; j <= deg; ++j) A[r][j] = A[r][j] - f * A[row][j];
    }
    ++row;
  }
  Cyc x(ring);
  for (int i = 0; i < deg; ++i) x.c[i] = A[i][deg];
  return x;
}

Cyc Cyc::galois(int64_t k) const {
  int64_t L = ring->conductor();
  k = ((k % L) + L) % L;
  if (std::gcd(k, L) != 1) fail(Err::BadSpec, "galois exponent not coprime to conductor");
  Cyc r(ring);
  int deg = ring->degree();
  for (int i = 0; i < deg; ++i) {
    if (c[i].is_zero()) continue;
    const auto& red = ring->power((static_cast<int64_t>(i) * k) % L);
    for (int j = 0; j < deg; ++j)
      if (red[j] != 0) r.c[j] += c[i] * Rat(red[j]);
  }
  return r;
}

Cyc Cyc::embed(const CycRing* target) const {
  int64_t L = ring->conductor(), M = target->conductor();
  if (M % L != 0) fail(Err::BadSpec, "embedding requires L | M");
  int64_t d = M / L;
  Cyc r(target);
  for (int i = 0; i < ring->degree(); ++i) {
    if (c[i].is_zero()) continue;
    const auto& red = target->power(static_cast<int64_t>(i) * d);
    for (int j = 0; j < target->degree(); ++j)
      if (red[j] != 0) r.c[j] += c[i] * Rat(red[j]);
  }
  return r;
}

std::string Cyc::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c[i].str();
    if (i > 0) os << "*z" << ring->conductor() << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Cyc root_of_unity(int64_t L, int64_t k) {
  const CycRing* ring = CycRing::get(L);
  k = ((k % L) + L) % L;
  Cyc r(ring);
  const auto& red = ring->power(k);
  for (int i = 0; i < ring->degree(); ++i) r.c[i] = Rat(red[i]);
  return r;
}

Cyc phase(const CycRing* ring, const QZ& q) {
  int64_t L = ring->conductor();
  if (L % q.den != 0) fail(Err::BadSpec, "phase denominator does not divide conductor");
  return root_of_unity(L, q.num * (L / q.den)).embed(ring);
}

std::pair<Cyc, int64_t> sqrt_int(int64_t n) {
  if (n <= 0) fail(Err::BadSpec, "sqrt_int requires n > 0");
  int64_t square_part = 1, s = 1;
  int64_t m = n;
  for (int64_t p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) { square_part *= p; m /= p * p; }
    if (m % p == 0) { s *= p; m /= p; }
  }
  if (m > 1) s *= m;
  // prime factors of the squarefree part
  std::vector<int64_t> primes;
  {
    int64_t t = s;
    for (int64_t p = 2; p * p <= t; ++p)
      if (t % p == 0) { primes.push_back(p); t /= p; }
    if (t > 1) primes.push_back(t);
  }
  // conductor: 8 for the even part, 4p for each odd prime in the squarefree part
  int64_t L = 1;
  for (int64_t p : primes) L = std::lcm(L, p == 2 ? 8 : 4 * p);
  const CycRing* ring = CycRing::get(L);
  Cyc val = Cyc::from_rat(ring, Rat(square_part));
  for (int64_t p : primes) {
    if (p == 2) {
      // sqrt(2) = zeta_8 + zeta_8^7
      val = val * (root_of_unity(8, 1) + root_of_unity(8, 7)).embed(ring);
      continue;
    }
    // quadratic Gauss sum: sum over a of legendre(a,p) zeta_p^a
    Cyc g = Cyc::zero(CycRing::get(p));
    std::vector<int> legendre(p, -1);
    for (int64_t a = 1; a < p; ++a) legendre[a * a % p] = 1;
    for (int64_t a = 1; a < p; ++a)
      g += legendre[a] > 0 ? root_of_unity(p, a) : -root_of_unity(p, a);
    Cyc term = g.embed(ring);
    if (p % 4 == 3) term = term * root_of_unity(4, 3).embed(ring); // divide by i
    val = val * term;
  }
  return {val, L};
}

// ---------------------------------------------------------------------------
// CycMatrix

CycMatrix::CycMatrix(const CycRing* ring, int n)
    : ring_(ring), n_(n), a_(static_cast<size_t>(n) * n * ring->degree(), 0), den_(1) {}

CycMatrix CycMatrix::identity(const CycRing* ring, int n) {
  CycMatrix m(ring, n);
  for (int i = 0; i < n; ++i) m.a_[(static_cast<size_t>(i) * n + i) * ring->degree()] = 1;
  return m;
}

CycMatrix CycMatrix::scalar(const CycRing* ring, int n, const Cyc& v) {
  CycMatrix m(ring, n);
  for (int i = 0; i < n; ++i) m.set(i, i, v);
  m.normalize();
  return m;
}

Cyc CycMatrix::get(int i, int j) const {
  Cyc v(ring_);
  int deg = ring_->degree();
  const int64_t* p = &a_[(static_cast<size_t>(i) * n_ + j) * deg];
  for (int t = 0; t < deg; ++t) v.c[t] = Rat(p[t], den_);
  return v;
}

void CycMatrix::set(int i, int j, const Cyc& v) {
  int deg = ring_->degree();
  // bring the whole matrix onto a common denominator with v
  int64_t vden = 1;
  for (const auto& q : v.c) vden = std::lcm(vden, q.den);
  int64_t g = std::gcd(vden, den_);
  int64_t scale_self = vden / g;
  if (scale_self != 1) {
    for (auto& x : a_) x = mul_i64(x, scale_self);
    den_ = mul_i64(den_, scale_self);
  }
  int64_t* p = &a_[(static_cast<size_t>(i) * n_ + j) * deg];
  for (int t = 0; t < deg; ++t) p[t] = mul_i64(v.c[t].num, den_ / v.c[t].den);
}

void CycMatrix::normalize() {
  int64_t g = den_;
  for (auto x : a_) {
    g = std::gcd(g, x < 0 ? -x : x);
    if (g == 1) break;
  }
  if (g > 1) {
    den_ /= g;
    for (auto& x : a_) x /= g;
  }
}

CycMatrix operator*(const CycMatrix& A, const CycMatrix& B) {
  const CycRing* ring = A.ring_;
  int n = A.n_, deg = ring->degree();
  CycMatrix C(ring, n);
  C.den_ = mul_i64(A.den_, B.den_);
  std::vector<__int128> conv(2 * deg - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::fill(conv.begin(), conv.end(), static_cast<__int128>(0));
      for (int k = 0; k < n; ++k) {
        const int64_t* pa = &A.a_[(static_cast<size_t>(i) * n + k) * deg];
        const int64_t* pb = &B.a_[(static_cast<size_t>(k) * n + j) * deg];
        for (int s = 0; s < deg; ++s) {
          if (pa[s] == 0) continue;
          __int128 av = pa[s];
          for (int t = 0; t < deg; ++t)
            if (pb[t] != 0) conv[s + t] += av * pb[t];
        }
      }
      for (int e = 2 * deg - 2; e >= deg; --e) {
        if (conv[e] == 0) continue;
        const auto& red = ring->power(e);
        for (int t = 0; t < deg; ++t)
          if (red[t] != 0) conv[t] += conv[e] * red[t];
      }
      int64_t* pc = &C.a_[(static_cast<size_t>(i) * n + j) * deg];
      for (int t = 0; t < deg; ++t) pc[t] = detail::checked_narrow(conv[t]);
    }
  }
  C.normalize();
  return C;
}

CycMatrix CycMatrix::inverse() const {
  int n = n_;
  // Gauss-Jordan over Q(zeta_L)
  std::vector<std::vector<Cyc>> A(n, std::vector<Cyc>(2 * n, Cyc(ring_)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i][j] = get(i, j);
    A[i][n + i] = Cyc::one(ring_);
  }
  for (int col = 0, row = 0; col < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (!A[r][col].is_zero()) { piv = r; break; }
    if (piv < 0) fail(Err::SingularMatrix, "matrix is singular");
    std::swap(A[piv], A[row]);
    Cyc inv = A[row][col].inverse();
    for (int j = col; j < 2 * n; ++j) A[row][j] = A[row][j] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      Cyc f = A[r][col];
      for (int j = col; j < 2 * n; ++j) A[r][j] = A[r][j] - f * A[row][j];
    }
    ++row;
  }
  CycMatrix R(ring_, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R.set(i, j, A[i][n + j]);
  R.normalize();
  return R;
}

CycMatrix CycMatrix::conj_transpose() const {
  CycMatrix R(ring_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) R.set(j, i, get(i, j).conj());
  R.normalize();
  return R;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix R(ring_, n_);
  R.den_ = den_;
  int deg = ring_->degree();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int t = 0; t < deg; ++t)
        R.a_[(static_cast<size_t>(j) * n_ + i) * deg + t] = a_[(static_cast<size_t>(i) * n_ + j) * deg + t];
  return R;
}

bool operator==(const CycMatrix& A, const CycMatrix& B) {
  return A.n_ == B.n_ && A.den_ == B.den_ && A.ring_ == B.ring_ && A.a_ == B.a_;
}

bool CycMatrix::is_identity() const {
  if (den_ != 1) return false;
  int deg = ring_->degree();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int t = 0; t < deg; ++t) {
        int64_t want = (i == j && t == 0) ? 1 : 0;
        if (a_[(static_cast<size_t>(i) * n_ + j) * deg + t] != want) return false;
      }
  return true;
}

std::optional<Cyc> CycMatrix::scalar_value() const {
  int deg = ring_->degree();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const int64_t* p = &a_[(static_cast<size_t>(i) * n_ + j) * deg];
      if (i != j) {
        for (int t = 0; t < deg; ++t)
          if (p[t] != 0) return std::nullopt;
      } else {
        const int64_t* p0 = &a_[0];
        for (int t = 0; t < deg; ++t)
          if (p[t] != p0[t]) return std::nullopt;
      }
    }
  return get(0, 0);
}

namespace {
void put_varint(std::vector<uint8_t>& out, int64_t v) {
  uint64_t u = (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
  while (u >= 0x80) {
    out.push_back(static_cast<uint8_t>(u) | 0x80);
    u >>= 7;
  }
  out.push_back(static_cast<uint8_t>(u));
}
int64_t get_varint(const uint8_t*& p, const uint8_t* end) {
  uint64_t u = 0;
  int shift = 0;
  while (p < end) {
    uint8_t b = *p++;
    u |= static_cast<uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) break;
    shift += 7;
  }
  return static_cast<int64_t>((u >> 1) ^ (~(u & 1) + 1));
}
} // namespace

void CycMatrix::serialize(std::vector<uint8_t>& out) const {
  put_varint(out, den_);
  for (auto v : a_) put_varint(out, v);
}

CycMatrix CycMatrix::deserialize(const CycRing* ring, int n, const uint8_t* p, size_t len) {
  CycMatrix m(ring, n);
  const uint8_t* end = p + len;
  m.den_ = get_varint(p, end);
  for (auto& v : m.a_) v = get_varint(p, end);
  return m;
}

uint64_t CycMatrix::hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  };
  mix(static_cast<uint64_t>(den_));
  for (auto v : a_) mix(static_cast<uint64_t>(v));
  return h;
}

std::string CycMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < n_; ++j) os << "[" << get(i, j).str() << "]";
    os << (i == n_ - 1 ? "]" : "\n");
  }
  return os.str();
}

std::vector<std::vector<int64_t>> rev_charpoly(const CycMatrix& g) {
  const CycRing* ring = g.ring();
  int n = g.dim(), deg = ring->degree();
  // power-sum traces via Newton's identities
  std::vector<Cyc> p(n + 1, Cyc(ring));
  CycMatrix pw = g;
  for (int k = 1; k <= n; ++k) {
    Cyc tr(ring);
    for (int i = 0; i < n; ++i) tr += pw.get(i, i);
    p[k] = tr;
    if (k < n) pw = pw * g;
  }
  std::vector<Cyc> e(n + 1, Cyc(ring));
  e[0] = Cyc::one(ring);
  for (int k = 1; k <= n; ++k) {
    Cyc acc(ring);
    int sign = 1;
    for (int i = 1; i <= k; ++i) {
      Cyc term = e[k - i] * p[i];
      acc = sign > 0 ? acc + term : acc - term;
      sign = -sign;
    }
    Cyc ek(ring);
    for (int t = 0; t < deg; ++t) ek.c[t] = acc.c[t] * Rat(1, k);
    e[k] = ek;
  }
  // det(I - t g) = sum_k (-1)^k e_k t^k; coefficients must be integral
  std::vector<std::vector<int64_t>> out(n + 1, std::vector<int64_t>(deg, 0));
  for (int k = 0; k <= n; ++k) {
    for (int t = 0; t < deg; ++t) {
      Rat v = (k % 2 == 0) ? e[k].c[t] : -e[k].c[t];
      if (!v.is_integer())
        fail(Err::NonIntegerCoefficient, "charpoly coefficient not an algebraic integer");
      out[k][t] = v.num;
    }
  }
  return out;
}

} // namespace cw

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cw/errors.hpp"

namespace cw {

using BigRat = mpq_class;
using BigInt = mpz_class;

struct ClosedForm {
  std::vector<BigRat> numerator;        // ascending coefficients
  std::vector<int64_t> den_exponents;   // denominator = prod (1 - t^d)
};

/// Power series over Q truncated at degree D, with an optional verified
/// rational closed form.
class RatSeries {
public:
  RatSeries() = default;
  RatSeries(int degree, std::vector<BigRat> coeffs) : d_(degree), c_(std::move(coeffs)) {
    c_.resize(d_ + 1);
  }
  static RatSeries zero(int degree) { return RatSeries(degree, {}); }
  static RatSeries one(int degree) { return RatSeries(degree, {BigRat(1)}); }

  int degree() const { return d_; }
  const std::vector<BigRat>& coeffs() const { return c_; }
  const BigRat& at(int k) const { return c_[k]; }
  const std::optional<ClosedForm>& closed_form() const { return closed_; }

  friend RatSeries operator+(const RatSeries& a, const RatSeries& b);
  friend RatSeries operator-(const RatSeries& a, const RatSeries& b);
  friend RatSeries operator*(const RatSeries& a, const RatSeries& b);
  RatSeries inverse() const;

  /// Multiplies by prod (1 - t^d) and demands the product be a polynomial
  /// comfortably inside the truncation window; on success returns *this with
  /// the closed form attached.
  RatSeries rationalize(const std::vector<int64_t>& den_exponents) const;

  friend bool operator==(const RatSeries& a, const RatSeries& b) {
    return a.d_ == b.d_ && a.c_ == b.c_;
  }

private:
  int d_ = 0;
  std::vector<BigRat> c_{BigRat(0)};
  std::optional<ClosedForm> closed_;
};

/// Expansion of num(t) / prod (1 - t^d) to the given degree.
RatSeries expand_closed_form(const std::vector<BigRat>& numerator,
                             const std::vector<int64_t>& den_exponents, int degree);

} // namespace cw

#include "cw/series.hpp"

#include <algorithm>

namespace cw {

RatSeries operator+(const RatSeries& a, const RatSeries& b) {
  int d = std::min(a.d_, b.d_);
  std::vector<BigRat> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = a.c_[i] + b.c_[i];
  return RatSeries(d, std::move(c));
}

RatSeries operator-(const RatSeries& a, const RatSeries& b) {
  int d = std::min(a.d_, b.d_);
  std::vector<BigRat> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = a.c_[i] - b.c_[i];
  return RatSeries(d, std::move(c));
}

RatSeries operator*(const RatSeries& a, const RatSeries& b) {
  int d = std::min(a.d_, b.d_);
  std::vector<BigRat> c(d + 1);
  for (int i = 0; i <= d; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j <= d; ++j) {
      if (b.c_[j] == 0) continue;
      c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return RatSeries(d, std::move(c));
}

RatSeries RatSeries::inverse() const {
  if (c_[0] == 0) fail(Err::NotInvertible, "series has zero constant term");
  std::vector<BigRat> r(d_ + 1);
  BigRat inv0 = 1 / c_[0];
  r[0] = inv0;
  for (int k = 1; k <= d_; ++k) {
    BigRat s(0);
    for (int i = 1; i <= k; ++i) {
      if (c_[i] == 0) continue;
      s += c_[i] * r[k - i];
    }
    r[k] = -s * inv0;
  }
  return RatSeries(d_, std::move(r));
}

RatSeries RatSeries::rationalize(const std::vector<int64_t>& den_exponents) const {
  RatSeries prod = *this;
  for (int64_t d : den_exponents) {
    if (d < 1 || d > d_) fail(Err::BadSpec, "denominator exponent out of range");
    std::vector<BigRat> f(d_ + 1);
    f[0] = 1;
    f[d] = -1;
    prod = prod * RatSeries(d_, std::move(f));
  }
  int last = -1;
  for (int i = 0; i <= d_; ++i)
    if (prod.c_[i] != 0) last = i;
  // require a clear window of trailing zeros so a truncated tail cannot be
  // mistaken for a polynomial
  int window = std::max(1, d_ / 8);
  if (last > d_ - window)
    fail(Err::NoPolynomialNumerator, "product does not truncate to a polynomial");
  RatSeries out = *this;
  ClosedForm cf;
  cf.numerator.assign(prod.c_.begin(), prod.c_.begin() + last + 1);
  if (last < 0) cf.numerator = {BigRat(0)};
  cf.den_exponents = den_exponents;
  out.closed_ = std::move(cf);
  return out;
}

RatSeries expand_closed_form(const std::vector<BigRat>& numerator,
                             const std::vector<int64_t>& den_exponents, int degree) {
  std::vector<BigRat> num(degree + 1);
  for (size_t i = 0; i < numerator.size() && i <= static_cast<size_t>(degree); ++i)
    num[i] = numerator[i];
  RatSeries s(degree, std::move(num));
  for (int64_t d : den_exponents) {
    // multiply by 1/(1-t^d) = sum t^(kd)
    const auto& c = s.coeffs();
    std::vector<BigRat> r(degree + 1);
    for (int i = 0; i <= degree; ++i) {
      r[i] = c[i];
      if (i >= d) r[i] += r[i - d];
    }
    s = RatSeries(degree, std::move(r));
  }
  return s;
}

} // namespace cw

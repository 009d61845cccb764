#include "clnode/real.hpp"

#include <vector>

#include "clnode/errors.hpp"

namespace clnode {

Real::Real(const std::string& s, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw OutOfRange("not a number: \"" + s + "\"");
  }
}

std::string Real::str(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return buf.data();
}

Real abs(const Real& a) {
  Real r(a);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(a);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& a) {
  Real r(a);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& a) {
  Real r(a);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& a, long e) {
  Real r(a);
  mpfr_pow_si(r.get(), a.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real ldexp(const Real& a, long e) {
  Real r(a);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

Real ulp_scale(mpfr_prec_t prec, long bits) { return ldexp(Real(1L, prec), -bits); }

Complex& Complex::operator/=(const Complex& o) {
  const Real d = o.re * o.re + o.im * o.im;
  if (d.is_zero()) throw NotInvertible("complex division by zero");
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Real abs(const Complex& z) {
  Real r(z.prec());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& z) {
  Real r(z.prec());
  mpfr_atan2(r.get(), z.im.get(), z.re.get(), MPFR_RNDN);
  return r;
}

Complex sqrt(const Complex& z) {
  // principal branch
  const Real m = abs(z);
  const Real half(0.5, z.prec());
  const Real zero(z.prec());
  Real re = sqrt(max(zero, (m + z.re) * half));
  Real im = sqrt(max(zero, (m - z.re) * half));
  if (z.im.sign() < 0) im = -im;
  return Complex(std::move(re), std::move(im));
}

}  // namespace clnode

#include <cmath>
#include <memory>
#include <stdexcept>

#include <mpfr.h>

#include "vansum/cyclotomic.hpp"

namespace vansum {

namespace {

// RAII wrapper over mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

std::string to_text(const Real& r) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.30Rg", r.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

ComplexApprox complex_eval(const GroupRingElement& x, int precision_bits) {
  if (precision_bits < 64) throw std::invalid_argument("complex_eval: precision must be at least 64 bits");
  const auto prec = static_cast<mpfr_prec_t>(precision_bits);
  const int m = x.modulus();

  Real two_pi(prec), angle(prec), c(prec), s(prec), re(prec), im(prec), term(prec);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);

  // Error budget, in units of u = 2^-prec (all operations round to nearest):
  //   2 pi: 2u relative; angle = 2 pi * k / m: 4u relative, |angle| < 2 pi,
  //   so |d angle| < 8 pi u < 26u; cos/sin add u each -> 27u per unit root.
  //   Scaling by the integer coefficient: |c| * (27u + u).
  //   Each running addition rounds by at most u * (running magnitude), bounded
  //   by u * L1 where L1 = sum |c_k|.
  double l1 = 0;
  int terms = 0;
  for (int k = 0; k < m; ++k) {
    const Coeff ck = x[static_cast<std::size_t>(k)];
    if (ck == 0) continue;
    ++terms;
    l1 += std::fabs(static_cast<double>(ck));
    mpfr_mul_ui(angle.get(), two_pi.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div_ui(angle.get(), angle.get(), static_cast<unsigned long>(m), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_mul_si(term.get(), c.get(), static_cast<long>(ck), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), term.get(), MPFR_RNDN);
    mpfr_mul_si(term.get(), s.get(), static_cast<long>(ck), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), term.get(), MPFR_RNDN);
  }
  const double unit = std::ldexp(1.0, -precision_bits);
  // Per component, then sqrt(2) for the complex modulus, plus one rounding of
  // the hypot; doubled for slack on the double-precision bookkeeping.
  const double component = l1 * (28.0 + static_cast<double>(terms)) * unit;
  double bound = 2.0 * (std::sqrt(2.0) * component + unit * l1);

  Real mag(prec);
  mpfr_hypot(mag.get(), re.get(), im.get(), MPFR_RNDN);

  ComplexApprox out;
  out.precision_bits = precision_bits;
  out.re = mpfr_get_d(re.get(), MPFR_RNDN);
  out.im = mpfr_get_d(im.get(), MPFR_RNDN);
  out.abs = mpfr_get_d(mag.get(), MPFR_RNDN);
  // Rounding abs to double moves it by at most 2^-53 relative.
  bound += std::ldexp(out.abs, -52);
  out.error_bound = bound;
  out.re_text = to_text(re);
  out.im_text = to_text(im);
  return out;
}

}  // namespace vansum

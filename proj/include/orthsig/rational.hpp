#ifndef ORTHSIG_RATIONAL_HPP
#define ORTHSIG_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace orthsig {

// Exact rational coefficient type. All algebraic modules compute with these;
// floating point only enters in the path/Monte Carlo layer.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Renders "p" or "p/q", q > 0.
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

// Accepts "p" or "p/q".
inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r = 1;
  Rat b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rat rat_factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

inline Rat rat_binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

}  // namespace orthsig

#endif

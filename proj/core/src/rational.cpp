#include "tdlc/rational.hpp"

namespace tdlc {

bool is_prime(const Int& n) {
  if (n < 2) return false;
  // 40 Miller-Rabin rounds; deterministic for every magnitude used here.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

long valuation(const Int& x, const Int& p) {
  if (x == 0) fail(ErrorKind::InvalidArgument, "valuation of zero");
  Int rem = abs(x);
  long v = 0;
  Int q, r;
  while (true) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    rem = q;
    ++v;
  }
  return v;
}

long valuation(const Rat& x, const Int& p) {
  if (x == 0) fail(ErrorKind::InvalidArgument, "valuation of zero");
  return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

Rat pow_rat(const Int& p, long e) {
  Int num = pow_int(p, static_cast<unsigned long>(e < 0 ? -e : e));
  Rat out;
  if (e >= 0) {
    out = Rat(num);
  } else {
    out = Rat(Int(1), num);
  }
  out.canonicalize();
  return out;
}

Int pow_int(const Int& p, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), e);
  return out;
}

bool in_local_ring(const Rat& x, const Int& p) {
  if (x == 0) return true;
  return valuation(Int(x.get_den()), p) == 0;
}

Rat residue_mod_ppow(const Rat& x, const Int& p, long e) {
  if (x == 0) return Rat(0);
  long v = valuation(x, p);
  if (v >= e) return Rat(0);
  // x = p^v * a/b with a, b prime to p; the residue is (a b^-1 mod p^(e-v)) p^v.
  Int mod = pow_int(p, static_cast<unsigned long>(e - v));
  Rat unit = x / pow_rat(p, v);
  Int a = unit.get_num();
  Int b = unit.get_den();
  Int binv;
  if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t()) == 0)
    fail(ErrorKind::BadPrime, "denominator not invertible modulo " + mod.get_str());
  Int t;
  mpz_mod(t.get_mpz_t(), Int(a * binv).get_mpz_t(), mod.get_mpz_t());
  return Rat(t) * pow_rat(p, v);
}

Rat parse_rat(const std::string& text) {
  Rat out;
  if (out.set_str(text, 10) != 0)
    fail(ErrorKind::ParseError, "bad rational literal '" + text + "'");
  if (out.get_den() == 0)
    fail(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  out.canonicalize();
  return out;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

std::string int_to_string(const Int& x) { return x.get_str(); }

double rat_to_double(const Rat& x) { return x.get_d(); }

}  // namespace tdlc

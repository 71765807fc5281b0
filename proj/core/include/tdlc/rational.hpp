#pragma once

#include <gmpxx.h>

#include <string>

#include "tdlc/errors.hpp"

namespace tdlc {

using Int = mpz_class;
// Exact rational scalar. All arithmetic in the library is exact; floating
// point appears only in display helpers.
using Rat = mpq_class;

bool is_prime(const Int& n);

// p-adic valuation of a nonzero integer / rational. x == 0 is an error.
long valuation(const Int& x, const Int& p);
long valuation(const Rat& x, const Int& p);

// p^e as an exact rational, e may be negative.
Rat pow_rat(const Int& p, long e);
Int pow_int(const Int& p, unsigned long e);

// x is a unit of Z_(p) iff v_p(x) == 0; x lies in Z_(p) iff v_p(x) >= 0.
bool in_local_ring(const Rat& x, const Int& p);

// Canonical representative of x modulo p^e * Z_(p), for x in Z_(p)-span.
// Result is t * p^v with v = v_p(x), t an integer in [0, p^(e-v)); zero when
// v >= e. Subtracting it from x lands in p^e * Z_(p).
Rat residue_mod_ppow(const Rat& x, const Int& p, long e);

Rat parse_rat(const std::string& text);
std::string rat_to_string(const Rat& x);
std::string int_to_string(const Int& x);

double rat_to_double(const Rat& x);

}  // namespace tdlc

#include "tdlc/verify.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "tdlc/finite_universe.hpp"
#include "tdlc/lattice.hpp"
#include "tdlc/logging.hpp"
#include "tdlc/oracles.hpp"
#include "tdlc/padic_universe.hpp"
#include "tdlc/product_universe.hpp"
#include "tdlc/serialize.hpp"
#include "tdlc/shift_universe.hpp"
#include "tdlc/subquotient.hpp"

namespace tdlc {

namespace {

// ---------------------------------------------------------------------------
// Seeded sampling

class Rng {
 public:
  explicit Rng(unsigned long long seed) : eng_(seed) {}

  long pick(long lo, long hi) {  // inclusive range
    return std::uniform_int_distribution<long>(lo, hi)(eng_);
  }

  template <typename T>
  const T& choose(const std::vector<T>& pool) {
    return pool[static_cast<std::size_t>(pick(0, static_cast<long>(pool.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

Int rand_prime(Rng& r) {
  static const std::vector<long> primes{2, 3, 5};
  return Int(r.choose(primes));
}

Rat rand_entry(Rng& r, const Int& p, long val_range) {
  if (r.pick(0, 4) == 0) return Rat(0);
  long e = r.pick(-val_range, val_range);
  long unit;
  do {
    unit = r.pick(-4, 4);
  } while (unit == 0 || Int(unit) % p == 0);
  return Rat(unit) * pow_rat(p, e);
}

RatMat rand_invertible_matrix(Rng& r, const Int& p, std::size_t dim, long val_range) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    RatMat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = rand_entry(r, p, val_range);
    if (det(m) != 0) return m;
  }
  return RatMat::identity(dim);
}

Lattice rand_lattice(Rng& r, const Int& p, std::size_t dim) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    RatMat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = Rat(r.pick(-2, 2));
    Rat d = det(m);
    if (d == 0 || valuation(d, p) != 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      Rat scale = pow_rat(p, r.pick(-2, 2));
      for (std::size_t i = 0; i < dim; ++i) m.at(i, j) *= scale;
    }
    return Lattice::from_generators(p, m);
  }
  return Lattice::standard(p, dim);
}

struct PadicInstance {
  std::shared_ptr<const Universe> universe;
  Automorphism phi;
  Subgroup u;
};

PadicInstance rand_padic_instance(Rng& r, std::size_t max_dim = 4, long val_range = 3) {
  Int p = rand_prime(r);
  std::size_t dim = static_cast<std::size_t>(r.pick(1, static_cast<long>(max_dim)));
  auto universe = make_padic_universe(p, dim);
  Automorphism phi =
      make_matrix_automorphism(universe, rand_invertible_matrix(r, p, dim, val_range));
  Subgroup u = make_lattice_subgroup(rand_lattice(r, p, dim));
  return {universe, phi, u};
}

struct ShiftInstance {
  std::shared_ptr<const Universe> universe;
  Automorphism phi;
  Subgroup u;
  Int m;
  long k = 0;
};

std::vector<Int> divisors_above_one(const Int& m) {
  std::vector<Int> out;
  for (Int d = 2; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

ShiftInstance rand_shift_instance(Rng& r) {
  static const std::vector<long> moduli{2, 3, 4, 5, 6};
  Int m(r.choose(moduli));
  auto universe = make_shift_universe(m);
  long k = r.pick(-3, 3);
  Int unit;
  do {
    unit = Int(r.pick(1, m.get_si() - 1));
  } while (gcd(unit, m) != 1);
  Automorphism phi = make_shift_automorphism(universe, k, unit);
  std::vector<Int> divs = divisors_above_one(m);
  long support = r.pick(1, 3);
  nlohmann::json spec{{"kind", "cylinder"}, {"zero_coords", nlohmann::json::array()}};
  for (long i = 0; i < support; ++i) {
    long coord = r.pick(-2, 2);
    Int d = r.choose(divs);
    if (d == m)
      spec["zero_coords"].push_back(coord);
    else
      spec["coord_subgroups"][std::to_string(coord)] =
          nlohmann::json::array({Int(m / d).get_si()});
  }
  if (spec["zero_coords"].empty() && !spec.contains("coord_subgroups"))
    spec["zero_coords"].push_back(0);
  Subgroup u = universe->subgroup_from_json(spec);
  return {universe, phi, u, m, k};
}

FinAbGroup rand_finite_group(Rng& r) {
  static const std::vector<long> moduli{2, 3, 4, 5, 6, 8, 9, 12};
  std::size_t arity = static_cast<std::size_t>(r.pick(1, 3));
  std::vector<Int> ms;
  for (std::size_t i = 0; i < arity; ++i) ms.push_back(Int(r.choose(moduli)));
  return FinAbGroup(ms);
}

FinAbSubgroup rand_fin_subgroup(Rng& r, const FinAbGroup& g) {
  std::vector<std::vector<Int>> gens;
  long n = r.pick(0, 2);
  for (long c = 0; c < n; ++c) {
    std::vector<Int> x;
    for (std::size_t i = 0; i < g.arity(); ++i) x.push_back(Int(r.pick(0, 11)));
    gens.push_back(g.reduce(x));
  }
  return FinAbSubgroup::from_generators(g, gens);
}

IntMat rand_fin_automorphism_matrix(Rng& r, const FinAbGroup& g) {
  std::size_t k = g.arity();
  for (int attempt = 0; attempt < 500; ++attempt) {
    IntMat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m.at(i, j) = Int(r.pick(-3, 3));
    try {
      fa_invert_automorphism(g, m);
      return m;
    } catch (const Error&) {
      continue;
    }
  }
  return IntMat::identity(k);
}

// ---------------------------------------------------------------------------
// Reporting plumbing

struct SuiteCtx {
  SuiteReport report;

  void record(const std::string& name, bool ok, nlohmann::json witness) {
    PropertyCase c;
    c.name = name;
    c.passed = ok;
    if (!ok) c.witness = std::move(witness);
    report.cases.push_back(std::move(c));
    if (ok)
      ++report.passed;
    else
      ++report.failed;
  }

  template <typename Fn>
  void guarded(const std::string& name, nlohmann::json witness, Fn&& body) {
    try {
      record(name, body(), witness);
    } catch (const std::exception& e) {
      witness["error"] = e.what();
      record(name, false, std::move(witness));
    }
  }
};

nlohmann::json instance_witness(const Automorphism& phi, const Subgroup* u,
                                const std::string& op) {
  nlohmann::json j{{"universe", phi.universe()->descriptor()},
                   {"automorphism", phi.universe()->automorphism_to_json(phi.value())},
                   {"op", op}};
  if (u) j["subgroup"] = phi.universe()->subgroup_to_json(*u);
  return j;
}

EntropyValue entropy_of(const Automorphism& phi, const Subgroup& u) {
  return entropy_local_limitfree(phi, u).value;
}

// ---------------------------------------------------------------------------
// Suites

void suite_gi_laws(SuiteCtx& ctx, Rng& rng, int count) {
  const Int coset_cap(10000);
  for (int i = 0; i < count; ++i) {
    Int p = rand_prime(rng);
    std::size_t dim = static_cast<std::size_t>(rng.pick(1, 3));
    Lattice k = rand_lattice(rng, p, dim);
    Lattice l = rand_lattice(rng, p, dim);
    Lattice a = lattice_intersect(k, rand_lattice(rng, p, dim));
    Lattice b = lattice_intersect(a, l);
    nlohmann::json w{{"p", p.get_str()}, {"dim", dim},
                     {"K", rat_matrix_to_json(k.basis())},
                     {"L", rat_matrix_to_json(l.basis())},
                     {"A", rat_matrix_to_json(a.basis())},
                     {"B", rat_matrix_to_json(b.basis())}};

    ctx.guarded("gi-a-lattice", w, [&] {
      return lattice_index(b, k) == lattice_index(a, k) * lattice_index(b, a);
    });
    ctx.guarded("gi-b-lattice", w, [&] {
      // generalized_index cross-checks [L:H cap L] against [L+H:H] internally.
      return generalized_index(l, a) == lattice_index(lattice_intersect(l, a), l);
    });
    ctx.guarded("gi-c-lattice", w, [&] {
      IndexValue lhs = lattice_index(a, k);
      IndexValue rhs = lattice_index(lattice_intersect(a, l), lattice_intersect(k, l));
      return IndexValue::compare(lhs, rhs) >= 0;
    });
    ctx.guarded("gi-coset-oracle-lattice", w, [&] {
      IndexValue idx = lattice_index(b, k);
      if (IndexValue::compare(idx, IndexValue::from_integer(coset_cap)) > 0) return true;
      auto counted = k.enumerate_cosets(b, coset_cap);
      return counted && IndexValue::from_integer(*counted) == idx;
    });

    FinAbGroup g = rand_finite_group(rng);
    FinAbSubgroup fn = rand_fin_subgroup(rng, g);
    FinAbSubgroup fh = fa_join(fn, rand_fin_subgroup(rng, g));
    FinAbSubgroup fk = fa_join(fh, rand_fin_subgroup(rng, g));
    FinAbSubgroup fl = rand_fin_subgroup(rng, g);
    nlohmann::json wf{{"moduli", [&] {
                         nlohmann::json a_ = nlohmann::json::array();
                         for (const Int& m_ : g.moduli()) a_.push_back(m_.get_si());
                         return a_;
                       }()},
                      {"N", int_matrix_to_json(fn.basis())},
                      {"H", int_matrix_to_json(fh.basis())},
                      {"K", int_matrix_to_json(fk.basis())},
                      {"L", int_matrix_to_json(fl.basis())}};

    ctx.guarded("gi-a-finite", wf, [&] {
      FinAbSubgroup whole = FinAbSubgroup::whole(g);
      return fa_index(fh, whole) == fa_index(fk, whole) * fa_index(fh, fk);
    });
    ctx.guarded("gi-b-finite", wf, [&] {
      // [LH : H] = [L : H cap L] on both routes.
      IndexValue via_join = fa_index(fh, fa_join(fl, fh));
      IndexValue via_meet = fa_index(fa_meet(fh, fl), fl);
      return via_join == via_meet;
    });
    ctx.guarded("gi-c-finite", wf, [&] {
      IndexValue lhs = fa_index(fh, fk);
      IndexValue rhs = fa_index(fa_meet(fh, fl), fa_meet(fk, fl));
      return IndexValue::compare(lhs, rhs) >= 0;
    });
    ctx.guarded("gi-d-finite", wf, [&] {
      FinAbQuotient q = fa_quotient(g, fn);
      auto project = [&](const FinAbSubgroup& s) {
        std::vector<std::vector<Int>> gens;
        for (const auto& x : s.generators()) {
          std::vector<Int> img(q.group.arity(), Int(0));
          for (std::size_t r = 0; r < img.size(); ++r)
            for (std::size_t c = 0; c < x.size(); ++c)
              img[r] += q.projection.at(r, c) * x[c];
          gens.push_back(q.group.reduce(img));
        }
        return FinAbSubgroup::from_generators(q.group, gens);
      };
      return fa_index(fh, fk) == fa_index(project(fh), project(fk));
    });
    ctx.guarded("gi-coset-oracle-finite", wf, [&] {
      if (g.order() > coset_cap) return true;
      auto elements = g.enumerate_elements(coset_cap);
      if (!elements) return false;
      long in_h = 0, in_k = 0;
      for (const auto& x : *elements) {
        if (fk.contains_element(x)) ++in_k;
        if (fh.contains_element(x)) ++in_h;
      }
      return in_h > 0 && in_k % in_h == 0 &&
             fa_index(fh, fk) == IndexValue::from_integer(Int(in_k / in_h));
    });
  }
}

void suite_lemma_logalpha(SuiteCtx& ctx, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    PadicInstance inst = rand_padic_instance(rng, 3);
    nlohmann::json w = instance_witness(inst.phi, &inst.u, "entropy");
    ctx.guarded("logalpha-trace-laws", w, [&] {
      EntropyReport rep = entropy_local_limit(inst.phi, inst.u);
      IndexValue prev_alpha;
      bool first = true;
      for (std::size_t r = 0; r + 1 < rep.trace.size(); ++r) {
        const TraceRow& row = rep.trace[r];
        const TraceRow& next = rep.trace[r + 1];
        if (!row.alpha) return false;
        if (!row.c.divides(next.c)) return false;
        if (*row.alpha != next.c / row.c) return false;
        if (!first && IndexValue::compare(*row.alpha, prev_alpha) > 0) return false;
        prev_alpha = *row.alpha;
        first = false;
      }
      if (rep.trace.size() < 2) return false;
      return rep.value == EntropyValue::log_of(prev_alpha);
    });
  }
}

void suite_algorithms_agree(SuiteCtx& ctx, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    PadicInstance inst = rand_padic_instance(rng);
    nlohmann::json w = instance_witness(inst.phi, &inst.u, "entropy");
    ctx.guarded("algorithms-agree", w, [&] {
      EntropyReport limit = entropy_local_limit(inst.phi, inst.u);
      EntropyReport limitfree = entropy_local_limitfree(inst.phi, inst.u);
      EntropyReport corollary = entropy_local_corollary(inst.phi, inst.u);
      const MatrixAut& aut = cast_value<MatrixAut>(inst.phi.value(), "automorphism");
      Int p = int_from_json(inst.universe->descriptor().at("p"));
      EntropyValue oracle = entropy_oracle_padic(aut.mat, p);
      return limit.value == limitfree.value && limitfree.value == corollary.value &&
             corollary.value == oracle;
    });
  }
}

void suite_inverse_modulus(SuiteCtx& ctx, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    PadicInstance inst = rand_padic_instance(rng, 3);
    nlohmann::json w = instance_witness(inst.phi, &inst.u, "entropy");

    ctx.guarded("inverse-entropy-relation", w, [&] {
      EntropyValue h = entropy_of(inst.phi, inst.u);
      EntropyValue h_inv = entropy_of(inst.phi.inverse(), inst.u);
      IndexValue delta = modulus_of(inst.phi, inst.u);
      return h_inv == h - EntropyValue::log_of(delta);
    });
    ctx.guarded("modulus-multiplicative", w, [&] {
      Int p = int_from_json(inst.universe->descriptor().at("p"));
      const MatrixAut& aut = cast_value<MatrixAut>(inst.phi.value(), "automorphism");
      Automorphism psi = make_matrix_automorphism(
          inst.universe, rand_invertible_matrix(rng, p, aut.mat.rows(), 3));
      IndexValue left = modulus_of(inst.phi.compose(psi), inst.u);
      IndexValue right = modulus_of(inst.phi, inst.u) * modulus_of(psi, inst.u);
      return left == right;
    });
    ctx.guarded("modulus-index-transport", w, [&] {
      // [phi(U) : V] = [U : V] * Delta(phi) for V inside U cap phi(U).
      const Universe& uni = *inst.universe;
      Subgroup image = inst.phi.apply(inst.u);
      Subgroup meet = uni.intersect(inst.u, image);
      Subgroup v = uni.intersect(meet, make_lattice_subgroup(rand_lattice(
                                           rng, lattice_of(inst.u).p(), lattice_of(inst.u).dim())));
      IndexValue lhs = uni.index(v, image);
      IndexValue rhs = uni.index(v, inst.u) * modulus_of(inst.phi, inst.u);
      return lhs == rhs;
    });
    ctx.guarded("modulus-independent-of-subgroup", w, [&] {
      Subgroup other = make_lattice_subgroup(
          rand_lattice(rng, lattice_of(inst.u).p(), lattice_of(inst.u).dim()));
      return modulus_of(inst.phi, inst.u) == modulus_of(inst.phi, other);
    });

    ShiftInstance sh = rand_shift_instance(rng);
    nlohmann::json ws = instance_witness(sh.phi, &sh.u, "modulus");
    ctx.guarded("modulus-compact-trivial", ws, [&] {
      return modulus_of(sh.phi, sh.u).is_one();
    });
  }
}

void suite_conjugation(SuiteCtx& ctx, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    PadicInstance inst = rand_padic_instance(rng, 3);
    Int p = int_from_json(inst.universe->descriptor().at("p"));
    const MatrixAut& aut = cast_value<MatrixAut>(inst.phi.value(), "automorphism");
    Automorphism xi = make_matrix_automorphism(
        inst.universe, rand_invertible_matrix(rng, p, aut.mat.rows(), 2));
    nlohmann::json w = instance_witness(inst.phi, &inst.u, "entropy");
    w["conjugator"] = inst.universe->automorphism_to_json(xi.value());

    ctx.guarded("conjugation-local", w, [&] {
      Automorphism psi = xi.compose(inst.phi).compose(xi.inverse());
      return entropy_of(psi, xi.apply(inst.u)) == entropy_of(inst.phi, inst.u);
    });
    ctx.guarded("conjugation-global", w, [&] {
      Automorphism psi = xi.compose(inst.phi).compose(xi.inverse());
      return entropy_global(psi, 4).value == entropy_global(inst.phi, 4).value;
    });
  }
}

void suite_antitone(SuiteCtx& ctx, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    PadicInstance inst = rand_padic_instance(rng, 3);
    nlohmann::json w = instance_witness(inst.phi, &inst.u, "entropy");
    ctx.guarded("antitone-lattice-chain", w, [&] {
      const Universe& uni = *inst.universe;
      Subgroup v = inst.u;
      EntropyValue prev = entropy_of(inst.phi, v);
      for (int step = 0; step < 3; ++step) {
        Subgroup smaller = uni.intersect(
            v, make_lattice_subgroup(
                   rand_lattice(rng, lattice_of(inst.u).p(), lattice_of(inst.u).dim())));
        EntropyValue h = entropy_of(inst.phi, smaller);
        if (EntropyValue::compare(h, prev) < 0) return false;
        prev = h;
        v = smaller;
      }
      return true;
    });

    ShiftInstance sh = rand_shift_instance(rng);
    nlohmann::json ws = instance_witness(sh.phi, nullptr, "entropy");
    ctx.guarded("antitone-cylinder-chain", ws, [&] {
      std::vector<Subgroup> base = sh.universe->base_enumerator(4);
      EntropyValue prev = EntropyValue::zero();
      bool first = true;
      for (const Subgroup& u : base) {  // shrinking zero-window chain
        EntropyValue h = entropy_of(sh.phi, u);
        if (!first && EntropyValue::compare(h, prev) < 0) return false;
        prev = h;
        first = false;
      }
      return true;
    });
  }
}

void suite_loglaw(SuiteCtx& ctx, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    PadicInstance inst = rand_padic_instance(rng, 3);
    nlohmann::json w = instance_witness(inst.phi, nullptr, "entropy-global");
    for (long k : {2L, 3L, 4L}) {
      nlohmann::json wk = w;
      wk["power"] = k;
      ctx.guarded("loglaw-padic-k" + std::to_string(k), wk, [&] {
        GlobalReport h = entropy_global(inst.phi, 3);
        GlobalReport hk = entropy_global(inst.phi.power(k), 3);
        return h.certified && hk.certified && hk.value == h.value.times(Int(k));
      });
    }

    ShiftInstance sh = rand_shift_instance(rng);
    nlohmann::json ws = instance_witness(sh.phi, nullptr, "entropy-global");
    ctx.guarded("loglaw-shift-k2", ws, [&] {
      GlobalReport h = entropy_global(sh.phi, 10);
      GlobalReport hk = entropy_global(sh.phi.power(2), 10);
      return h.certified && hk.certified && hk.value == h.value.times(Int(2));
    });
  }
}

void suite_monotonicity(SuiteCtx& ctx, Rng& rng, int count) {
  const int horizon = 5;
  for (int i = 0; i < count; ++i) {
    // Block upper-triangular matrix on Q_p^n: N = span(e_1..e_k) invariant.
    Int p = rand_prime(rng);
    std::size_t dim = static_cast<std::size_t>(rng.pick(2, 3));
    std::size_t split = static_cast<std::size_t>(rng.pick(1, static_cast<long>(dim) - 1));
    RatMat a(dim, dim);
    RatMat a11 = rand_invertible_matrix(rng, p, split, 2);
    RatMat a22 = rand_invertible_matrix(rng, p, dim - split, 2);
    for (std::size_t r = 0; r < split; ++r)
      for (std::size_t c = 0; c < split; ++c) a.at(r, c) = a11.at(r, c);
    for (std::size_t r = 0; r < dim - split; ++r)
      for (std::size_t c = 0; c < dim - split; ++c) a.at(split + r, split + c) = a22.at(r, c);
    for (std::size_t r = 0; r < split; ++r)
      for (std::size_t c = split; c < dim; ++c) a.at(r, c) = rand_entry(rng, p, 2);
    auto universe = make_padic_universe(p, dim);
    Automorphism phi = make_matrix_automorphism(universe, a);
    Subgroup u = make_lattice_subgroup(rand_lattice(rng, p, dim));
    nlohmann::json w = instance_witness(phi, &u, "entropy");
    w["split"] = split;

    InvariantSubquotient dec(phi, split);
    ctx.guarded("restriction-cotrajectory-identity", w, [&] {
      for (int n = 1; n <= horizon; ++n) {
        Subgroup lhs = cotrajectory(dec.restriction(), dec.restrict_subgroup(u), n);
        Subgroup rhs = dec.restrict_subgroup(cotrajectory(phi, u, n));
        if (!dec.restriction().universe()->equal(lhs, rhs)) return false;
      }
      return true;
    });
    ctx.guarded("quotient-cotrajectory-containment", w, [&] {
      for (int n = 1; n <= horizon; ++n) {
        Subgroup big = cotrajectory(dec.quotient(), dec.project_subgroup(u), n);
        Subgroup small = dec.project_subgroup(cotrajectory(phi, u, n));
        if (!dec.quotient().universe()->contains(big, small)) return false;
      }
      return true;
    });
    ctx.guarded("monotonicity-restriction", w, [&] {
      GlobalReport whole = entropy_global(phi, 3);
      GlobalReport restr = entropy_global(dec.restriction(), 3);
      return EntropyValue::compare(whole.value, restr.value) >= 0;
    });
    ctx.guarded("monotonicity-quotient", w, [&] {
      GlobalReport whole = entropy_global(phi, 3);
      GlobalReport quot = entropy_global(dec.quotient(), 3);
      return EntropyValue::compare(whole.value, quot.value) >= 0;
    });

    // Compact-factor quotient: product with a finite factor, N inside U.
    FinAbGroup g = rand_finite_group(rng);
    IntMat psi_mat = rand_fin_automorphism_matrix(rng, g);
    auto u2 = make_finite_universe(g);
    auto u1 = make_padic_universe(p, 1);
    auto prod = make_product_universe(u1, u2);
    Automorphism phi1 =
        make_matrix_automorphism(u1, rand_invertible_matrix(rng, p, 1, 2));
    Automorphism psi = make_finite_automorphism(u2, psi_mat);
    Automorphism eta = make_pair_automorphism(prod, phi1, psi);
    // The induced quotient map must land in the invertible-matrix class;
    // redraw N when it does not, falling back to the whole factor (trivial
    // quotient), which is always representable.
    FinAbSubgroup n_sub = FinAbSubgroup::whole(g);
    std::optional<CompactFactorQuotient> cfq;
    for (int attempt = 0; attempt < 16 && !cfq; ++attempt) {
      FinAbSubgroup cand = rand_fin_subgroup(rng, g);
      for (int guard = 0; guard < 64; ++guard) {  // close under psi
        FinAbSubgroup next = fa_join(cand, fa_apply(psi_mat, cand));
        if (next == cand) break;
        cand = next;
      }
      try {
        cfq.emplace(eta, cand);
        n_sub = cand;
      } catch (const Error&) {
      }
    }
    if (!cfq) cfq.emplace(eta, n_sub);
    FinAbSubgroup v = fa_join(n_sub, rand_fin_subgroup(rng, g));
    Subgroup pu = make_pair_subgroup(make_lattice_subgroup(rand_lattice(rng, p, 1)),
                                     make_finite_subgroup(v));
    nlohmann::json wq = instance_witness(eta, &pu, "entropy");
    wq["invariant_subgroup"] = int_matrix_to_json(n_sub.basis());
    ctx.guarded("compact-quotient-cotrajectory-identity", wq, [&] {
      for (int n = 1; n <= horizon; ++n) {
        Subgroup lhs = cotrajectory(cfq->induced(), cfq->project_subgroup(pu), n);
        Subgroup rhs = cfq->project_subgroup(cotrajectory(eta, pu, n));
        if (!cfq->universe()->equal(lhs, rhs)) return false;
      }
      return true;
    });
    ctx.guarded("compact-quotient-entropy-preserved", wq, [&] {
      return entropy_of(cfq->induced(), cfq->project_subgroup(pu)) == entropy_of(eta, pu);
    });
  }
}

void suite_inverse_limit(SuiteCtx& ctx, Rng& rng, int count) {
  // Tower over Q_p x Z_2^5 with coordinates ordered by window radius:
  // index 0 <-> coordinate 0, indices 1,2 <-> -1,1, indices 3,4 <-> -2,2.
  // N_i = coordinates outside window i; psi block-lower-triangular fixes
  // every N_i, so each stage induces an automorphism of the quotient.
  for (int i = 0; i < count; ++i) {
    Int p = rand_prime(rng);
    FinAbGroup g({Int(2), Int(2), Int(2), Int(2), Int(2)});
    IntMat psi_mat(5, 5);
    const std::size_t ring_start[4] = {0, 1, 3, 5};
    for (int attempt = 0; attempt < 500; ++attempt) {
      for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) psi_mat.at(r, c) = 0;
      bool ok = true;
      for (int ring = 0; ring < 3 && ok; ++ring) {
        std::size_t lo = ring_start[ring], hi = ring_start[ring + 1];
        for (std::size_t r = lo; r < 5; ++r)
          for (std::size_t c = lo; c < hi; ++c) psi_mat.at(r, c) = Int(rng.pick(0, 1));
        // Diagonal block must be invertible mod 2.
        std::size_t sz = hi - lo;
        RatMat blockm(sz, sz);
        for (std::size_t r = 0; r < sz; ++r)
          for (std::size_t c = 0; c < sz; ++c) blockm.at(r, c) = Rat(psi_mat.at(lo + r, lo + c));
        Rat d = det(blockm);
        if (d == 0 || d.get_num() % 2 == 0) ok = false;
      }
      if (ok) break;
    }
    auto u1 = make_padic_universe(p, 2);
    auto u2 = make_finite_universe(g);
    auto prod = make_product_universe(u1, u2);
    Automorphism phi1 = make_matrix_automorphism(u1, rand_invertible_matrix(rng, p, 2, 2));
    Automorphism psi = make_finite_automorphism(u2, psi_mat);
    Automorphism eta = make_pair_automorphism(prod, phi1, psi);

    std::vector<FinAbSubgroup> tower;  // N_0 > N_1 > N_2 = 1
    std::vector<std::vector<Int>> gens0, gens1;
    for (std::size_t idx = 1; idx < 5; ++idx) {
      std::vector<Int> e(5, Int(0));
      e[idx] = 1;
      gens0.push_back(e);
      if (idx >= 3) gens1.push_back(e);
    }
    tower.push_back(FinAbSubgroup::from_generators(g, gens0));
    tower.push_back(FinAbSubgroup::from_generators(g, gens1));
    tower.push_back(FinAbSubgroup::trivial(g));

    nlohmann::json w = instance_witness(eta, nullptr, "entropy");
    ctx.guarded("tower-descends-to-identity", w, [&] {
      return tower[0].contains(tower[1]) && tower[1].contains(tower[2]) &&
             fa_meet(fa_meet(tower[0], tower[1]), tower[2]).order() == 1;
    });

    std::optional<std::pair<EntropyValue, EntropyValue>> sup_whole;
    ctx.guarded("tower-local-entropy-preserved", w, [&] {
      GlobalReport whole = entropy_global(eta, 3);
      EntropyValue sup = EntropyValue::zero();
      bool stages_ok = true;
      for (std::size_t stage = 0; stage < tower.size(); ++stage) {
        CompactFactorQuotient cfq(eta, tower[stage]);
        // H preserved at a subgroup containing N_stage.
        FinAbSubgroup v = fa_join(tower[stage], rand_fin_subgroup(rng, g));
        Subgroup pu = make_pair_subgroup(make_lattice_subgroup(rand_lattice(rng, p, 2)),
                                         make_finite_subgroup(v));
        if (!(entropy_of(cfq.induced(), cfq.project_subgroup(pu)) == entropy_of(eta, pu)))
          stages_ok = false;
        GlobalReport stage_h = entropy_global(cfq.induced(), 3);
        if (EntropyValue::compare(stage_h.value, sup) > 0) sup = stage_h.value;
      }
      sup_whole = {sup, whole.value};
      return stages_ok;
    });
    ctx.guarded("tower-supremum-attained", w, [&] {
      return sup_whole && sup_whole->first == sup_whole->second;
    });
  }
}

void suite_weak_addition(SuiteCtx& ctx, Rng& rng, int count) {
  const int horizon = 4;
  for (int i = 0; i < count; ++i) {
    bool mixed = (i % 2 == 1);
    std::shared_ptr<const Universe> ua, ub;
    Automorphism fa_, fb;
    Subgroup sa, sb;
    if (!mixed) {
      PadicInstance one = rand_padic_instance(rng, 2);
      Int q = rand_prime(rng);
      while (q == int_from_json(one.universe->descriptor().at("p"))) q = rand_prime(rng);
      std::size_t dim = static_cast<std::size_t>(rng.pick(1, 2));
      auto other = make_padic_universe(q, dim);
      ua = one.universe;
      fa_ = one.phi;
      sa = one.u;
      ub = other;
      fb = make_matrix_automorphism(other, rand_invertible_matrix(rng, q, dim, 2));
      sb = make_lattice_subgroup(rand_lattice(rng, q, dim));
    } else {
      PadicInstance one = rand_padic_instance(rng, 2);
      ShiftInstance two = rand_shift_instance(rng);
      ua = one.universe;
      fa_ = one.phi;
      sa = one.u;
      ub = two.universe;
      fb = two.phi;
      sb = two.u;
    }
    auto prod = make_product_universe(ua, ub);
    Automorphism eta = make_pair_automorphism(prod, fa_, fb);
    Subgroup uv = make_pair_subgroup(sa, sb);
    nlohmann::json w = instance_witness(eta, &uv, "entropy");

    ctx.guarded("weak-addition-local", w, [&] {
      return entropy_of(eta, uv) == entropy_of(fa_, sa) + entropy_of(fb, sb);
    });
    ctx.guarded("componentwise-cotrajectory", w, [&] {
      for (int n = 1; n <= horizon; ++n) {
        Subgroup both = cotrajectory(eta, uv, n);
        Subgroup split = make_pair_subgroup(cotrajectory(fa_, sa, n), cotrajectory(fb, sb, n));
        if (!prod->equal(both, split)) return false;
      }
      return true;
    });
    ctx.guarded("weak-addition-global", w, [&] {
      GlobalReport sum = entropy_global(eta, 6);
      GlobalReport ha = entropy_global(fa_, 6);
      GlobalReport hb = entropy_global(fb, 6);
      return sum.value == ha.value + hb.value;
    });
  }
}

void suite_scale_inequality(SuiteCtx& ctx, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    PadicInstance inst = rand_padic_instance(rng, 3);
    nlohmann::json w = instance_witness(inst.phi, nullptr, "scale");
    ctx.guarded("scale-le-entropy-padic", w, [&] {
      std::vector<Subgroup> candidates = inst.universe->base_enumerator(6);
      candidates.push_back(inst.u);
      ScaleReport s = scale_estimate(inst.phi, candidates);
      GlobalReport h = entropy_global(inst.phi, 3);
      return h.certified &&
             EntropyValue::compare(EntropyValue::log_of(s.value), h.value) <= 0;
    });
    ctx.guarded("scale-diagonal-attains-oracle", w, [&] {
      Int p = int_from_json(inst.universe->descriptor().at("p"));
      const MatrixAut& aut = cast_value<MatrixAut>(inst.phi.value(), "automorphism");
      std::size_t dim = aut.mat.rows();
      RatMat d(dim, dim);
      for (std::size_t j = 0; j < dim; ++j) d.at(j, j) = pow_rat(p, rng.pick(-2, 2));
      Automorphism diag = make_matrix_automorphism(inst.universe, d);
      ScaleReport s = scale_estimate(
          diag, {make_lattice_subgroup(Lattice::standard(p, dim))});
      GlobalReport h = entropy_global(diag, 3);
      return s.oracle && *s.oracle == s.value && s.oracle_attained &&
             EntropyValue::log_of(s.value) == h.value;
    });

    ShiftInstance sh = rand_shift_instance(rng);
    nlohmann::json ws = instance_witness(sh.phi, nullptr, "scale");
    ctx.guarded("scale-le-entropy-shift", ws, [&] {
      ScaleReport s = scale_estimate(sh.phi, sh.universe->base_enumerator(3));
      GlobalReport h = entropy_global(sh.phi, 10);
      if (!h.certified) return false;
      if (EntropyValue::compare(EntropyValue::log_of(s.value), h.value) > 0) return false;
      // The whole group is always a candidate, so compact groups give 1.
      return s.value.is_one();
    });
  }
}

using SuiteFn = void (*)(SuiteCtx&, Rng&, int);

struct SuiteSpec {
  const char* name;
  SuiteFn fn;
  int default_count;
};

const SuiteSpec kSuites[] = {
    {"gi-laws", suite_gi_laws, 200},
    {"lemma-logalpha", suite_lemma_logalpha, 100},
    {"algorithms-agree", suite_algorithms_agree, 200},
    {"inverse-modulus", suite_inverse_modulus, 50},
    {"conjugation", suite_conjugation, 50},
    {"antitone", suite_antitone, 50},
    {"loglaw", suite_loglaw, 30},
    {"monotonicity", suite_monotonicity, 30},
    {"inverse-limit", suite_inverse_limit, 5},
    {"weak-addition", suite_weak_addition, 30},
    {"scale-inequality", suite_scale_inequality, 50},
};

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const SuiteSpec& s : kSuites) out.push_back(s.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, unsigned long long seed, int count) {
  for (const SuiteSpec& s : kSuites) {
    if (name != s.name) continue;
    SuiteCtx ctx;
    ctx.report.suite = s.name;
    ctx.report.seed = seed;
    ctx.report.requested = count > 0 ? count : s.default_count;
    Rng rng(seed ^ std::hash<std::string>{}(name));
    s.fn(ctx, rng, ctx.report.requested);
    log_info("suite " + ctx.report.suite + ": " + std::to_string(ctx.report.passed) +
             " passed, " + std::to_string(ctx.report.failed) + " failed");
    return std::move(ctx.report);
  }
  fail(ErrorKind::InvalidArgument, "unknown suite: " + name);
}

std::vector<SuiteReport> run_all_suites(unsigned long long seed, int count) {
  std::vector<SuiteReport> out;
  for (const SuiteSpec& s : kSuites) out.push_back(run_suite(s.name, seed, count));
  return out;
}

}  // namespace tdlc

#include "tdlc/finite_universe.hpp"

#include "tdlc/serialize.hpp"

namespace tdlc {

namespace {

class FiniteUniverse : public Universe {
 public:
  explicit FiniteUniverse(FinAbGroup g) : group_(std::move(g)) {}

  std::string kind() const override { return "finite"; }
  bool is_compact() const override { return true; }

  const FinAbSubgroup& check(const Subgroup& s) const {
    const FinAbSubgroup& f = finite_subgroup_of(s);
    if (f.parent() != group_)
      fail(ErrorKind::MixedUniverse, "subgroup of a different finite group");
    return f;
  }

  const FinMatrixAut& check(const AutHandle& a) const {
    const FinMatrixAut& f = cast_value<FinMatrixAut>(a, "automorphism");
    if (f.group != group_)
      fail(ErrorKind::MixedUniverse, "automorphism of a different finite group");
    return f;
  }

  Subgroup intersect(const Subgroup& a, const Subgroup& b) const override {
    return make_finite_subgroup(fa_meet(check(a), check(b)));
  }
  Subgroup sum(const Subgroup& a, const Subgroup& b) const override {
    return make_finite_subgroup(fa_join(check(a), check(b)));
  }
  Subgroup apply(const AutHandle& phi, const Subgroup& s) const override {
    return make_finite_subgroup(fa_apply(check(phi).mat, check(s)));
  }
  Subgroup apply_inverse(const AutHandle& phi, const Subgroup& s) const override {
    return make_finite_subgroup(fa_apply(check(phi).inv, check(s)));
  }
  IndexValue index(const Subgroup& sub, const Subgroup& sup) const override {
    return fa_index(check(sub), check(sup));
  }
  bool equal(const Subgroup& a, const Subgroup& b) const override {
    return check(a) == check(b);
  }
  bool contains(const Subgroup& big, const Subgroup& small) const override {
    return check(big).contains(check(small));
  }

  std::vector<Subgroup> base_enumerator(int budget) const override {
    std::vector<Subgroup> out;
    if (budget >= 1) out.push_back(make_finite_subgroup(FinAbSubgroup::whole(group_)));
    if (budget >= 2) out.push_back(make_finite_subgroup(FinAbSubgroup::trivial(group_)));
    return out;
  }

  std::optional<Subgroup> whole_group() const override {
    return make_finite_subgroup(FinAbSubgroup::whole(group_));
  }

  Subgroup default_subgroup() const override {
    return make_finite_subgroup(FinAbSubgroup::trivial(group_));
  }

  AutHandle identity() const override {
    IntMat i = IntMat::identity(group_.arity());
    return std::make_shared<FinMatrixAut>(group_, i, i);
  }
  AutHandle compose(const AutHandle& f, const AutHandle& g) const override {
    const FinMatrixAut& a = check(f);
    const FinMatrixAut& b = check(g);
    return std::make_shared<FinMatrixAut>(group_, a.mat * b.mat, b.inv * a.inv);
  }
  AutHandle invert(const AutHandle& f) const override {
    const FinMatrixAut& a = check(f);
    return std::make_shared<FinMatrixAut>(group_, a.inv, a.mat);
  }

  std::optional<EntropyValue> entropy_oracle(const AutHandle&) const override {
    // Cotrajectory indices are bounded by the group order, so H = 0.
    return EntropyValue::zero();
  }

  std::optional<int> stabilization_bound(const AutHandle&,
                                         const Subgroup&) const override {
    // Strictly shrinking subgroup chains halve the order each step.
    int bits = static_cast<int>(mpz_sizeinbase(group_.order().get_mpz_t(), 2));
    return bits + 2;
  }

  nlohmann::json descriptor() const override {
    nlohmann::json moduli = nlohmann::json::array();
    for (const Int& m : group_.moduli()) moduli.push_back(m.get_si());
    return nlohmann::json{{"kind", "finite"}, {"moduli", moduli}};
  }

  nlohmann::json subgroup_to_json(const Subgroup& s) const override {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : check(s).generators()) {
      nlohmann::json row = nlohmann::json::array();
      for (const Int& x : g) row.push_back(x.get_si());
      gens.push_back(row);
    }
    return nlohmann::json{{"kind", "fin_subgroup"}, {"generators", gens}};
  }

  Subgroup subgroup_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "fin_subgroup") != "fin_subgroup")
      fail(ErrorKind::ParseError, "expected a finite-subgroup descriptor");
    std::vector<std::vector<Int>> gens;
    for (const auto& row : j.value("generators", nlohmann::json::array())) {
      std::vector<Int> g;
      for (const auto& x : row) g.push_back(int_from_json(x));
      gens.push_back(std::move(g));
    }
    return make_finite_subgroup(FinAbSubgroup::from_generators(group_, gens));
  }

  nlohmann::json automorphism_to_json(const AutHandle& a) const override {
    return nlohmann::json{{"kind", "int_matrix"},
                          {"rows", int_matrix_to_json(check(a).mat)}};
  }

  AutHandle automorphism_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "int_matrix") != "int_matrix")
      fail(ErrorKind::ParseError, "expected an integer-matrix automorphism descriptor");
    IntMat m = int_matrix_from_json(j.at("rows"));
    IntMat inv = fa_invert_automorphism(group_, m);
    return std::make_shared<FinMatrixAut>(group_, m, inv);
  }

  const FinAbGroup& group() const { return group_; }

 private:
  FinAbGroup group_;
};

}  // namespace

std::shared_ptr<const Universe> make_finite_universe(const FinAbGroup& g) {
  return std::make_shared<FiniteUniverse>(g);
}

Automorphism make_finite_automorphism(const std::shared_ptr<const Universe>& u,
                                      const IntMat& m) {
  return Automorphism(u, u->automorphism_from_json(nlohmann::json{
                             {"kind", "int_matrix"}, {"rows", int_matrix_to_json(m)}}));
}

Subgroup make_finite_subgroup(const FinAbSubgroup& s) {
  return std::make_shared<FinSubgroupVal>(s);
}

const FinAbSubgroup& finite_subgroup_of(const Subgroup& s) {
  return cast_value<FinSubgroupVal>(s, "subgroup").subgroup;
}

const FinAbGroup& finite_group_of(const std::shared_ptr<const Universe>& u) {
  const auto* f = dynamic_cast<const FiniteUniverse*>(u.get());
  if (!f) fail(ErrorKind::MixedUniverse, "not a finite universe");
  return f->group();
}

}  // namespace tdlc

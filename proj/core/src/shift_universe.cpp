#include "tdlc/shift_universe.hpp"

#include <algorithm>

#include "tdlc/serialize.hpp"

namespace tdlc {

namespace {

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

class ShiftUniverse : public Universe {
 public:
  explicit ShiftUniverse(Int m) : m_(std::move(m)) {
    if (m_ < 2) fail(ErrorKind::BadModulus, "shift alphabet modulus must be >= 2");
  }

  std::string kind() const override { return "shift"; }
  bool is_compact() const override { return true; }

  const CylinderSubgroup& check(const Subgroup& s) const {
    const CylinderSubgroup& c = cylinder_of(s);
    if (c.m != m_) fail(ErrorKind::MixedUniverse, "cylinder from a different shift universe");
    return c;
  }

  const ShiftAut& check(const AutHandle& a) const {
    const ShiftAut& s = cast_value<ShiftAut>(a, "automorphism");
    if (s.m != m_) fail(ErrorKind::MixedUniverse, "automorphism from a different shift universe");
    return s;
  }

  Subgroup make(std::map<long, Int> constraints) const {
    for (auto it = constraints.begin(); it != constraints.end();) {
      if (it->second == 1)
        it = constraints.erase(it);
      else
        ++it;
    }
    return std::make_shared<CylinderSubgroup>(m_, std::move(constraints));
  }

  Subgroup intersect(const Subgroup& a, const Subgroup& b) const override {
    std::map<long, Int> out = check(a).constraints;
    for (const auto& [c, d] : check(b).constraints) {
      auto it = out.find(c);
      out[c] = it == out.end() ? d : lcm_int(it->second, d);
    }
    return make(std::move(out));
  }

  Subgroup sum(const Subgroup& a, const Subgroup& b) const override {
    const auto& ca = check(a).constraints;
    const auto& cb = check(b).constraints;
    std::map<long, Int> out;
    for (const auto& [c, d] : ca) {
      auto it = cb.find(c);
      if (it == cb.end()) continue;  // other factor unconstrained there
      Int g = gcd_int(d, it->second);
      if (g != 1) out[c] = g;
    }
    return make(std::move(out));
  }

  Subgroup translate(const Subgroup& s, long shift) const {
    std::map<long, Int> out;
    for (const auto& [c, d] : check(s).constraints) out[c + shift] = d;
    return make(std::move(out));
  }

  Subgroup apply(const AutHandle& phi, const Subgroup& s) const override {
    // Unit multiplication fixes every subgroup of Z_m, so only k acts.
    return translate(s, -check(phi).k);
  }
  Subgroup apply_inverse(const AutHandle& phi, const Subgroup& s) const override {
    return translate(s, check(phi).k);
  }

  IndexValue index(const Subgroup& sub, const Subgroup& sup) const override {
    const auto& csub = check(sub).constraints;
    const auto& csup = check(sup).constraints;
    IndexValue out = IndexValue::one();
    for (const auto& [c, d] : csub) {
      auto it = csup.find(c);
      Int dp = it == csup.end() ? Int(1) : it->second;
      if (!mpz_divisible_p(d.get_mpz_t(), dp.get_mpz_t()))
        fail(ErrorKind::NotContained, "cylinder index requires containment");
      out = out * IndexValue::from_integer(d / dp);
    }
    for (const auto& [c, d] : csup) {
      if (csub.find(c) == csub.end())
        fail(ErrorKind::NotContained, "cylinder index requires containment");
    }
    return out;
  }

  bool equal(const Subgroup& a, const Subgroup& b) const override {
    return check(a).constraints == check(b).constraints;
  }

  bool contains(const Subgroup& big, const Subgroup& small) const override {
    const auto& cs = check(small).constraints;
    for (const auto& [c, d] : check(big).constraints) {
      auto it = cs.find(c);
      if (it == cs.end()) return false;
      if (!mpz_divisible_p(it->second.get_mpz_t(), d.get_mpz_t())) return false;
    }
    return true;
  }

  std::vector<Subgroup> base_enumerator(int budget) const override {
    std::vector<Subgroup> out;
    for (long r = 0; static_cast<int>(out.size()) < budget; ++r) {
      std::map<long, Int> cons;
      for (long c = -r; c <= r; ++c) cons[c] = m_;
      out.push_back(make(std::move(cons)));
    }
    return out;
  }

  std::optional<Subgroup> whole_group() const override { return make({}); }

  Subgroup default_subgroup() const override { return make({{0, m_}}); }

  AutHandle identity() const override {
    return std::make_shared<ShiftAut>(m_, 0, Int(1), Int(1));
  }
  AutHandle compose(const AutHandle& f, const AutHandle& g) const override {
    const ShiftAut& a = check(f);
    const ShiftAut& b = check(g);
    Int u, uinv;
    mpz_mod(u.get_mpz_t(), Int(a.unit * b.unit).get_mpz_t(), m_.get_mpz_t());
    mpz_mod(uinv.get_mpz_t(), Int(a.unit_inv * b.unit_inv).get_mpz_t(), m_.get_mpz_t());
    return std::make_shared<ShiftAut>(m_, a.k + b.k, u, uinv);
  }
  AutHandle invert(const AutHandle& f) const override {
    const ShiftAut& a = check(f);
    return std::make_shared<ShiftAut>(m_, -a.k, a.unit_inv, a.unit);
  }

  std::optional<int> stabilization_bound(const AutHandle& phi,
                                         const Subgroup& u) const override {
    const ShiftAut& a = check(phi);
    const auto& cons = check(u).constraints;
    if (a.k == 0 || cons.empty()) return 2;
    long lo = cons.begin()->first;
    long hi = cons.rbegin()->first;
    long diam = hi - lo;
    long step = a.k < 0 ? -a.k : a.k;
    // Translates of the constraint window clear the window after
    // diam/step steps; beyond that each new step repeats the pattern.
    return static_cast<int>(diam / step + 2);
  }

  nlohmann::json descriptor() const override {
    return nlohmann::json{{"kind", "shift"}, {"m", m_.get_si()}};
  }

  nlohmann::json subgroup_to_json(const Subgroup& s) const override {
    const CylinderSubgroup& c = check(s);
    nlohmann::json zero = nlohmann::json::array();
    nlohmann::json partial = nlohmann::json::object();
    for (const auto& [coord, d] : c.constraints) {
      if (d == m_)
        zero.push_back(coord);
      else
        partial[std::to_string(coord)] = nlohmann::json::array({d.get_si()});
    }
    nlohmann::json out{{"kind", "cylinder"}, {"zero_coords", zero}};
    if (!partial.empty()) out["coord_subgroups"] = partial;
    return out;
  }

  Subgroup subgroup_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "cylinder") != "cylinder")
      fail(ErrorKind::ParseError, "expected a cylinder subgroup descriptor");
    std::map<long, Int> cons;
    if (j.contains("zero_coords"))
      for (const auto& c : j.at("zero_coords")) cons[c.get<long>()] = m_;
    if (j.contains("coord_subgroups")) {
      for (const auto& [key, gens] : j.at("coord_subgroups").items()) {
        long coord = std::stol(key);
        Int d = m_;  // trivial subgroup <m> = {0}
        for (const auto& g : gens) d = gcd_int(d, int_from_json(g));
        if (d == 1) continue;
        auto it = cons.find(coord);
        cons[coord] = it == cons.end() ? d : lcm_int(it->second, d);
      }
    }
    return make(std::move(cons));
  }

  nlohmann::json automorphism_to_json(const AutHandle& a) const override {
    const ShiftAut& s = check(a);
    return nlohmann::json{{"kind", "shift"}, {"k", s.k}, {"unit", s.unit.get_si()}};
  }

  AutHandle automorphism_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "shift") != "shift")
      fail(ErrorKind::ParseError, "expected a shift automorphism descriptor");
    long k = j.value("k", 0L);
    Int unit = j.contains("unit") ? int_from_json(j.at("unit")) : Int(1);
    return make_unit_checked(k, unit);
  }

  AutHandle make_unit_checked(long k, Int unit) const {
    Int u;
    mpz_mod(u.get_mpz_t(), unit.get_mpz_t(), m_.get_mpz_t());
    Int uinv;
    if (mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), m_.get_mpz_t()) == 0)
      fail(ErrorKind::NotAutomorphism,
           "coordinate multiplier " + unit.get_str() + " is not a unit mod " + m_.get_str());
    return std::make_shared<ShiftAut>(m_, k, u, uinv);
  }

  const Int& modulus() const { return m_; }

 private:
  Int m_;
};

}  // namespace

std::shared_ptr<const Universe> make_shift_universe(const Int& m) {
  return std::make_shared<ShiftUniverse>(m);
}

Automorphism make_shift_automorphism(const std::shared_ptr<const Universe>& u,
                                     long k, const Int& unit) {
  auto su = std::dynamic_pointer_cast<const ShiftUniverse>(u);
  if (!su) fail(ErrorKind::MixedUniverse, "shift automorphism needs a shift universe");
  return Automorphism(u, su->make_unit_checked(k, unit));
}

Subgroup make_zero_cylinder(const std::shared_ptr<const Universe>& u,
                            const std::vector<long>& coords) {
  auto su = std::dynamic_pointer_cast<const ShiftUniverse>(u);
  if (!su) fail(ErrorKind::MixedUniverse, "cylinder subgroup needs a shift universe");
  nlohmann::json j{{"kind", "cylinder"}, {"zero_coords", coords}};
  return su->subgroup_from_json(j);
}

const CylinderSubgroup& cylinder_of(const Subgroup& s) {
  return cast_value<CylinderSubgroup>(s, "subgroup");
}

}  // namespace tdlc

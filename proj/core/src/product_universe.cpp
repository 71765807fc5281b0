#include "tdlc/product_universe.hpp"

#include <algorithm>

namespace tdlc {

namespace {

class ProductUniverse : public Universe {
 public:
  ProductUniverse(std::shared_ptr<const Universe> u1, std::shared_ptr<const Universe> u2)
      : u1_(std::move(u1)), u2_(std::move(u2)) {
    if (!u1_ || !u2_) fail(ErrorKind::InvalidArgument, "null product factor");
  }

  std::string kind() const override { return "product"; }
  bool is_compact() const override { return u1_->is_compact() && u2_->is_compact(); }

  const PairSubgroupVal& check(const Subgroup& s) const {
    return cast_value<PairSubgroupVal>(s, "subgroup");
  }
  const PairAut& check(const AutHandle& a) const {
    return cast_value<PairAut>(a, "automorphism");
  }

  Subgroup intersect(const Subgroup& a, const Subgroup& b) const override {
    const auto& x = check(a);
    const auto& y = check(b);
    return make_pair_subgroup(u1_->intersect(x.first, y.first),
                              u2_->intersect(x.second, y.second));
  }
  Subgroup sum(const Subgroup& a, const Subgroup& b) const override {
    const auto& x = check(a);
    const auto& y = check(b);
    return make_pair_subgroup(u1_->sum(x.first, y.first), u2_->sum(x.second, y.second));
  }
  Subgroup apply(const AutHandle& phi, const Subgroup& s) const override {
    const auto& f = check(phi);
    const auto& x = check(s);
    return make_pair_subgroup(u1_->apply(f.first, x.first), u2_->apply(f.second, x.second));
  }
  Subgroup apply_inverse(const AutHandle& phi, const Subgroup& s) const override {
    const auto& f = check(phi);
    const auto& x = check(s);
    return make_pair_subgroup(u1_->apply_inverse(f.first, x.first),
                              u2_->apply_inverse(f.second, x.second));
  }
  IndexValue index(const Subgroup& sub, const Subgroup& sup) const override {
    const auto& x = check(sub);
    const auto& y = check(sup);
    return u1_->index(x.first, y.first) * u2_->index(x.second, y.second);
  }
  bool equal(const Subgroup& a, const Subgroup& b) const override {
    const auto& x = check(a);
    const auto& y = check(b);
    return u1_->equal(x.first, y.first) && u2_->equal(x.second, y.second);
  }
  bool contains(const Subgroup& big, const Subgroup& small) const override {
    const auto& x = check(big);
    const auto& y = check(small);
    return u1_->contains(x.first, y.first) && u2_->contains(x.second, y.second);
  }

  std::vector<Subgroup> base_enumerator(int budget) const override {
    std::vector<Subgroup> b1 = u1_->base_enumerator(budget);
    std::vector<Subgroup> b2 = u2_->base_enumerator(budget);
    std::vector<Subgroup> out;
    if (b1.empty() || b2.empty()) return out;
    // Pairs ordered by max(i,j): the diagonal is a shrinking cofinal family.
    std::size_t n1 = b1.size(), n2 = b2.size();
    for (std::size_t r = 0; r < std::max(n1, n2); ++r) {
      for (std::size_t i = 0; i <= r; ++i) {
        for (std::size_t j = 0; j <= r; ++j) {
          if (std::max(i, j) != r || i >= n1 || j >= n2) continue;
          if (out.size() >= static_cast<std::size_t>(budget)) return out;
          out.push_back(make_pair_subgroup(b1[i], b2[j]));
        }
      }
    }
    return out;
  }

  std::optional<Subgroup> whole_group() const override {
    auto w1 = u1_->whole_group();
    auto w2 = u2_->whole_group();
    if (!w1 || !w2) return std::nullopt;
    return make_pair_subgroup(*w1, *w2);
  }

  Subgroup default_subgroup() const override {
    return make_pair_subgroup(u1_->default_subgroup(), u2_->default_subgroup());
  }

  AutHandle identity() const override {
    return std::make_shared<PairAut>(u1_->identity(), u2_->identity());
  }
  AutHandle compose(const AutHandle& f, const AutHandle& g) const override {
    const auto& a = check(f);
    const auto& b = check(g);
    return std::make_shared<PairAut>(u1_->compose(a.first, b.first),
                                     u2_->compose(a.second, b.second));
  }
  AutHandle invert(const AutHandle& f) const override {
    const auto& a = check(f);
    return std::make_shared<PairAut>(u1_->invert(a.first), u2_->invert(a.second));
  }

  std::optional<EntropyValue> entropy_oracle(const AutHandle& a) const override {
    const auto& f = check(a);
    auto h1 = u1_->entropy_oracle(f.first);
    auto h2 = u2_->entropy_oracle(f.second);
    if (!h1 || !h2) return std::nullopt;
    return *h1 + *h2;
  }

  std::optional<int> stabilization_bound(const AutHandle& a,
                                         const Subgroup& s) const override {
    const auto& f = check(a);
    const auto& x = check(s);
    auto b1 = u1_->stabilization_bound(f.first, x.first);
    auto b2 = u2_->stabilization_bound(f.second, x.second);
    if (!b1 || !b2) return std::nullopt;
    return std::max(*b1, *b2);
  }

  int default_window() const override {
    return std::max(u1_->default_window(), u2_->default_window());
  }

  nlohmann::json descriptor() const override {
    return nlohmann::json{{"kind", "product"},
                          {"factors", nlohmann::json::array(
                                          {u1_->descriptor(), u2_->descriptor()})}};
  }

  nlohmann::json subgroup_to_json(const Subgroup& s) const override {
    const auto& x = check(s);
    return nlohmann::json{
        {"kind", "pair"},
        {"components", nlohmann::json::array({u1_->subgroup_to_json(x.first),
                                              u2_->subgroup_to_json(x.second)})}};
  }

  Subgroup subgroup_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "pair") != "pair" || !j.contains("components") ||
        !j["components"].is_array() || j["components"].size() != 2)
      fail(ErrorKind::ParseError, "product subgroup needs two components");
    return make_pair_subgroup(u1_->subgroup_from_json(j["components"][0]),
                              u2_->subgroup_from_json(j["components"][1]));
  }

  nlohmann::json automorphism_to_json(const AutHandle& a) const override {
    const auto& f = check(a);
    return nlohmann::json{
        {"kind", "pair"},
        {"components", nlohmann::json::array({u1_->automorphism_to_json(f.first),
                                              u2_->automorphism_to_json(f.second)})}};
  }

  AutHandle automorphism_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "pair") != "pair" || !j.contains("components") ||
        !j["components"].is_array() || j["components"].size() != 2)
      fail(ErrorKind::ParseError, "product automorphism needs two components");
    return std::make_shared<PairAut>(u1_->automorphism_from_json(j["components"][0]),
                                     u2_->automorphism_from_json(j["components"][1]));
  }

  const std::shared_ptr<const Universe>& first() const { return u1_; }
  const std::shared_ptr<const Universe>& second() const { return u2_; }

 private:
  std::shared_ptr<const Universe> u1_;
  std::shared_ptr<const Universe> u2_;
};

}  // namespace

std::shared_ptr<const Universe> make_product_universe(
    std::shared_ptr<const Universe> u1, std::shared_ptr<const Universe> u2) {
  return std::make_shared<ProductUniverse>(std::move(u1), std::move(u2));
}

Subgroup make_pair_subgroup(Subgroup a, Subgroup b) {
  return std::make_shared<PairSubgroupVal>(std::move(a), std::move(b));
}

const PairSubgroupVal& pair_subgroup_of(const Subgroup& s) {
  return cast_value<PairSubgroupVal>(s, "subgroup");
}

Automorphism make_pair_automorphism(const std::shared_ptr<const Universe>& product,
                                    const Automorphism& a, const Automorphism& b) {
  const auto* p = dynamic_cast<const ProductUniverse*>(product.get());
  if (!p) fail(ErrorKind::MixedUniverse, "not a product universe");
  if (a.universe() != p->first() || b.universe() != p->second())
    fail(ErrorKind::MixedUniverse, "component automorphism from a different factor");
  return Automorphism(product, std::make_shared<PairAut>(a.value(), b.value()));
}

std::pair<std::shared_ptr<const Universe>, std::shared_ptr<const Universe>>
product_factors(const std::shared_ptr<const Universe>& u) {
  const auto* p = dynamic_cast<const ProductUniverse*>(u.get());
  if (!p) fail(ErrorKind::MixedUniverse, "not a product universe");
  return {p->first(), p->second()};
}

}  // namespace tdlc

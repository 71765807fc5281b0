#include "tdlc/padic_universe.hpp"

#include <algorithm>

#include "tdlc/oracles.hpp"
#include "tdlc/serialize.hpp"

namespace tdlc {

namespace {

class PadicUniverse : public Universe {
 public:
  PadicUniverse(Int p, std::size_t dim) : p_(std::move(p)), dim_(dim) {
    if (!is_prime(p_)) fail(ErrorKind::BadPrime, p_.get_str() + " is not prime");
    if (dim_ == 0) fail(ErrorKind::DimMismatch, "ambient dimension must be positive");
  }

  std::string kind() const override { return "padic"; }
  bool is_compact() const override { return false; }

  const Lattice& check(const Subgroup& s) const {
    const Lattice& l = lattice_of(s);
    if (l.p() != p_ || l.dim() != dim_)
      fail(ErrorKind::MixedUniverse, "lattice from a different p-adic universe");
    return l;
  }

  const MatrixAut& check(const AutHandle& a) const {
    const MatrixAut& m = matrix_of(a);
    if (m.mat.rows() != dim_)
      fail(ErrorKind::MixedUniverse, "automorphism from a different p-adic universe");
    return m;
  }

  Subgroup intersect(const Subgroup& a, const Subgroup& b) const override {
    return make_lattice_subgroup(lattice_intersect(check(a), check(b)));
  }
  Subgroup sum(const Subgroup& a, const Subgroup& b) const override {
    return make_lattice_subgroup(lattice_sum(check(a), check(b)));
  }
  Subgroup apply(const AutHandle& phi, const Subgroup& s) const override {
    return make_lattice_subgroup(apply_matrix(check(phi).mat, check(s)));
  }
  Subgroup apply_inverse(const AutHandle& phi, const Subgroup& s) const override {
    return make_lattice_subgroup(apply_matrix(check(phi).inv, check(s)));
  }
  IndexValue index(const Subgroup& sub, const Subgroup& sup) const override {
    return lattice_index(check(sub), check(sup));
  }
  bool equal(const Subgroup& a, const Subgroup& b) const override {
    return check(a) == check(b);
  }
  bool contains(const Subgroup& big, const Subgroup& small) const override {
    return check(big).contains(check(small));
  }

  std::vector<Subgroup> base_enumerator(int budget) const override {
    // Diagonal lattices p^(e_1) x ... x p^(e_n), swept by radius
    // max|e_i| = 0, 1, 2, ...; the scalar family p^b Z^n is cofinal in it.
    std::vector<Subgroup> out;
    for (long radius = 0; static_cast<int>(out.size()) < budget; ++radius) {
      std::vector<long> exps(dim_, -radius);
      while (true) {
        long maxabs = 0;
        for (long e : exps) maxabs = std::max(maxabs, e < 0 ? -e : e);
        if (maxabs == radius) {
          out.push_back(make_lattice_subgroup(Lattice::diagonal(p_, exps)));
          if (static_cast<int>(out.size()) >= budget) break;
        }
        std::size_t i = 0;
        for (; i < dim_; ++i) {
          if (exps[i] < radius) {
            ++exps[i];
            std::fill(exps.begin(), exps.begin() + i, -radius);
            break;
          }
        }
        if (i == dim_) break;
      }
    }
    return out;
  }

  std::optional<Subgroup> whole_group() const override { return std::nullopt; }

  Subgroup default_subgroup() const override {
    return make_lattice_subgroup(Lattice::standard(p_, dim_));
  }

  AutHandle identity() const override {
    RatMat i = RatMat::identity(dim_);
    return std::make_shared<MatrixAut>(i, i);
  }
  AutHandle compose(const AutHandle& f, const AutHandle& g) const override {
    const MatrixAut& a = check(f);
    const MatrixAut& b = check(g);
    return std::make_shared<MatrixAut>(a.mat * b.mat, b.inv * a.inv);
  }
  AutHandle invert(const AutHandle& f) const override {
    const MatrixAut& a = check(f);
    return std::make_shared<MatrixAut>(a.inv, a.mat);
  }

  std::optional<EntropyValue> entropy_oracle(const AutHandle& a) const override {
    return entropy_oracle_padic(check(a).mat, p_);
  }

  int default_window() const override { return static_cast<int>(2 * dim_ + 2); }

  nlohmann::json descriptor() const override {
    return nlohmann::json{{"kind", "padic"}, {"p", p_.get_str()}, {"dim", dim_}};
  }
  nlohmann::json subgroup_to_json(const Subgroup& s) const override {
    return nlohmann::json{{"kind", "lattice"},
                          {"basis", rat_matrix_to_json(check(s).basis())}};
  }
  Subgroup subgroup_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "lattice") != "lattice")
      fail(ErrorKind::ParseError, "expected a lattice subgroup descriptor");
    RatMat basis = rat_matrix_from_json(j.at("basis"));
    if (basis.rows() != dim_)
      fail(ErrorKind::DimMismatch, "lattice basis dimension mismatch");
    return make_lattice_subgroup(hnf_normalize(p_, basis));
  }
  nlohmann::json automorphism_to_json(const AutHandle& a) const override {
    return nlohmann::json{{"kind", "matrix"}, {"rows", rat_matrix_to_json(check(a).mat)}};
  }
  AutHandle automorphism_from_json(const nlohmann::json& j) const override {
    if (j.value("kind", "matrix") != "matrix")
      fail(ErrorKind::ParseError, "expected a matrix automorphism descriptor");
    RatMat a = rat_matrix_from_json(j.at("rows"));
    if (a.rows() != dim_ || a.cols() != dim_)
      fail(ErrorKind::DimMismatch, "automorphism matrix dimension mismatch");
    if (det(a) == 0) fail(ErrorKind::Singular, "automorphism matrix is singular");
    return std::make_shared<MatrixAut>(a, inverse(a));
  }

  const Int& p() const { return p_; }
  std::size_t dim() const { return dim_; }

 private:
  Int p_;
  std::size_t dim_;
};

}  // namespace

std::shared_ptr<const Universe> make_padic_universe(const Int& p, std::size_t dim) {
  return std::make_shared<PadicUniverse>(p, dim);
}

Automorphism make_matrix_automorphism(const std::shared_ptr<const Universe>& u,
                                      const RatMat& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::DimMismatch, "automorphism matrix not square");
  if (det(a) == 0) fail(ErrorKind::Singular, "automorphism matrix is singular");
  return Automorphism(u, std::make_shared<MatrixAut>(a, inverse(a)));
}

Subgroup make_lattice_subgroup(const Lattice& l) {
  return std::make_shared<LatticeSubgroup>(l);
}

const Lattice& lattice_of(const Subgroup& s) {
  return cast_value<LatticeSubgroup>(s, "subgroup").lattice;
}

const MatrixAut& matrix_of(const AutHandle& a) {
  return cast_value<MatrixAut>(a, "automorphism");
}

IndexValue padic_modulus(const Automorphism& phi, const Lattice& u) {
  Lattice image = apply_matrix(matrix_of(phi.value()).mat, u);
  Lattice meet = lattice_intersect(u, image);
  IndexValue num = lattice_index(meet, image);  // [phi(U) : U cap phi(U)]
  IndexValue den = lattice_index(meet, u);      // [U : U cap phi(U)]
  return num / den;
}

}  // namespace tdlc

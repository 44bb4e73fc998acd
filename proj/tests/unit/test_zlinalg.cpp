#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "repwitness/errors.hpp"
#include "repwitness/zlinalg.hpp"

using namespace repwitness;

namespace {

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

void check_snf(const IntMatrix& m) {
  const SnfResult s = smith_normal_form(m);
  REQUIRE(s.U * m * s.V == s.D);
  REQUIRE(abs_int(oracle::cofactor_det(oracle::to_dense(s.U))) == 1);
  REQUIRE(abs_int(oracle::cofactor_det(oracle::to_dense(s.V))) == 1);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j) REQUIRE(s.D(i, j) == 0);
      else if (i < s.rank) REQUIRE(s.D(i, i) == s.divisors[i]);
      else REQUIRE(s.D(i, i) == 0);
    }
  for (std::size_t k = 0; k < s.rank; ++k) {
    REQUIRE(s.divisors[k] >= 1);
    if (k + 1 < s.rank) REQUIRE(s.divisors[k + 1] % s.divisors[k] == 0);
  }
  REQUIRE(s.rank == oracle::rational_rank(oracle::to_dense(m)));
}

ExteriorElement random_element(std::mt19937_64& rng, std::size_t degree, std::size_t rank) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<std::size_t> idx(0, rank - 1);
  ExteriorElement e(degree, rank);
  for (int t = 0; t < 4; ++t) {
    std::vector<std::size_t> ks;
    for (std::size_t k = 0; k < degree; ++k) ks.push_back(idx(rng));
    e += Integer(coeff(rng)) * ExteriorElement::basis(rank, ks);
  }
  return e;
}

}  // namespace

TEST_SUITE("zlinalg") {

TEST_CASE("smith_normal_form examples") {
  CHECK(smith_normal_form(IntMatrix{{1, 0}, {0, 6}}).divisors == std::vector<Integer>{1, 6});
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).divisors == std::vector<Integer>{1, 6});
  const SnfResult z = smith_normal_form(IntMatrix(3, 2));
  CHECK(z.rank == 0);
  CHECK(z.divisors.empty());
  CHECK(z.torsion_order() == 1);
  CHECK(smith_normal_form(IntMatrix{{5}}).torsion_order() == 5);
  check_snf(IntMatrix(0, 3));
  check_snf(IntMatrix(2, 0));
}

TEST_CASE("smith_normal_form invariants on random matrices") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 2000; ++t) check_snf(oracle::random_matrix(rng, dim(rng), dim(rng), 9));
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK(determinant(IntMatrix{{2, 1}, {7, 4}}) == 1);
  CHECK_THROWS_AS((void)determinant(IntMatrix(2, 3)), DomainError);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = dim(rng);
    const IntMatrix m = oracle::random_matrix(rng, n, n, 9);
    const Integer d = oracle::cofactor_det(oracle::to_dense(m));
    REQUIRE(determinant(m) == d);
    const SnfResult s = smith_normal_form(m);
    Integer prod = s.rank == n ? Integer(1) : Integer(0);
    for (const auto& x : s.divisors) prod *= x;
    REQUIRE(abs_int(d) == prod);
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(IntMatrix{{5}}).empty());
  const auto full = kernel_basis(IntMatrix(1, 2));
  CHECK(full.size() == 2);
  CHECK(abs_int(determinant(IntMatrix::from_columns(2, full))) == 1);
  const auto k = kernel_basis(IntMatrix{{1, 1}});
  REQUIRE(k.size() == 1);
  CHECK(IntMatrix{{1, 1}} * k[0] == IntVector{0});
  CHECK(oracle::gcd(k[0][0], k[0][1]) == 1);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 300; ++t) {
    const IntMatrix m = oracle::random_matrix(rng, dim(rng), dim(rng), 4);
    const auto basis = kernel_basis(m);
    CHECK(basis.size() == m.cols() - oracle::rational_rank(oracle::to_dense(m)));
    for (const auto& v : basis) CHECK((m * v) == IntVector(m.rows()));
  }
}

TEST_CASE("wedge examples") {
  const auto e = [](std::vector<std::size_t> k) { return ExteriorElement::basis(4, k); };
  CHECK(wedge(e({0}), e({1})).coefficient({0, 1}) == 1);
  CHECK(wedge(e({0}), e({0})).is_zero());
  const ExteriorElement mu = e({0, 2}) + e({1, 3});
  const ExteriorElement prod = wedge(mu, e({1}));
  CHECK(oracle::to_form(prod) == oracle::wedge(oracle::to_form(mu), oracle::to_form(e({1}))));
  CHECK(prod.coefficient({0, 1, 2}) == -1);
  CHECK_THROWS_AS((void)wedge(e({0}), ExteriorElement::basis(3, {0})), DomainError);
}

TEST_CASE("wedge agrees with the permutation-sign oracle and is graded") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> deg(0, 3);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 5;
    const ExteriorElement a = random_element(rng, deg(rng), n), b = random_element(rng, deg(rng), n),
                          c = random_element(rng, deg(rng), n);
    REQUIRE(oracle::to_form(wedge(a, b)) == oracle::wedge(oracle::to_form(a), oracle::to_form(b)));
    const bool odd = (a.degree() * b.degree()) % 2 == 1;
    REQUIRE(wedge(a, b) == (odd ? -wedge(b, a) : wedge(b, a)));
    REQUIRE(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    const ExteriorElement b2 = random_element(rng, b.degree(), n);
    REQUIRE(wedge(a, b + b2) == wedge(a, b) + wedge(a, b2));
    REQUIRE(wedge(Integer(3) * a, b) == Integer(3) * wedge(a, b));
  }
}

TEST_CASE("top_det") {
  CHECK(top_det(ExteriorElement::basis(3, {0, 1, 2})) == 1);
  CHECK(top_det(ExteriorElement::basis(3, {1, 0, 2})) == -1);
  CHECK_THROWS_AS((void)top_det(ExteriorElement::basis(3, {0, 1})), DomainError);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 4;
    const IntMatrix m = oracle::random_matrix(rng, n, n, 5);
    ExteriorElement acc = ExteriorElement::scalar(n, 1);
    for (std::size_t j = 0; j < n; ++j) acc = wedge(acc, ExteriorElement::vector(m.column(j)));
    REQUIRE(top_det(acc) == oracle::cofactor_det(oracle::to_dense(m)));
  }
}

TEST_CASE("push_forward") {
  const ExteriorElement a = ExteriorElement::basis(2, {0, 1});
  CHECK(push_forward(a, IntMatrix::identity(2)) == a);
  CHECK(push_forward(a, IntMatrix{{0, 1}, {1, 0}}) == -a);
  CHECK_THROWS_AS((void)push_forward(a, IntMatrix(2, 3)), DomainError);

  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> e(-4, 4);
  for (int t = 0; t < 300; ++t) {
    const IntMatrix T = oracle::random_matrix(rng, 3, 4, 4), S = oracle::random_matrix(rng, 4, 4, 3);
    IntVector v(4), w(4);
    for (auto& x : v) x = e(rng);
    for (auto& x : w) x = e(rng);
    const ExteriorElement vw = wedge(ExteriorElement::vector(v), ExteriorElement::vector(w));
    REQUIRE(push_forward(vw, T) == wedge(ExteriorElement::vector(T * v), ExteriorElement::vector(T * w)));
    REQUIRE(push_forward(vw, T * S) == push_forward(push_forward(vw, S), T));
    const ExteriorElement top = random_element(rng, 4, 4);
    REQUIRE(top_det(push_forward(top, S)) == top_det(top) * determinant(S));
  }
}

}  // TEST_SUITE

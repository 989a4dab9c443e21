#include <catch2/catch_amalgamated.hpp>

#include "amp/laurent.hpp"

using namespace amp;

TEST_CASE("term bookkeeping merges and cancels", "[laurent]") {
  LaurentPoly p(1);
  p.add_term({2}, rat(1, 2));
  p.add_term({2}, rat(1, 2));
  CHECK(p.size() == 1);
  p.add_term({2}, Rat(-1));
  CHECK(p.empty());  // exact cancellation removes the term
  p.add_term({0}, Rat(0));
  CHECK(p.empty());  // zero coefficients are never stored
}

TEST_CASE("evaluation", "[laurent]") {
  LaurentPoly p(1);
  p.add_term({0}, 1);
  p.add_term({1}, 1);
  CHECK(p.eval({Cplx(2.0, 0.0)}) == Cplx(3.0, 0.0));
  CHECK(p.eval_real({2.0}) == 3.0);

  // negative exponents work (Laurent, not just polynomial)
  LaurentPoly q(1);
  q.add_term({-2}, 3);
  CHECK(q.eval_real({2.0}) == 0.75);

  LaurentPoly r(2);
  r.add_term({1, 2}, rat(1, 2));
  CHECK(r.eval_real({2.0, 3.0}) == 9.0);

  CHECK_THROWS_AS(p.eval_real({1.0, 1.0}), Error);
}

TEST_CASE("theta operator weights by exponent", "[laurent]") {
  // theta_0 (1 + x + x^2) = x + 2 x^2
  LaurentPoly q(1);
  q.add_term({0}, 1);
  q.add_term({1}, 1);
  q.add_term({2}, 1);
  LaurentPoly t = q.theta(0);
  CHECK(t.size() == 2);
  CHECK(t.eval_real({1.0}) == 3.0);
  CHECK(t.eval_real({2.0}) == 10.0);  // 2 + 2*8

  // theta_1 (x^2 y) = x^2 y ; theta_0 doubles it
  LaurentPoly m = monomial(2, {2, 1});
  CHECK(m.theta(1).eval_real({1.0, 1.0}) == 1.0);
  CHECK(m.theta(0).eval_real({1.0, 1.0}) == 2.0);
  CHECK_THROWS_AS(m.theta(5), Error);
}

TEST_CASE("arithmetic", "[laurent]") {
  LaurentPoly a(2), b(2);
  a.add_term({0, 0}, 1);
  a.add_term({1, 0}, 1);
  b.add_term({0, 0}, 1);
  b.add_term({0, 1}, 1);
  LaurentPoly prod = a * b;  // (1+x)(1+y) = 1 + x + y + xy
  CHECK(prod.size() == 4);
  CHECK(prod.eval_real({2.0, 3.0}) == 12.0);

  LaurentPoly diff = prod - prod;
  CHECK(diff.empty());

  LaurentPoly s = a + b;
  CHECK(s.size() == 3);  // constants merge
  CHECK(s.eval_real({1.0, 1.0}) == 4.0);

  CHECK(a.scaled(rat(3, 2)).eval_real({1.0, 1.0}) == 3.0);
}

TEST_CASE("support and positivity", "[laurent]") {
  LaurentPoly q(1);
  q.add_term({0}, 1);
  q.add_term({3}, rat(2, 5));
  CHECK(q.support().size() == 2);
  CHECK(q.all_coeffs_positive());
  q.add_term({1}, Rat(-1));
  CHECK_FALSE(q.all_coeffs_positive());
}

TEST_CASE("rational functions evaluate and detect poles", "[laurent]") {
  LaurentPoly num = monomial(1, {1});  // x
  LaurentPoly den(1);
  den.add_term({0}, Rat(-1));
  den.add_term({1}, Rat(2));  // 2x - 1
  RationalFn f{num, den};
  CHECK(f.eval({Cplx(1.0, 0.0)}) == Cplx(1.0, 0.0));
  CHECK_THROWS_AS(f.eval({Cplx(0.5, 0.0)}), Error);

  RationalFn g = RationalFn::poly(num);
  CHECK(g.eval({Cplx(7.0, 0.0)}) == Cplx(7.0, 0.0));
}

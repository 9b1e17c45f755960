#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "msym/cartan.hpp"
#include "msym/rng.hpp"

using namespace msym;

TEST_CASE("wedge and add_signed ordering")
{
  Poly one = Poly::constant(3, 1);
  MV d1 = mv_monomial(3, one, {1}), d2 = mv_monomial(3, one, {2});
  CHECK(wedge_mv(d1, d2) == mv_monomial(3, one, {1, 2}));
  CHECK(wedge_mv(d2, d1) == mv_scale(Rat(-1), mv_monomial(3, one, {1, 2})));
  CHECK(wedge_mv(d1, d1).is_zero());
  Form a = parse_form("dx(2)", 3), b = parse_form("dx(1)", 3);
  CHECK(wedge_form(a, b) == parse_form("-dx(1,2)", 3));
}

TEST_CASE("schouten on vector fields equals the lie bracket")
{
  // nu restricted to vector fields is the ordinary bracket
  MV x = parse_mv("x1*d(2)", 3);
  MV y = parse_mv("d(1)", 3);
  CHECK(schouten(x, y) == parse_mv("-d(2)", 3));
  CHECK(schouten(y, x) == parse_mv("d(2)", 3)); // (-1)^{|x||y|} = -1: nu(y,x) = -nu(x,y)
  // function second argument: nu(x, g) = x(g)
  MV g = parse_mv("x2^2", 3);
  CHECK(schouten(x, g) == parse_mv("2*x1*x2", 3));
  // hamiltonian-style: nu(d(1,2), x1) = d(2) deleted? frozen small oracle
  CHECK(schouten(parse_mv("d(1,2)", 3), parse_mv("x1", 3)) == parse_mv("d(2)", 3));
}

TEST_CASE("schouten graded symmetry and leibniz")
{
  SplitMix64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int dim = rng.range(2, 3);
    MV x = random_mv(rng, dim, rng.range(0, dim), 1);
    MV y = random_mv(rng, dim, rng.range(0, dim), 1);
    MV z = random_mv(rng, dim, rng.range(0, dim), 1);
    int sx = x.deg, sy = y.deg;
    MV lhs = schouten(x, y);
    MV rhs = mv_scale(Rat(((sx * sy) % 2 == 0) ? 1 : -1), schouten(y, x));
    CHECK(lhs == rhs);
    // nu(x, y^z) = nu(x,y)^z + (-1)^{(|x|-1)|y|} y^nu(x,z)
    MV l2 = schouten(x, wedge_mv(y, z));
    MV r2 = mv_add(wedge_mv(schouten(x, y), z),
                   mv_scale(Rat((((sx - 1) * sy) % 2 == 0) ? 1 : -1),
                            wedge_mv(y, schouten(x, z))));
    CHECK(l2 == r2);
  }
}

TEST_CASE("schouten agrees with the explicit decomposable formula")
{
  SplitMix64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    int dim = rng.range(2, 3);
    int n = rng.range(1, 2), m = rng.range(1, 2);
    std::vector<MV> xs, ys;
    for (int k = 0; k < n; ++k) xs.push_back(random_mv(rng, dim, 1, 2));
    for (int k = 0; k < m; ++k) ys.push_back(random_mv(rng, dim, 1, 2));
    MV x = xs[0], y = ys[0];
    for (int k = 1; k < n; ++k) x = wedge_mv(x, xs[static_cast<size_t>(k)]);
    for (int k = 1; k < m; ++k) y = wedge_mv(y, ys[static_cast<size_t>(k)]);
    CHECK(schouten(x, y) == schouten_explicit(xs, ys));
  }
}

TEST_CASE("jacobi defect vanishes")
{
  SplitMix64 rng(23);
  for (int n = 3; n <= 4; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      int dim = rng.range(2, 3);
      MVWord w;
      for (int k = 0; k < n; ++k) w.push_back(random_mv(rng, dim, rng.range(1, 2), 1));
      CHECK(jacobi_defect(w, n).is_zero());
    }
}

TEST_CASE("exterior derivative")
{
  CHECK(exterior_d(parse_form("x1*dx(2)", 3)) == parse_form("dx(1,2)", 3));
  CHECK(exterior_d(parse_form("x2*dx(1)", 3)) == parse_form("-dx(1,2)", 3));
  SplitMix64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    int dim = rng.range(2, 4);
    Form a = random_form(rng, dim, rng.range(0, dim - 1), 2);
    CHECK(exterior_d(exterior_d(a)).is_zero());
  }
}

TEST_CASE("contraction conventions")
{
  // reversed convention: i_{d1^d2}(dx1^dx2) = -1
  Form om = parse_form("dx(1,2)", 2);
  MV bi = parse_mv("d(1,2)", 2);
  Form r = contract(bi, om);
  CHECK(r == parse_form("-1", 2));
  // conventional order gives +1; relation i = (-1)^{k(k-1)/2} i-hat
  CHECK(contract_conventional(bi, om) == parse_form("1", 2));
  SplitMix64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    int dim = rng.range(2, 3);
    int k = rng.range(1, dim);
    MV x = random_mv(rng, dim, k, 1);
    Form a = random_form(rng, dim, rng.range(k, dim), 1);
    int sgn = ((k * (k - 1) / 2) % 2 == 0) ? 1 : -1;
    CHECK(contract(x, a) == form_scale(Rat(sgn), contract_conventional(x, a)));
  }
  // degree-0 multivectors multiply
  CHECK(contract(parse_mv("x1", 2), om) == parse_form("x1*dx(1,2)", 2));
}

TEST_CASE("lie derivative basics")
{
  CHECK(lie_derivative(parse_mv("d(1)", 2), parse_form("x1*dx(2)", 2)) ==
        parse_form("dx(2)", 2));
  // rotation field preserves the area form
  CHECK(lie_derivative(parse_mv("x2*d(1) - x1*d(2)", 2), parse_form("dx(1,2)", 2)).is_zero());
}

TEST_CASE("cartan identity defects vanish")
{
  SplitMix64 rng(26);
  for (int trial = 0; trial < 25; ++trial) {
    int dim = rng.range(2, 3);
    MV x = random_mv(rng, dim, rng.range(1, dim), 1);
    MV y = random_mv(rng, dim, rng.range(1, dim), 1);
    Form probe = random_form(rng, dim, rng.range(0, dim), 1);
    for (const Form& d : cartan_defects(x, y, probe)) CHECK(d.is_zero());
  }
}

TEST_CASE("lie derivative decomposition defect vanishes")
{
  SplitMix64 rng(27);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      int dim = rng.range(2, 3);
      MVWord w;
      for (int k = 0; k < n; ++k) w.push_back(random_mv(rng, dim, rng.range(1, 2), 1));
      Form probe = random_form(rng, dim, rng.range(0, dim), 1);
      CHECK(fr_defect(w, probe).is_zero());
    }
}

TEST_CASE("section parse and print roundtrip")
{
  for (const char* s : {"x1*d(2,3) + 1/2*d(1,3)", "d(1,2,3)", "-x2^2*d(3)", "x1 + x2"}) {
    MV x = parse_mv(s, 3);
    CHECK(parse_mv(mv_str(x), 3) == x);
  }
  for (const char* s : {"x1*dx(1,2) - dx(1,3)", "2/3*dx(2)"}) {
    Form a = parse_form(s, 3);
    CHECK(parse_form(form_str(a), 3) == a);
  }
  CHECK(mv_str(MV(3, 2)) == "0");
}

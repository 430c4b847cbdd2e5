// The oracle is pure linear algebra; these checks pin it against instances
// small enough to decide by hand before it is used to judge the kernel.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "macaulay.hh"

using namespace modpairs;

namespace {
SigPtr xy() { return make_sig({"x", "y"}); }
Poly P(const char* s, const SigPtr& sig) { return parse_poly(s, sig); }
}  // namespace

TEST_CASE("univariate membership") {
  auto s = make_sig({"x"});
  CHECK(oracle::member(P("x^2 - 1", s), {P("x - 1", s)}));
  CHECK(oracle::member(P("x^3", s), {P("x", s)}));
  CHECK_FALSE(oracle::member(P("1", s), {P("x - 1", s)}));
  CHECK_FALSE(oracle::member(P("x", s), {P("x^2", s)}));
  CHECK(oracle::member(P("0", s), {P("x", s)}));
}

TEST_CASE("two generators can cancel") {
  auto s = make_sig({"x"});
  // (x^2+1) - (x-1)(x+1) = 2
  CHECK(oracle::member(P("1", s), {P("x^2 + 1", s), P("x - 1", s)}));
}

TEST_CASE("bivariate membership") {
  auto s = xy();
  CHECK(oracle::member(P("x^2 + 2*x*y + y^2", s), {P("x + y", s)}));
  CHECK_FALSE(oracle::member(P("y", s), {P("x", s)}));
  CHECK(oracle::member(P("2*y", s), {P("x^2 - y", s), P("x^2 + y", s)}));
  CHECK_FALSE(oracle::member(P("x", s), {P("x*y", s), P("x^2", s)}));
}

TEST_CASE("membership needing a nontrivial cofactor degree") {
  auto s = xy();
  // y = t-elimination style: y*(x*y) - x*y^2 wants products of degree 3
  CHECK(oracle::member(P("x^2*y^2", s), {P("x*y", s)}));
  CHECK(oracle::member(P("x^3 - y^3", s), {P("x - y", s)}));
}

TEST_CASE("rational coefficients survive elimination") {
  auto s = xy();
  CHECK(oracle::member(P("1/2*x + 1/3*y", s), {P("3*x + 2*y", s), P("x", s)}));
  CHECK_FALSE(oracle::member(P("1/2*x + 1/4*y", s), {P("3*x + 2*y", s)}));
}

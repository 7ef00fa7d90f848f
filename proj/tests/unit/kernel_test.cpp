// Scalars, polynomials, and the exp/log kernel on unitriangular matrices.

#include <gtest/gtest.h>

#include "../support.hpp"

using namespace uwaring;
using uwtest::Gen;

TEST(Scalar, ParseAndPrintAreCanonical) {
  EXPECT_EQ(parse_scalar("6/4")->str(), "3/2");
  EXPECT_EQ(parse_scalar("-0/5")->str(), "0");
  EXPECT_EQ(parse_scalar("1/2+3/4*i")->str(), "1/2+3/4*i");
  EXPECT_EQ(parse_scalar("2-1*i")->str(), "2-1*i");
  EXPECT_EQ(parse_scalar("0+1*i")->str(), "0+1*i");
  EXPECT_EQ((Scalar::i() * Scalar::i()).str(), "-1");
  std::string why;
  EXPECT_FALSE(parse_scalar("1/0", &why));
  EXPECT_NE(why.find("zero denominator"), std::string::npos);
  EXPECT_FALSE(parse_scalar("abc"));
  EXPECT_FALSE(parse_scalar(""));
}

TEST(Scalar, PrintParseRoundTrip) {
  Gen g(11);
  for (int t = 0; t < 300; ++t) {
    Scalar s = g.gaussian_rational(1000);
    auto back = parse_scalar(s.str());
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, s);
    EXPECT_EQ(back->str(), s.str());
  }
}

TEST(Scalar, FieldAxiomsOnRandomGaussianRationals) {
  Gen g(12);
  for (int t = 0; t < 200; ++t) {
    Scalar a = g.gaussian_rational(50), b = g.gaussian_rational(50), c = g.gaussian_rational(50);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), Scalar(1));
    }
    EXPECT_EQ((a * a.conj()).re(), a.norm());
  }
}

TEST(GaussInt, EuclideanDivisionShrinksNorm) {
  Gen g(13);
  const EuclideanRing zi{true}, z{false};
  for (int t = 0; t < 300; ++t) {
    GaussInt a = g.gauss_int(500, true), b = g.gauss_int(40, true);
    if (b.is_zero()) continue;
    GaussInt r = a - zi.quotient(a, b) * b;
    EXPECT_LT(cmp(r.norm(), b.norm()), 0);
    EXPECT_EQ(zi.residue(a, b), zi.residue(a + GaussInt(7, -3) * b, b));
    GaussInt as = zi.associate(b);
    EXPECT_GT(sgn(as.re()), 0);
    EXPECT_GE(sgn(as.im()), 0);
    EXPECT_EQ(as.norm(), b.norm());

    GaussInt ar = g.gauss_int(500, false), br = g.gauss_int(40, false);
    if (br.is_zero()) continue;
    GaussInt rr = z.residue(ar, br);
    EXPECT_GE(sgn(rr.re()), 0);
    EXPECT_LT(cmp(rr.re(), abs(br.re())), 0);
    EXPECT_TRUE(z.divides(br, ar - rr));
  }
}

TEST(Polynomial, EvaluationIsARingHomomorphism) {
  Gen g(14);
  for (int t = 0; t < 100; ++t) {
    std::vector<Scalar> ca, cb;
    for (int i = 0; i < 4; ++i) {
      ca.push_back(g.rational(9));
      cb.push_back(g.rational(9));
    }
    Poly p(ca), q(cb);
    Scalar x = g.rational(7);
    EXPECT_EQ((p * q)(x), p(x) * q(x));
    EXPECT_EQ((p + q)(x), p(x) + q(x));
    Scalar a = g.rational(5), b = g.rational(5);
    EXPECT_EQ(p.compose_affine(a, b)(x), p(a * x + b));
  }
  EXPECT_TRUE(Poly(std::vector<Scalar>{0, 0, 0}).is_zero());
}

TEST(ExpLog, HeisenbergClosedForm) {
  // exp [[0,a,c],[0,0,b],[0,0,0]] = [[1,a,c+ab/2],[0,1,b],[0,0,1]]
  Gen g(15);
  for (int t = 0; t < 50; ++t) {
    Scalar a = g.rational(30), b = g.rational(30), c = g.rational(30);
    UniMatrix u = exp(NilMatrix::from_coords(3, std::vector<Scalar>{a, c, b}));
    EXPECT_EQ(u(0, 1), a);
    EXPECT_EQ(u(1, 2), b);
    EXPECT_EQ(u(0, 2), c + a * b / Scalar(2));
  }
}

TEST(ExpLog, RoundTrips500Cases) {
  Gen g(16);
  const RingTag rings[] = {RingTag::Q, RingTag::QI};
  for (int t = 0; t < 500; ++t) {
    const std::size_t k = 2 + g.index(4);
    const RingTag r = rings[t % 2];
    NilMatrix n = g.nil(k, r, 20);
    ASSERT_EQ(log(exp(n)), n) << n;
    UniMatrix u = exp(g.nil(k, r, 20));
    ASSERT_EQ(exp(log(u)), u);
  }
}

TEST(ExpLog, OneParameterSubgroupAndInverse) {
  Gen g(17);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 2 + g.index(4);
    NilMatrix n = g.nil(k, RingTag::Q, 10);
    Scalar s = g.rational(10), r = g.rational(10);
    EXPECT_EQ(exp(s * n) * exp(r * n), exp((s + r) * n));
    UniMatrix u = exp(n);
    EXPECT_EQ(u.inverse(), exp(-n));
    EXPECT_TRUE((u * u.inverse()).is_identity());
    // independent multiplication check
    EXPECT_EQ((u * u).matrix(), uwtest::naive_mul(u.matrix(), u.matrix()));
  }
}

TEST(ExpLog, CommutatorOfElementaryMatrices) {
  // [exp(aE12), exp(bE23)] = exp(abE13)
  UniMatrix x = exp(NilMatrix::unit(3, 0, 1, Scalar(2)));
  UniMatrix y = exp(NilMatrix::unit(3, 1, 2, Scalar(5)));
  EXPECT_EQ(group_commutator(x, y), exp(NilMatrix::unit(3, 0, 2, Scalar(10))));
}

TEST(Matrix, RejectsNonUnitriangular) {
  ScalarMatrix m = ScalarMatrix::identity(3);
  m(1, 0) = 1;
  EXPECT_THROW(UniMatrix{m}, NotUnitriangular);
  m = ScalarMatrix::identity(3);
  m(2, 2) = 2;
  EXPECT_THROW(UniMatrix{m}, NotUnitriangular);
}

TEST(Matrix, UpperCoordinatesAreRowMajor) {
  EXPECT_EQ(upper_index(4, 0, 1), 0u);
  EXPECT_EQ(upper_index(4, 0, 3), 2u);
  EXPECT_EQ(upper_index(4, 1, 2), 3u);
  EXPECT_EQ(upper_index(4, 2, 3), 5u);
  NilMatrix n = NilMatrix::unit(4, 1, 3);
  EXPECT_EQ(n.coords()[4], Scalar(1));
}

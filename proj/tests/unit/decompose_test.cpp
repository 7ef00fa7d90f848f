// Words, abelian solving, commutator descent and full decomposition.

#include <gtest/gtest.h>

#include "../support.hpp"

using namespace uwaring;
using uwtest::Gen;

namespace {

UniMatrix random_word_element(Gen& g, const MorphismFamily& fam, std::size_t len, long h) {
  Word w;
  for (std::size_t i = 0; i < len; ++i)
    w.push({g.index(fam.size()), g.element(fam.spec()->ring(), h), g.coin() ? 1 : -1});
  return eval_word(w, fam);
}

}  // namespace

TEST(Word, InverseAndReduction) {
  auto fam = uwtest::heisenberg(RingTag::Q);
  Word w({{0, Scalar(2), 1}, {1, Scalar(3), -1}, {0, Scalar(0), 1}});
  EXPECT_TRUE((eval_word(w, fam) * eval_word(w.inverse(), fam)).is_identity());
  Word r = reduce_word(w, fam.morphisms());
  EXPECT_EQ(r.length(), 2u);  // f(0) = I is dropped
  EXPECT_EQ(eval_word(r, fam), eval_word(w, fam));
  Word cancel({{0, Scalar(2), 1}, {1, Scalar(3), 1}, {1, Scalar(3), -1}, {0, Scalar(2), -1}});
  EXPECT_TRUE(reduce_word(cancel, fam.morphisms()).empty());
  EXPECT_THROW(eval_word(Word({{5, Scalar(1), 1}}), fam), IndexOutOfRange);
}

TEST(Word, TemplateMatrixMatchesInstantiation) {
  Gen g(51);
  auto u4 = uwtest::full(4, RingTag::Q);
  auto fam = uwtest::random_family(g, u4, 3, 2, 4);
  for (int t = 0; t < 20; ++t) {
    WordTemplate tpl;
    for (int i = 0; i < 4; ++i) tpl.push_back({g.index(3), g.rational(3), g.rational(3), g.coin() ? 1 : -1});
    PolyMatrix pm = template_matrix(tpl, fam.morphisms(), 4);
    Scalar x = g.rational(9);
    EXPECT_EQ(evaluate(pm, x), eval_word(instantiate(tpl, x), fam));
  }
}

TEST(Abelian, QuotientImageOfFiveMinusSeven) {
  auto fam = uwtest::heisenberg(RingTag::Q);
  auto ab = abelianize(fam);
  AbelianSolver solver(ab, RingTag::Q, Mode::Field);
  Vec<Scalar> c{5, -7};
  Word w = solver.solve(c);
  EXPECT_EQ(solver.abelian_image(w), c);
  EXPECT_EQ(fam.spec()->quotient_map(0).apply(log(eval_word(w, fam))), c);
}

TEST(Abelian, RandomTargetsRealizedExactly) {
  Gen g(52);
  for (RingTag r : {RingTag::Q, RingTag::QI}) {
    auto spec = uwtest::full(4, r);
    for (int t = 0; t < 20; ++t) {
      auto fam = uwtest::random_family(g, spec, 3, 1 + g.index(3), 5);
      auto ab = abelianize(fam);
      AbelianSolver solver(ab, r, Mode::Field);
      Vec<Scalar> c(ab.m);
      for (auto& v : c) v = g.element(r, 50);
      if (!solver.generating()) {
        EXPECT_THROW(solver.solve(c), NotGenerating);
        continue;
      }
      Word w = solver.solve(c);
      EXPECT_EQ(spec->quotient_map(0).apply(log(eval_word(w, fam))), c);
    }
  }
}

TEST(Decompose, HeisenbergE13IsTheFourFactorCommutator) {
  auto fam = uwtest::heisenberg(RingTag::Q);
  UniMatrix e13 = exp(NilMatrix::unit(3, 0, 2));
  auto d = decompose_field(e13, fam);
  EXPECT_EQ(d.word.length(), 4u);
  EXPECT_EQ(eval_word(d.word, fam), e13);
  EXPECT_LE(d.word.length(), d.bound.get_ui());
}

TEST(Decompose, IdentityGivesEmptyWord) {
  auto fam = uwtest::heisenberg(RingTag::Q);
  auto d = decompose_field(UniMatrix::identity(3), fam);
  EXPECT_TRUE(d.word.empty());
}

TEST(Decompose, NonGeneratingFamilyIsRejected) {
  auto h = uwtest::full(3, RingTag::Q);
  auto single = uwtest::family(h, {uwtest::unit_morphism(3, 0, 1)});
  EXPECT_THROW(Decomposer(single, Mode::Field), NotGenerating);
}

TEST(Decompose, TargetOutsideSubgroupIsRejected) {
  auto sub = std::make_shared<const GroupSpec>(
      3, RingTag::Q, std::vector<NilMatrix>{NilMatrix::unit(3, 0, 1), NilMatrix::unit(3, 0, 2)});
  auto fam = uwtest::family(sub, {uwtest::unit_morphism(3, 0, 1), uwtest::unit_morphism(3, 0, 2)});
  EXPECT_THROW(decompose_field(exp(NilMatrix::unit(3, 1, 2)), fam), NotInGroup);
  auto d = decompose_field(exp(NilMatrix::unit(3, 0, 2, Scalar(3))), fam);
  EXPECT_EQ(eval_word(d.word, fam), exp(NilMatrix::unit(3, 0, 2, Scalar(3))));
}

TEST(Decompose, RandomFieldTargetsRoundTripWithinBound) {
  Gen g(53);
  // argument sizes grow quickly with the derived length, so u_5 gets one
  // family over Q only
  const struct {
    RingTag ring;
    std::size_t k;
    int families;
  } cases[] = {{RingTag::Q, 3, 3}, {RingTag::Q, 4, 3}, {RingTag::Q, 5, 1}, {RingTag::QI, 3, 3}, {RingTag::QI, 4, 3}};
  for (const auto& cs : cases) {
    const RingTag r = cs.ring;
    const std::size_t k = cs.k;
    {
      auto spec = uwtest::full(k, r);
      int done = 0;
      while (done < cs.families) {
        auto fam = uwtest::random_family(g, spec, k - 1, 2, 5);
        if (!is_generating(abelianize(fam)).generating) continue;
        Decomposer dec(fam, Mode::Field);
        for (int t = 0; t < 3; ++t) {
          UniMatrix target = random_word_element(g, fam, 6, 20);
          auto d = dec.decompose(target);
          ASSERT_EQ(eval_word(d.word, fam), target);
          EXPECT_LE(cmp(mpz_class(d.word.length()), d.bound), 0);
        }
        ++done;
      }
    }
  }
}

TEST(Decompose, SubgroupSpecWithLieBasis) {
  // span{E12, E24, E14} in u_4, a Heisenberg algebra
  auto sub = std::make_shared<const GroupSpec>(
      4, RingTag::Q,
      std::vector<NilMatrix>{NilMatrix::unit(4, 0, 1), NilMatrix::unit(4, 1, 3), NilMatrix::unit(4, 0, 3)});
  auto fam = uwtest::family(sub, {uwtest::unit_morphism(4, 0, 1), uwtest::unit_morphism(4, 1, 3)});
  UniMatrix target = exp(NilMatrix::unit(4, 0, 1, Scalar(2)) + NilMatrix::unit(4, 1, 3, Scalar(-3)) +
                         NilMatrix::unit(4, 0, 3, Scalar::ratio(5, 7)));
  auto d = decompose_field(target, fam);
  EXPECT_EQ(eval_word(d.word, fam), target);
}

TEST(Decompose, IntegralArgumentsStayInTheRing) {
  Gen g(54);
  for (RingTag r : {RingTag::Z, RingTag::ZI}) {
    auto fam = uwtest::heisenberg(r);
    Decomposer dec(fam, Mode::Integral);
    for (int t = 0; t < 20; ++t) {
      UniMatrix target = random_word_element(g, fam, 6, 9);
      auto d = dec.decompose(target);
      ASSERT_EQ(eval_word(d.word, fam), target);
      for (const auto& f : d.word.factors()) {
        EXPECT_TRUE(f.arg.is_integral());
        if (r == RingTag::Z) {
          EXPECT_TRUE(f.arg.is_real());
        }
      }
    }
  }
}

TEST(Decompose, CubeMapCertifiedSubgroupIsSixZ) {
  auto line = uwtest::full(2, RingTag::Z);
  auto fam = uwtest::family(line, {uwtest::unit_morphism(2, 0, 1, 1, 3)});
  Decomposer dec(fam, Mode::Integral);
  for (long n = -30; n <= 30; n += 6) {
    UniMatrix target = exp(NilMatrix::unit(2, 0, 1, Scalar(n)));
    auto d = dec.decompose(target);
    EXPECT_EQ(eval_word(d.word, fam), target);
    EXPECT_LE(d.word.length(), 8u);
  }
  try {
    dec.decompose(exp(NilMatrix::unit(2, 0, 1, Scalar(7))));
    FAIL() << "7 is outside 6Z";
  } catch (const NotInCertifiedSubgroup& e) {
    EXPECT_EQ(e.level, 0u);
    EXPECT_EQ(e.residue, "(1)");
    EXPECT_EQ(e.divisors, "(6)");
  }
}

TEST(Decompose, IntegralModeRejectsFieldRings) {
  EXPECT_THROW(Decomposer(uwtest::heisenberg(RingTag::Q), Mode::Integral), InvalidInput);
}

TEST(Descent, CommutatorStagesProjectCorrectly) {
  // every stage-s morphism evaluates into G^(s) and its template expansion
  // reproduces it
  Gen g(55);
  auto u5 = uwtest::full(5, RingTag::Q);
  auto fam = uwtest::family(u5, {uwtest::unit_morphism(5, 0, 1), uwtest::unit_morphism(5, 1, 2),
                                 uwtest::unit_morphism(5, 2, 3), uwtest::unit_morphism(5, 3, 4)});
  Decomposer dec(fam, Mode::Field);
  EXPECT_EQ(dec.stages().size(), u5->derived_length());
  for (const auto& st : dec.stages())
    for (std::size_t j = 0; j < st.family.size(); ++j) {
      Scalar x = g.rational(7);
      UniMatrix v = st.family[j](x);
      EXPECT_TRUE(u5->contains(v, st.level));
      EXPECT_EQ(eval_word(instantiate(st.expansion[j], x), fam), v);
    }
}

TEST(Descent, LengthBoundFormula) {
  // one stage, n = 2, d = 1, T = 1: 2 * 2 * (2^1 - 1) = 4
  EXPECT_EQ(length_bound({{2, 1, 1}}), 4);
  EXPECT_EQ(length_bound({{2, 1, 1}, {1, 1, 4}}), 4 + 8);
}

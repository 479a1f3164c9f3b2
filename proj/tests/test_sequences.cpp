#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sequences.hpp"

using namespace expcrit;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("arithmetic generator produces 1..5") {
  const PointSequence s =
      PointSequence::generate(SequenceKind::arithmetic, ArithmeticParams{{1, 0}, 1.0, false}, 5);
  REQUIRE(s.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(s.points()[k].re == doctest::Approx(k + 1.0));
    CHECK(s.points()[k].im == 0.0);
  }
  CHECK(s.tail().has_value());
  CHECK(s.tail()->point_at(7).re == doctest::Approx(7.0));
}

TEST_CASE("sector generator k^2 e^{i pi/4}") {
  const PointSequence s = PointSequence::generate(
      SequenceKind::sector, SectorParams{kPi / 4, 2.0, 1.0}, 3);
  REQUIRE(s.size() == 3);
  const double c = std::cos(kPi / 4);
  CHECK(s.points()[0].re == doctest::Approx(c));
  CHECK(s.points()[1].re == doctest::Approx(4 * c));
  CHECK(s.points()[2].re == doctest::Approx(9 * c));
  for (const ComplexPoint& p : s.points())
    CHECK(std::fabs(p.argument()) == doctest::Approx(kPi / 4));
}

TEST_CASE("lacunary generator base 2") {
  const PointSequence s =
      PointSequence::generate(SequenceKind::lacunary, LacunaryParams{2.0, 1.0}, 4);
  REQUIRE(s.size() == 4);
  CHECK(s.points()[0].re == 2.0);
  CHECK(s.points()[3].re == 16.0);
}

TEST_CASE("zero points are rejected with the offending index") {
  // arithmetic with offset 0 puts lambda_1 = 0
  CHECK_THROWS_WITH_AS(
      PointSequence::generate(SequenceKind::arithmetic,
                              ArithmeticParams{{0, 0}, 1.0, false}, 3),
      doctest::Contains("index 1"), std::invalid_argument);
  // perturbed integers with amplitude 1 cancel at k = 1
  CHECK_THROWS_WITH_AS(
      PointSequence::generate(SequenceKind::perturbed_integers,
                              PerturbedIntegersParams{1.0, 2.0}, 3),
      doctest::Contains("index 1"), std::invalid_argument);
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(PointSequence::generate(SequenceKind::sector,
                                          SectorParams{2.0, 2.0, 1.0}, 3),
                  std::invalid_argument);  // angle > pi/2
  CHECK_THROWS_AS(PointSequence::generate(SequenceKind::lacunary,
                                          LacunaryParams{0.5, 1.0}, 3),
                  std::invalid_argument);  // base <= 1
  CHECK_THROWS_AS(PointSequence::generate(SequenceKind::arithmetic,
                                          ArithmeticParams{{1, 0}, -1.0, false}, 3),
                  std::invalid_argument);  // step <= 0
  CHECK_THROWS_AS(PointSequence::generate(SequenceKind::arithmetic,
                                          ArithmeticParams{{1, 0}, 1.0, false}, 0),
                  std::invalid_argument);  // count < 1
}

TEST_CASE("symmetric arithmetic interleaves +/- pairs in stored order") {
  const PointSequence s = PointSequence::generate(
      SequenceKind::arithmetic, ArithmeticParams{{1, 0}, 1.0, true}, 6);
  REQUIRE(s.size() == 6);
  CHECK(s.points()[0].re == 1.0);
  CHECK(s.points()[1].re == -1.0);
  CHECK(s.points()[4].re == 3.0);
  CHECK(s.points()[5].re == -3.0);
}

TEST_CASE("stored order is increasing modulus with argument ties") {
  const PointSequence s = PointSequence::from_points(
      {{3, 0}, {1, 0}, {-2, 0}, {0, 2}, {2, 0}});
  CHECK(s.points()[0].re == 1.0);
  CHECK(s.min_modulus() == 1.0);
  // modulus-2 block ordered by argument: arg 0 < pi/2 < pi
  CHECK(s.points()[1].re == 2.0);
  CHECK(s.points()[2].im == 2.0);
  CHECK(s.points()[3].re == -2.0);
  CHECK(s.points()[4].re == 3.0);
}

TEST_CASE("normalize_shift replaces points and records provenance") {
  const PointSequence s = PointSequence::from_points({{1, 0}, {2, 0}, {3, 0}});
  const PointSequence t = s.normalize_shift({{2, {2, 1}}});
  REQUIRE(t.size() == 3);
  bool found = false;
  for (const ComplexPoint& p : t.points())
    if (p.re == 2.0 && p.im == 1.0) found = true;
  CHECK(found);
  CHECK(t.notes().size() == 2);

  // identity on empty shifts
  const PointSequence u = s.normalize_shift({});
  CHECK(u.points() == s.points());
  CHECK(u.notes().empty());

  // shifting onto the origin is refused
  CHECK_THROWS_AS(s.normalize_shift({{1, {0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(s.normalize_shift({{9, {1, 1}}}), std::invalid_argument);
}

TEST_CASE("count_in covers disks, rectangles and multiplicity") {
  const CountingMeasure m(PointSequence::from_points({{1, 0}, {1, 0}, {2, 0}, {3, 0}}));
  CHECK(m.count_in(DiskRegion{{0, 0}, 2.5}) == 3);
  CHECK(m.count_in(DiskRegion{{1, 0}, 0.1}) == 2);  // repeated point counts twice
  CHECK(m.count_in(RectRegion{1.5, 3.5, -1, 1}) == 2);
  CHECK(m.count_in(RectRegion{2, 1, -1, 1}) == 0);  // empty region
  CHECK_THROWS_AS(m.count_in(DiskRegion{{0, 0}, -1.0}), std::invalid_argument);
}

TEST_CASE("count_in is additive over disjoint regions") {
  const PointSequence s = PointSequence::generate(
      SequenceKind::arithmetic, ArithmeticParams{{1, 0}, 1.0, false}, 20);
  const CountingMeasure m(s);
  const std::size_t left = m.count_in(RectRegion{0, 10.5, -1, 1});
  const std::size_t right = m.count_in(RectRegion{10.5, 20.5, -1, 1});
  CHECK(left + right == m.count_in(RectRegion{0, 20.5, -1, 1}));
}

TEST_CASE("sector tail bound brackets the true remainder") {
  const PointSequence s = PointSequence::generate(
      SequenceKind::sector, SectorParams{kPi / 4, 2.0, 1.0}, 100);
  const auto tb = s.tail()->im_inv_tail(100);
  CHECK(tb.kind == TailDescriptor::TailBound::Kind::closed_form);
  // true tail: sin(pi/4) * sum_{k>100} k^-2 in (sin(a)/101, sin(a)/100)
  const double sina = std::sin(kPi / 4);
  CHECK(tb.value >= sina / 101.0);
  CHECK(tb.value <= sina / 100.0 * 1.01);
}

TEST_CASE("real generators have exactly zero imaginary tail") {
  const PointSequence s = PointSequence::generate(
      SequenceKind::perturbed_integers, PerturbedIntegersParams{0.5, 2.0}, 50);
  CHECK(s.tail()->im_inv_tail(50).kind ==
        TailDescriptor::TailBound::Kind::exact_zero);
  CHECK(s.tail()->poisson_kernel_tail(50, 10.0).kind ==
        TailDescriptor::TailBound::Kind::exact_zero);
}

TEST_CASE("sector with law_power <= 1 has a divergent series") {
  const PointSequence s = PointSequence::generate(
      SequenceKind::sector, SectorParams{kPi / 4, 1.0, 1.0}, 10);
  CHECK(s.tail()->im_inv_tail(10).kind ==
        TailDescriptor::TailBound::Kind::divergent);
}

TEST_CASE("explicit sequences reject zero and non-finite points") {
  CHECK_THROWS_AS(PointSequence::from_points({{1, 0}, {0, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PointSequence::from_points({{1, std::nan("")}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PointSequence::from_points({}), std::invalid_argument);
}

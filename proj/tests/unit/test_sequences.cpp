#include "doctest.h"

#include <cmath>

#include "discframe/discframe.hpp"
#include "helpers.hpp"

using namespace discframe;
using testutil::Cplx;
using testutil::pt;
using testutil::raises;

TEST_CASE("geometric family instantiates the formula exactly") {
  const DiscSequence<double> seq = generate(geometric_spec(0.5, 3));
  REQUIRE(seq.size() == 3);
  CHECK(seq.points[0] == pt(0.5));
  CHECK(seq.points[1] == pt(0.75));
  CHECK(seq.points[2] == pt(0.875));
  CHECK(seq.label == "geometric(0.5)");
}

TEST_CASE("polynomial family instantiates the formula exactly") {
  const DiscSequence<double> seq = generate(polynomial_spec(2.0, 3));
  REQUIRE(seq.size() == 3);
  CHECK(seq.points[0] == pt(0.0));
  CHECK(seq.points[1] == pt(0.75));
  CHECK(seq.points[2].real() == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("phased family keeps geometric moduli with stepped arguments") {
  const double phi = 0.7;
  const DiscSequence<double> seq = generate(phased_spec(0.5, phi, 5));
  for (Index k = 0; k < 5; ++k) {
    const Cplx z = seq.points[static_cast<std::size_t>(k)];
    CHECK(std::abs(z) ==
          doctest::Approx(1.0 - std::pow(0.5, double(k + 1))).epsilon(1e-14));
    CHECK(std::arg(z) ==
          doctest::Approx(std::remainder(phi * double(k + 1), 6.283185307179586))
              .epsilon(1e-12));
  }
}

TEST_CASE("invalid specs are refused") {
  CHECK(raises(errc::invalid_spec, [] { generate(geometric_spec(1.5, 4)); }));
  CHECK(raises(errc::invalid_spec, [] { generate(geometric_spec(0.0, 4)); }));
  CHECK(raises(errc::invalid_spec, [] { generate(polynomial_spec(1.0, 4)); }));
  CHECK(raises(errc::invalid_spec, [] { generate(geometric_spec(0.5, 0)); }));
  CHECK(raises(errc::invalid_spec, [] {
    generate(explicit_spec(std::vector<Cplx>{}));
  }));
  // Explicit lists go through full disc validation.
  CHECK(raises(errc::point_outside_disc, [] {
    generate(explicit_spec(std::vector<Cplx>{pt(1.2)}));
  }));
  CHECK(raises(errc::near_collision, [] {
    generate(explicit_spec(std::vector<Cplx>{pt(0.5), pt(0.5)}));
  }));
}

TEST_CASE("admissibility: geometric tail is a geometric series bound") {
  const auto report = admissibility_check(geometric_spec(0.5, 10), 10);
  CHECK(report.partial_sum ==
        doctest::Approx(1.6647138595581055).epsilon(1e-14));
  CHECK(report.tail_bound == doctest::Approx(0.001953125).epsilon(1e-15));
  CHECK(report.admissible);
  CHECK(report.partial_sum + report.tail_bound <= 2.0);
}

TEST_CASE("admissibility: polynomial tail via integral comparison") {
  const auto report = admissibility_check(polynomial_spec(2.0, 10), 10);
  CHECK(report.partial_sum ==
        doctest::Approx(2.0174988788393248).epsilon(1e-14));
  CHECK(report.tail_bound == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(report.admissible);
  // Full sum is below the comparison constant pi^2/3.
  CHECK(report.partial_sum + report.tail_bound <= 3.2898681336964529);
}

TEST_CASE("admissibility: explicit lists have a zero tail") {
  const auto report =
      admissibility_check(explicit_spec(std::vector<Cplx>{pt(0.9)}), 1);
  CHECK(report.partial_sum == doctest::Approx(0.19).epsilon(1e-14));
  CHECK(report.tail_bound == 0.0);
  CHECK(report.admissible);
}

TEST_CASE("ratio condition: two-factor supremum against reference values") {
  const DiscSequence<double> a{{pt(0.99)}, "a"};
  const DiscSequence<double> b = generate(geometric_spec(0.5, 8));
  const auto cond = ratio_condition_constant(a, b);
  CHECK(cond.c_hat == doctest::Approx(0.78193832599118943).epsilon(1e-13));
  CHECK(cond.satisfied);
}

TEST_CASE("ratio condition: zero factor degenerates every ratio to one") {
  const DiscSequence<double> a{{pt(0.0)}, "zero"};
  const DiscSequence<double> b = generate(geometric_spec(0.5, 6));
  const auto cond = ratio_condition_constant(a, b);
  CHECK(cond.c_hat == 1.0);
  CHECK_FALSE(cond.satisfied);
}

TEST_CASE("ratio condition: single-factor reading of geometric equals the base") {
  for (Index K : {2, 5, 12}) {
    const auto cond =
        ratio_condition_constant(generate(geometric_spec(0.5, K)));
    CHECK(cond.c_hat == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cond.satisfied);
  }
}

TEST_CASE("ratio condition: polynomial ratios increase toward one") {
  const DiscSequence<double> seq = generate(polynomial_spec(2.0, 12));
  double prev = 0.0;
  for (std::size_t l = 0; l + 1 < seq.points.size(); ++l) {
    const double r = (1.0 - std::abs(seq.points[l + 1])) /
                     (1.0 - std::abs(seq.points[l]));
    CHECK(r > prev);
    CHECK(r == doctest::Approx(std::pow(double(l + 1) / double(l + 2), 2.0))
                   .epsilon(1e-13));
    prev = r;
  }
}

TEST_CASE("ratio condition: identical geometric factors pass, polynomial fail") {
  const DiscSequence<double> geo = generate(geometric_spec(0.5, 12));
  const auto geo_cond = ratio_condition_constant(geo, geo);
  CHECK(geo_cond.c_hat == doctest::Approx(0.9997559785261103).epsilon(1e-13));
  CHECK(geo_cond.satisfied);

  const DiscSequence<double> poly = generate(polynomial_spec(2.0, 12));
  const auto poly_cond = ratio_condition_constant(poly, poly);
  CHECK(poly_cond.c_hat == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(poly_cond.satisfied);
}

TEST_CASE("ratio condition refuses a second factor with fewer than two points") {
  CHECK(raises(errc::sequence_too_short, [] {
    const DiscSequence<double> a{{pt(0.5)}, "a"};
    const DiscSequence<double> b{{pt(0.3)}, "b"};
    ratio_condition_constant(a, b);
  }));
}

TEST_CASE("certified product bound: small base makes the partial approach one") {
  const auto bound = certified_product_lower_bound(1e-8, 1);
  CHECK(bound.partial == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(bound.certified() > 0.99999);
}

TEST_CASE("certified product bound: reference values") {
  // Reference values computed independently with 50-digit arithmetic.
  const auto b1 = certified_product_lower_bound(0.5, 1);
  CHECK(b1.partial == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(b1.tail_factor_bound ==
        doctest::Approx(0.049787068367863943).epsilon(1e-14));
  CHECK(b1.certified() ==
        doctest::Approx(0.0055318964853182159).epsilon(1e-13));

  const auto b50 = certified_product_lower_bound(0.5, 50);
  CHECK(b50.certified() ==
        doctest::Approx(0.014671073764252361).epsilon(1e-13));

  CHECK(certified_product_lower_bound(0.3, 50).certified() ==
        doctest::Approx(0.17318968045688127).epsilon(1e-13));
  CHECK(certified_product_lower_bound(0.7, 50).certified() ==
        doctest::Approx(3.4532199938471455e-05).epsilon(1e-12));

  const auto b9 = certified_product_lower_bound(0.9, 200);
  CHECK(b9.partial == doctest::Approx(5.4368900893264827e-19).epsilon(1e-12));
  CHECK(b9.tail_factor_bound ==
        doctest::Approx(0.99999996190257354).epsilon(1e-14));
  CHECK(b9.certified() > 0.0);
}

TEST_CASE("certified product bound: partial is monotone non-increasing") {
  double prev = 1.0;
  for (int n : {2, 5, 10, 20, 40}) {
    const auto bound = certified_product_lower_bound(0.6, n);
    CHECK(bound.partial <= prev);
    CHECK(bound.certified() > 0.0);
    CHECK(bound.certified() <= bound.partial);
    prev = bound.partial;
  }
}

TEST_CASE("certified product bound: parameter guards") {
  CHECK(raises(errc::invalid_param,
               [] { certified_product_lower_bound(1.2, 10); }));
  CHECK(raises(errc::invalid_param,
               [] { certified_product_lower_bound(0.5, 0); }));
  // Large bases need enough explicit terms for the tail estimate to apply.
  CHECK(raises(errc::invalid_param,
               [] { certified_product_lower_bound(0.9, 2); }));
}

TEST_CASE("sufficiency direction: separation infima sit above the certified bound") {
  for (double c : {0.3, 0.5, 0.7}) {
    const double floor = certified_product_lower_bound(c, 50).certified();
    for (Index K = 2; K <= 16; ++K) {
      const auto inf = carleson_infimum(generate(geometric_spec(c, K)));
      CHECK(inf.value >= floor);
    }
  }
}

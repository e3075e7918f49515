#include <catch2/catch_amalgamated.hpp>

#include "twogen/orders.hpp"

using namespace twogen;

TEST_CASE("extended orders format and compare") {
  CHECK(ExtendedOrder::finite(5).str() == "5");
  CHECK(ExtendedOrder::inf().str() == "inf");
  CHECK(ExtendedOrder::inf_bar().str() == "infbar");
  CHECK(ExtendedOrder::finite(5) == ExtendedOrder::finite(5));
  CHECK_FALSE(ExtendedOrder::finite(5) == ExtendedOrder::finite(7));
  CHECK_FALSE(ExtendedOrder::inf() == ExtendedOrder::inf_bar());
  CHECK_THROWS_AS(ExtendedOrder::finite(1), std::invalid_argument);
}

TEST_CASE("extended order parity") {
  CHECK(ExtendedOrder::finite(3).is_odd());
  CHECK_FALSE(ExtendedOrder::finite(4).is_odd());
  CHECK_FALSE(ExtendedOrder::inf().is_odd());
  CHECK_FALSE(ExtendedOrder::inf_bar().is_odd());
  CHECK(ExtendedOrder::finite(4).is_even_or_infinite());
  CHECK(ExtendedOrder::inf().is_even_or_infinite());
  CHECK_FALSE(ExtendedOrder::finite(9).is_even_or_infinite());
}

TEST_CASE("extended order exact division") {
  auto h = ExtendedOrder::finite(6).divided_by(2);
  REQUIRE(h);
  CHECK(*h == ExtendedOrder::finite(3));
  CHECK_FALSE(ExtendedOrder::finite(5).divided_by(2));
  CHECK_FALSE(ExtendedOrder::finite(4).divided_by(4));  // quotient below 2
  CHECK(*ExtendedOrder::inf().divided_by(2) == ExtendedOrder::inf());
  CHECK(*ExtendedOrder::inf_bar().divided_by(2) == ExtendedOrder::inf_bar());
  CHECK_FALSE(ExtendedOrder::finite(6).divided_by(0));
  CHECK(ExtendedOrder::finite(10).halved() == ExtendedOrder::finite(5));
  CHECK_THROWS_AS(ExtendedOrder::finite(7).halved(), std::logic_error);
}

TEST_CASE("half-lengths carry cosh and order") {
  HalfLength e5 = HalfLength::elliptic(5);
  CHECK(e5.cosh_u() == Catch::Approx(std::cos(kPi / 5)).epsilon(1e-15));
  CHECK(e5.t() == ExtendedOrder::finite(5));
  CHECK(e5.str() == "pi/5");

  HalfLength par = HalfLength::parabolic();
  CHECK(par.cosh_u() == 1.0);
  CHECK(par.t() == ExtendedOrder::inf());
  CHECK(par.str() == "par");

  HalfLength hyp = HalfLength::hyperbolic(1.5);
  CHECK(hyp.cosh_u() == Catch::Approx(std::cosh(1.5)).epsilon(1e-15));
  CHECK(hyp.t() == ExtendedOrder::inf_bar());
  CHECK(hyp.str() == "hyp:1.5");

  CHECK_THROWS_AS(HalfLength::elliptic(1), std::invalid_argument);
  CHECK_THROWS_AS(HalfLength::hyperbolic(0.0), std::invalid_argument);
  CHECK_THROWS_AS(HalfLength::hyperbolic(-1.0), std::invalid_argument);
}

TEST_CASE("element class from beta") {
  CHECK(classify_element({0.0, 0.0}) == ElementClass::Parabolic);
  CHECK(classify_element({-2.0, 0.0}) == ElementClass::Elliptic);
  CHECK(classify_element({-4.0, 0.0}) == ElementClass::Elliptic);
  CHECK(classify_element({3.0, 0.0}) == ElementClass::Hyperbolic);
  CHECK(classify_element({-5.0, 0.0}) == ElementClass::PiLoxodromic);
  CHECK(classify_element({-2.0, 0.5}) == ElementClass::StrictlyLoxodromic);
}

TEST_CASE("elliptic beta recognition finds reduced rotations") {
  double b72 = -4.0 * std::pow(std::sin(2.0 * kPi / 7), 2);
  auto r = recognize_elliptic_beta({b72, 0.0});
  REQUIRE(r);
  CHECK(r->first == 7);
  CHECK(r->second == 2);

  r = recognize_elliptic_beta({-3.0, 0.0});
  REQUIRE(r);
  CHECK(r->first == 3);
  CHECK(r->second == 1);

  r = recognize_elliptic_beta({-4.0, 0.0});
  REQUIRE(r);
  CHECK(r->first == 2);
  CHECK(r->second == 1);

  CHECK_FALSE(recognize_elliptic_beta({-1.234567, 0.0}));
  CHECK_FALSE(recognize_elliptic_beta({0.5, 0.0}));
  CHECK_FALSE(recognize_elliptic_beta({-2.0, 0.5}));
}

TEST_CASE("elliptic frontier is the primitive accumulation gap") {
  CHECK(elliptic_beta_near_frontier({-1e-5, 0.0}));
  CHECK_FALSE(elliptic_beta_near_frontier({-1.234567, 0.0}));
  CHECK_FALSE(elliptic_beta_near_frontier({-3.0, 0.0}));
  double b300 = -4.0 * std::pow(std::sin(kPi / 300), 2);
  CHECK(elliptic_beta_near_frontier({b300, 0.0}));
  CHECK_FALSE(elliptic_beta_near_frontier({b300, 0.0}, 400));
}

TEST_CASE("half-length recognition in both cosh forms") {
  auto u = recognize_half_length(std::cos(kPi / 7), CoshForm::Cosh);
  REQUIRE(u);
  CHECK(*u == HalfLength::elliptic(7));

  u = recognize_half_length(1.0, CoshForm::Cosh);
  REQUIRE(u);
  CHECK(u->kind == HalfLength::Kind::Parabolic);

  u = recognize_half_length(1.3, CoshForm::Cosh);
  REQUIRE(u);
  CHECK(u->kind == HalfLength::Kind::Hyperbolic);
  CHECK(u->d == Catch::Approx(std::acosh(1.3)).epsilon(1e-12));

  u = recognize_half_length(std::pow(std::cos(kPi / 5), 2), CoshForm::CoshSquared);
  REQUIRE(u);
  CHECK(*u == HalfLength::elliptic(5));

  u = recognize_half_length(2.0, CoshForm::CoshSquared);
  REQUIRE(u);
  CHECK(u->d == Catch::Approx(std::acosh(std::sqrt(2.0))).epsilon(1e-12));

  CHECK_FALSE(recognize_half_length(0.4321, CoshForm::Cosh));
}

TEST_CASE("half-length frontier below the parabolic limit") {
  CHECK(half_length_near_frontier(0.9999, CoshForm::Cosh));
  CHECK_FALSE(half_length_near_frontier(0.5, CoshForm::Cosh));
  CHECK_FALSE(half_length_near_frontier(1.5, CoshForm::Cosh));
  CHECK(half_length_near_frontier(0.9999, CoshForm::CoshSquared));
}

TEST_CASE("rescaling constant") {
  CHECK(c_constant(1, ExtendedOrder::finite(7)) == Catch::Approx(1.0).epsilon(1e-15));
  double c25 = std::pow(std::sin(2.0 * kPi / 5) / std::sin(kPi / 5), 2);
  CHECK(c_constant(2, ExtendedOrder::finite(5)) == Catch::Approx(c25).epsilon(1e-15));
  CHECK(c_constant(2, ExtendedOrder::finite(5)) > 1.0);
  CHECK(c_constant(1, ExtendedOrder::inf()) == 1.0);
  CHECK_THROWS_AS(c_constant(2, ExtendedOrder::inf()), std::invalid_argument);
  CHECK_THROWS_AS(c_constant(1, ExtendedOrder::inf_bar()), std::invalid_argument);
  CHECK_THROWS_AS(c_constant(3, ExtendedOrder::finite(5)), std::invalid_argument);
  CHECK_THROWS_AS(c_constant(0, ExtendedOrder::finite(5)), std::invalid_argument);
}

TEST_CASE("double formatting is stable") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-4.0) == "-4");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
}

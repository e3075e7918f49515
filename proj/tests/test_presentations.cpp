#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "twogen/presentations.hpp"

using namespace twogen;

namespace {

HalfLength ell(int p) { return HalfLength::elliptic(p); }

std::vector<std::string> read_lines(const std::string& name) {
  std::string path = std::string(TWOGEN_GOLDEN_DIR) + "/" + name;
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void check_golden(const std::string& file, const Presentation& p) {
  std::vector<std::string> lines = read_lines(file);
  REQUIRE(lines.size() == 3);
  CHECK(p.name() == lines[0]);
  CHECK(render_presentation(p, RenderMode::Kleinian) == lines[1]);
  CHECK(render_presentation(p, RenderMode::Abstract) == lines[2]);
}

}  // namespace

TEST_CASE("parity dispatch selects the family") {
  Presentation ph = presentation_for(ell(4), ell(3));
  CHECK(ph.kind == PresKind::PH);
  CHECK(ph.slot_m == ExtendedOrder::finite(2));
  CHECK(ph.slot_q == ExtendedOrder::finite(3));

  Presentation s2 = presentation_for(ell(6), ell(4));
  CHECK(s2.kind == PresKind::S2);
  CHECK(s2.slot_m == ExtendedOrder::finite(3));
  CHECK(s2.slot_q == ExtendedOrder::finite(2));

  Presentation p = presentation_for(ell(3), ell(5));
  CHECK(p.kind == PresKind::P);
  CHECK(p.slot_m == ExtendedOrder::finite(3));
  CHECK(p.slot_q == ExtendedOrder::finite(5));

  Presentation g = presentation_for(ell(3), HalfLength::hyperbolic(0.4));
  CHECK(g.kind == PresKind::GTet1);
  CHECK(g.slot_m == ExtendedOrder::finite(3));
  CHECK(g.slot_q == ExtendedOrder::inf_bar());

  Presentation pp = presentation_for(HalfLength::parabolic(), ell(3));
  CHECK(pp.kind == PresKind::PH);
  CHECK(pp.slot_m == ExtendedOrder::inf());
  CHECK(pp.name() == "PH[inf,inf;3]");

  Presentation ss = presentation_for(HalfLength::parabolic(), HalfLength::parabolic());
  CHECK(ss.kind == PresKind::S2);
  CHECK(ss.slot_m == ExtendedOrder::inf());
  CHECK(ss.slot_q == ExtendedOrder::inf());
}

TEST_CASE("small orders are rejected") {
  CHECK_THROWS_AS(presentation_for(ell(2), ell(3)), std::invalid_argument);
  CHECK_THROWS_AS(presentation_for(ell(4), ell(2)), std::invalid_argument);
}

TEST_CASE("golden renders match") {
  check_golden("ph.txt", presentation_for(ell(4), ell(3)));
  check_golden("s2.txt", presentation_for(ell(6), ell(4)));
  check_golden("p.txt", presentation_for(ell(3), ell(5)));
  check_golden("gtet1.txt", presentation_for(ell(3), HalfLength::hyperbolic(0.4)));
}

TEST_CASE("kleinian text parses back exactly") {
  std::vector<Presentation> cases = {
      presentation_for(ell(4), ell(3)),
      presentation_for(ell(6), ell(4)),
      presentation_for(ell(3), ell(5)),
      presentation_for(ell(3), HalfLength::hyperbolic(0.4)),
      presentation_for(HalfLength::parabolic(), ell(7)),
      presentation_for(ell(8), HalfLength::parabolic()),
  };
  for (const Presentation& p : cases) {
    std::string text = render_presentation(p, RenderMode::Kleinian);
    ParsedPresentation back = parse_presentation(text);
    CHECK(back.mode == RenderMode::Kleinian);
    CHECK(back.pres == p);
    CHECK(render_presentation(back.pres, RenderMode::Kleinian) == text);
  }
}

TEST_CASE("abstract text parses back for finite slots") {
  Presentation p = presentation_for(ell(6), ell(5));
  std::string text = render_presentation(p, RenderMode::Abstract);
  ParsedPresentation back = parse_presentation(text);
  CHECK(back.mode == RenderMode::Abstract);
  CHECK(back.pres == p);
}

TEST_CASE("abstract text reads dropped slots as unconstrained") {
  Presentation p = presentation_for(ell(4), HalfLength::parabolic());
  ParsedPresentation back =
      parse_presentation(render_presentation(p, RenderMode::Abstract));
  CHECK(back.pres.slot_q == ExtendedOrder::inf_bar());
}

TEST_CASE("malformed text is rejected") {
  CHECK_THROWS_AS(parse_presentation("x,y,s | x=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_presentation("⟨a,b | a^2=1⟩"), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "slantgeom/error.hpp"
#include "slantgeom/fixtures.hpp"
#include "slantgeom/manifest.hpp"

using namespace slantgeom;

namespace {

const char* kFlat = R"(# flat
[chart]
coordinates = x, y, z

[metric]
g11 = -1
g22 = 1
g33 = 1

[phi]
phi12 = 1
phi21 = 1

[xi]
xi1 = 0
xi2 = 0
xi3 = 1

[eta]
eta1 = 0
eta2 = 0
eta3 = 1

[curve.line]
x = 0
y = t
z = t/2
interval = (-1, 1)
)";

// Replaces the first occurrence of `from`.
std::string edit(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

std::size_t error_line(const std::string& text) {
  try {
    parse_manifest(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return 0;
}

double max_gap(const ParacontactStructure& a, const ParacontactStructure& b) {
  double gap = 0;
  for (const Vec3& p : sample_points(a.chart(), {.count = 20, .tol = 1e-9, .seed = 3, .override_box = false, .box = {}})) {
    const Binding x = a.chart().bind(p);
    for (int i = 0; i < 3; ++i) {
      gap = std::max({gap, std::fabs(evaluate(a.xi()[i], x) - evaluate(b.xi()[i], x)),
                      std::fabs(evaluate(a.eta()[i], x) - evaluate(b.eta()[i], x))});
      for (int j = 0; j < 3; ++j)
        gap = std::max({gap, std::fabs(evaluate(a.metric()[i][j], x) - evaluate(b.metric()[i][j], x)),
                        std::fabs(evaluate(a.phi()[i][j], x) - evaluate(b.phi()[i][j], x))});
    }
  }
  return gap;
}

}  // namespace

TEST(Manifest, ParsesAStructureWithCurves) {
  const Manifest m = parse_manifest(kFlat);
  EXPECT_EQ(m.curve_names(), std::vector<std::string>{"line"});
  EXPECT_EQ(max_gap(*m.structure, *fixtures::flat()), 0.0);
  const Curve c = m.curve("line");
  EXPECT_EQ(c.interval().lo, -1.0);
  EXPECT_EQ(c.point(0.5), Vec3(0, 0.5, 0.25));
  EXPECT_THROW(m.curve("nope"), Error);
}

TEST(Manifest, DumpParsesBackToTheSameStructure) {
  for (const auto& s : {fixtures::example1(), fixtures::example2(), fixtures::flat()}) {
    const Manifest back = parse_manifest(dump_manifest(*s));
    EXPECT_LT(max_gap(*s, *back.structure), 1e-13);
    EXPECT_EQ(back.structure->chart().coordinates, s->chart().coordinates);
    EXPECT_EQ(back.structure->chart().domain.size(), s->chart().domain.size());
  }
  const std::vector<Curve> curves{fixtures::curve_a(), fixtures::curve_b(), fixtures::curve_c()};
  const Manifest back = parse_manifest(dump_manifest(*fixtures::example1(), curves));
  ASSERT_EQ(back.curves.size(), 3u);
  for (const Curve& c : curves) {
    const Curve d = back.curve(c.name());
    EXPECT_EQ(d.interval().lo, c.interval().lo);
    EXPECT_EQ(d.interval().hi, c.interval().hi);
    for (double s : c.grid_parameters(5)) EXPECT_LT((d.point(s) - c.point(s)).norm(), 1e-13);
  }
}

TEST(Manifest, BundledFilesLoad) {
  const std::string dir = SLANTGEOM_DATA;
  const Manifest e1 = load_manifest(dir + "/example1.manifest");
  EXPECT_LT(max_gap(*e1.structure, *fixtures::example1()), 1e-14);
  EXPECT_EQ(e1.curve_names(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_LT((e1.curve("c").point(2.0) - fixtures::curve_c().point(2.0)).norm(), 1e-13);
  const Manifest e2 = load_manifest(dir + "/example2.manifest");
  EXPECT_LT(max_gap(*e2.structure, *fixtures::example2()), 1e-14);
  const Manifest fl = load_manifest(dir + "/flat.manifest");
  EXPECT_LT(max_gap(*fl.structure, *fixtures::flat()), 1e-14);
  EXPECT_EQ(fl.curve_names(), (std::vector<std::string>{"helix", "null"}));
}

TEST(Manifest, MissingFileIsAParseError) {
  try {
    load_manifest("/nonexistent/x.manifest");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 0u);
  }
}

TEST(Manifest, ErrorsAreLocated) {
  const std::string base = kFlat;
  EXPECT_EQ(error_line(edit(base, "g33 = 1", "g44 = 1")), 8u);
  EXPECT_EQ(error_line(edit(base, "g22 = 1", "g22 = 1 +")), 7u);
  EXPECT_EQ(error_line(edit(base, "g22 = 1\n", "g22 = 1\ng12 = 0\ng21 = x\n")), 9u);
  EXPECT_EQ(error_line(edit(base, "interval = (-1, 1)", "interval = (1, -1)")), 28u);
  EXPECT_EQ(error_line(edit(base, "interval = (-1, 1)", "interval = -1, 1")), 28u);
  EXPECT_EQ(error_line(edit(base, "z = t/2", "z = t/2 + x")), 27u);
  EXPECT_EQ(error_line(edit(base, "[phi]", "[psi]")), 10u);
  EXPECT_EQ(error_line(edit(base, "xi3 = 1\n", "")), 14u);
  EXPECT_EQ(error_line(edit(base, "g11 = -1", "g11 = 0")), 5u);
  EXPECT_EQ(error_line(edit(base, "g22 = 1", "g22 1")), 7u);
  EXPECT_EQ(error_line(edit(base, "coordinates = x, y, z", "coordinates = x, y")), 3u);
  EXPECT_EQ(error_line(edit(base, "g33 = 1", "g33 = 1\ng33 = 2")), 9u);
}

TEST(Manifest, CommentsAndBlankLinesAreIgnored) {
  const std::string text = edit(kFlat, "g22 = 1", "  g22 = 1   # spacelike\n\n# note");
  EXPECT_EQ(max_gap(*parse_manifest(text).structure, *fixtures::flat()), 0.0);
}

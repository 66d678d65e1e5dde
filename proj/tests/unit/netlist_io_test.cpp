#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "poissonplace/bookshelf.hpp"
#include "poissonplace/synthetic.hpp"

namespace pp = poissonplace;
namespace fs = std::filesystem;

namespace {

const fs::path kTiny = fs::path(POISSONPLACE_FIXTURES) / "tiny4" / "tiny4.aux";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "poissonplace_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Bookshelf, ParsesTinyFixtureCounts) {
  const auto c = pp::parse_bookshelf(kTiny);
  EXPECT_EQ(c.blocks.size(), 4u);
  EXPECT_EQ(c.nets.size(), 2u);
  EXPECT_EQ(c.num_pins(), 5u);
  EXPECT_EQ(c.num_movable(), 2u);
  EXPECT_EQ(c.num_fixed(), 2u);
  EXPECT_DOUBLE_EQ(c.region.width, 10.0);
  EXPECT_DOUBLE_EQ(c.region.height, 4.0);
  EXPECT_EQ(c.rows.size(), 4u);
}

TEST(Bookshelf, StoresCentersAndPinOffsets) {
  const auto c = pp::parse_bookshelf(kTiny);
  const auto a = *c.find_block("a");
  EXPECT_DOUBLE_EQ(c.blocks[a].center.x, 3.0);
  EXPECT_DOUBLE_EQ(c.blocks[a].center.y, 1.5);
  EXPECT_FALSE(c.blocks[*c.find_block("p1")].movable);
  EXPECT_DOUBLE_EQ(c.nets[0].pins[0].offset.x, 0.5);
  // Missing offsets default to the center.
  EXPECT_DOUBLE_EQ(c.nets[1].pins[0].offset.x, 0.0);
  EXPECT_DOUBLE_EQ(c.nets[1].pins[1].offset.y, 0.25);
}

TEST(Bookshelf, UnknownPinNodeIsNamed) {
  const auto dir = scratch("unknown_node");
  for (const char* ext : {".nodes", ".pl", ".scl", ".wts"})
    fs::copy_file(kTiny.parent_path() / (std::string("tiny4") + ext), dir / (std::string("tiny4") + ext));
  fs::copy_file(kTiny, dir / "tiny4.aux");
  write(dir / "tiny4.nets", "UCLA nets 1.0\nNumNets : 1\nNumPins : 2\nNetDegree : 2 n1\n a I\n ghost O\n");
  try {
    pp::parse_bookshelf(dir / "tiny4.aux");
    FAIL() << "expected a parse error";
  } catch (const pp::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(Bookshelf, MalformedLineReportsFileAndLine) {
  const auto dir = scratch("malformed");
  for (const char* ext : {".nets", ".pl", ".scl", ".wts"})
    fs::copy_file(kTiny.parent_path() / (std::string("tiny4") + ext), dir / (std::string("tiny4") + ext));
  fs::copy_file(kTiny, dir / "tiny4.aux");
  write(dir / "tiny4.nodes", "UCLA nodes 1.0\nNumNodes : 4\nNumTerminals : 2\n a 2 1\n b two 1\n");
  try {
    pp::parse_bookshelf(dir / "tiny4.aux");
    FAIL() << "expected a parse error";
  } catch (const pp::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("tiny4.nodes:5"), std::string::npos) << e.what();
  }
}

TEST(Bookshelf, MissingFileIsReported) {
  EXPECT_THROW(pp::parse_bookshelf("/nonexistent/x.aux"), pp::ParseError);
}

TEST(Bookshelf, PlacementRoundTripWithinMicroUnits) {
  auto c = pp::parse_bookshelf(kTiny);
  pp::Placement p = c.placement();
  p[*c.find_block("a")] = {4.1234567, 2.5};
  p[*c.find_block("b")] = {7.25, 0.5};
  const auto dir = scratch("roundtrip");
  pp::write_placement(c, p, dir / "out.pl");
  const auto back = pp::read_placement(c, dir / "out.pl");
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_NEAR(back[i].x, p[i].x, 1e-6);
    EXPECT_NEAR(back[i].y, p[i].y, 1e-6);
  }
}

TEST(Bookshelf, FixedBlocksCarrySuffixAndFillersAreSkipped) {
  auto c = pp::parse_bookshelf(kTiny);
  pp::Block filler;
  filler.name = "__f0";
  filler.width = filler.height = 1.0;
  filler.is_filler = true;
  c.blocks.push_back(filler);
  const auto dir = scratch("suffix");
  pp::write_placement(c, c.placement(), dir / "out.pl");
  std::ifstream in(dir / "out.pl");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text.find("__f0"), std::string::npos);
  EXPECT_NE(text.find("p1\t0\t0\t: N /FIXED"), std::string::npos) << text;
  EXPECT_EQ(text.find("a\t2\t1\t: N /FIXED"), std::string::npos);
}

TEST(Bookshelf, WriteParseIsIdempotent) {
  const auto first = pp::parse_bookshelf(kTiny);
  const auto dir = scratch("idempotent");
  const auto aux = pp::write_bookshelf(first, dir, "copy");
  const auto second = pp::parse_bookshelf(aux);
  ASSERT_EQ(first.blocks.size(), second.blocks.size());
  ASSERT_EQ(first.nets.size(), second.nets.size());
  EXPECT_DOUBLE_EQ(first.region.width, second.region.width);
  EXPECT_DOUBLE_EQ(first.region.height, second.region.height);
  for (std::size_t i = 0; i < first.blocks.size(); ++i) {
    EXPECT_EQ(first.blocks[i].name, second.blocks[i].name);
    EXPECT_EQ(first.blocks[i].movable, second.blocks[i].movable);
    EXPECT_NEAR(first.blocks[i].center.x, second.blocks[i].center.x, 1e-9);
    EXPECT_NEAR(first.blocks[i].center.y, second.blocks[i].center.y, 1e-9);
  }
  for (std::size_t n = 0; n < first.nets.size(); ++n) {
    ASSERT_EQ(first.nets[n].pins.size(), second.nets[n].pins.size());
    for (std::size_t k = 0; k < first.nets[n].pins.size(); ++k) {
      EXPECT_EQ(first.nets[n].pins[k].block, second.nets[n].pins[k].block);
      EXPECT_NEAR(first.nets[n].pins[k].offset.x, second.nets[n].pins[k].offset.x, 1e-9);
    }
  }
}

TEST(Synthetic, DeterministicForSeed) {
  const auto a = pp::generate_synthetic(500, 600, {100, 100}, 1);
  const auto b = pp::generate_synthetic(500, 600, {100, 100}, 1);
  ASSERT_EQ(a.blocks.size(), b.blocks.size());
  ASSERT_EQ(a.nets.size(), b.nets.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) EXPECT_EQ(a.blocks[i].center, b.blocks[i].center);
  for (std::size_t n = 0; n < a.nets.size(); ++n) {
    ASSERT_EQ(a.nets[n].pins.size(), b.nets[n].pins.size());
    for (std::size_t k = 0; k < a.nets[n].pins.size(); ++k)
      EXPECT_EQ(a.nets[n].pins[k].block, b.nets[n].pins[k].block);
  }
  const auto c = pp::generate_synthetic(500, 600, {100, 100}, 2);
  bool differs = false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) differs |= !(a.blocks[i].center == c.blocks[i].center);
  EXPECT_TRUE(differs);
}

TEST(Synthetic, SizesNetsAndArea) {
  const auto c = pp::generate_synthetic(500, 600, {100, 100}, 1);
  EXPECT_EQ(c.num_movable(), 500u);
  EXPECT_EQ(c.nets.size(), 600u);
  double area = 0.0;
  for (const auto& b : c.blocks) area += b.area();
  EXPECT_LE(area, 7000.0);
  const double w = c.blocks[0].width, h = c.blocks[0].height;
  for (const auto& b : c.blocks) {
    EXPECT_DOUBLE_EQ(b.width, w);
    EXPECT_DOUBLE_EQ(b.height, h);
    EXPECT_TRUE(c.region.contains(b.center));
  }
  for (const auto& n : c.nets) {
    EXPECT_GE(n.pins.size(), 2u);
    EXPECT_LE(n.pins.size(), 5u);
  }
  EXPECT_NO_THROW(c.validate());
}

TEST(Synthetic, SingleCellDegenerateCase) {
  const auto c = pp::generate_synthetic(1, 1, {10, 10}, 0);
  EXPECT_EQ(c.blocks.size(), 1u);
  ASSERT_EQ(c.nets.size(), 1u);
  EXPECT_GE(c.nets[0].pins.size(), 1u);
  EXPECT_NO_THROW(c.validate());
}

TEST(Synthetic, RejectsInfeasibleArea) {
  pp::SyntheticSpec spec;
  spec.utilization = 0.9;
  EXPECT_THROW(pp::generate_synthetic(spec), pp::CircuitError);
}

TEST(Circuit, ValidateCatchesBrokenInvariants) {
  auto c = pp::parse_bookshelf(kTiny);
  c.blocks[1].name = c.blocks[0].name;
  EXPECT_THROW(c.validate(), pp::CircuitError);
  c = pp::parse_bookshelf(kTiny);
  c.target_density = 0.01;
  EXPECT_THROW(c.validate(), pp::CircuitError);
  c = pp::parse_bookshelf(kTiny);
  c.blocks[0].width = 0.0;
  EXPECT_THROW(c.validate(), pp::CircuitError);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "swapgame/board_io.hpp"
#include "swapgame/catalog.hpp"

using namespace swapgame;

namespace {

const char* kSingleCrossing = R"({
  "name": "single",
  "euler_characteristic": 2,
  "crossings": ["c1"],
  "regions": [
    {"id": "r1", "kind": "vertex", "crossings": ["c1"]},
    {"id": "r2", "kind": "vertex", "crossings": ["c1"]},
    {"id": "r3", "kind": "face", "crossings": ["c1"]}
  ],
  "start_state": "1"
})";

bool has_invariant(const std::vector<Violation>& v, const std::string& name) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.invariant == name; });
}

BoardData twist_data() { return twist5().board->data(); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST(Board, ParsesTheSingleCrossingBoard) {
  const auto b = parse_board(kSingleCrossing);
  EXPECT_EQ(b->n(), 1U);
  EXPECT_EQ(b->k(), 3U);
  EXPECT_TRUE(validate(*b).empty());
  ASSERT_TRUE(b->start_state());
  EXPECT_EQ(b->start_state()->to_string(), "1");
  EXPECT_EQ(b->region(2).kind, RegionKind::face);
}

TEST(Board, MissingFieldIsNamed) {
  const std::string text = R"({"name": "x", "regions": []})";
  try {
    parse_board(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("crossings"), std::string::npos);
  }
  EXPECT_THROW(parse_board("not json"), ParseError);
  EXPECT_THROW(parse_board("[1, 2]"), ParseError);
  EXPECT_THROW(parse_board(R"({"name": "x", "crossings": ["c1"], "regions": [{"id": "r1"}]})"),
               ParseError);
  EXPECT_THROW(parse_board(R"({"name": "x", "crossings": ["c1"], "regions": [],
                               "start_state": "12"})"),
               ParseError);
}

TEST(Board, IdsAreOrderedByTrailingNumber) {
  EXPECT_TRUE(canonical_id_less("c2", "c10"));
  EXPECT_FALSE(canonical_id_less("c10", "c2"));
  EXPECT_TRUE(canonical_id_less("a3", "b3"));
  auto d = twist_data();
  std::reverse(d.crossings.begin(), d.crossings.end());
  std::reverse(d.regions.begin(), d.regions.end());
  const auto b = make_board(d);
  EXPECT_EQ(b->crossings().front(), "c1");
  EXPECT_EQ(b->region(0).id, "r1");
  EXPECT_EQ(move_matrix(*b), move_matrix(*twist5().board));
}

TEST(Board, TwistRowsMatchTheMoveMatrix) {
  const auto b = twist5().board;
  const std::vector<std::string> rows{"11011", "11000", "10110", "11101", "00110", "01001", "00111"};
  ASSERT_EQ(b->k(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    EXPECT_EQ(b->move_row(i).to_string(), rows[i]) << i;
}

TEST(Board, CatalogBoardsAreValid) {
  for (const auto& name : catalog_names()) {
    const auto b = catalog_entry(name).board;
    const auto v = validate(*b);
    EXPECT_TRUE(v.empty()) << name << ": " << (v.empty() ? "" : v.front().detail);
  }
}

TEST(Board, EachCrossingHasFourCornersSoRowsSumToZero) {
  for (const auto& name : {"twist5", "two-klein", "figure8", "borromean"}) {
    const auto b = catalog_entry(name).board;
    BitVec sum(b->n());
    for (const auto& r : b->move_rows())
      sum += r;
    EXPECT_EQ(sum, BitVec(b->n())) << name;
  }
}

TEST(Board, ValidationNegatives) {
  {
    auto d = twist_data();
    d.crossings.push_back("c1");
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "unique-crossing-ids"));
  }
  {
    auto d = twist_data();
    d.regions.push_back(d.regions.front());
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "unique-region-ids"));
  }
  {
    auto d = twist_data();
    d.regions[0].crossings.push_back("c99");
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "known-crossings"));
  }
  {
    auto d = twist_data();
    d.regions[0].crossings.clear();
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "region-nonempty"));
  }
  {
    auto d = twist_data();
    d.crossings.push_back("c6");
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "crossing-referenced"));
  }
  {
    auto d = twist_data();
    d.euler_characteristic = 0;
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "euler-relation"));
  }
  {
    auto d = twist_data();
    d.start_state = "110";
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "bitstring"));
  }
  {
    auto d = twist_data();
    for (auto& r : d.regions)
      if (std::find(r.crossings.begin(), r.crossings.end(), "c1") == r.crossings.end()) {
        r.crossings.push_back("c1");
        break;
      }
    EXPECT_TRUE(has_invariant(validate(*make_board(d)), "crossing-corner-limit"));
  }
  {
    auto d = twist_data();
    for (auto& r : d.regions)
      r.kind = RegionKind::vertex;
    const auto v = validate(*make_board(d));
    EXPECT_TRUE(has_invariant(v, "face-incidence"));
  }
  {
    auto d = twist_data();
    ASSERT_TRUE(d.embedding);
    d.embedding->twisted.push_back("c1");
    EXPECT_FALSE(validate(*make_board(d)).empty());
  }
  EXPECT_THROW(require_valid(*make_board([] {
                 auto d = twist_data();
                 d.euler_characteristic = 5;
                 return d;
               }())),
               ValidationError);
}

TEST(Board, RoundTripIsStable) {
  for (const auto& name : catalog_names()) {
    const auto b = catalog_entry(name).board;
    const auto text = write_board(*b);
    const auto again = parse_board(text);
    EXPECT_EQ(write_board(*again), text) << name;
    EXPECT_EQ(again->move_rows(), b->move_rows()) << name;
  }
}

TEST(Board, ShippedBoardFilesMatchTheCatalog) {
  const std::filesystem::path dir = SWAPGAME_BOARDS_DIR;
  for (const auto& name : catalog_names()) {
    const auto path = dir / (name + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(read_file(path), write_board(*catalog_entry(name).board)) << name;
    EXPECT_NO_THROW(load_board_file(path.string()));
  }
  EXPECT_THROW(load_board_file((dir / "missing.json").string()), ParseError);
}

TEST(Board, NoticesAreInformational) {
  const auto b = parse_board(kSingleCrossing);
  const auto n = notices(*b);
  EXPECT_TRUE(has_invariant(n, "double-corner"));
  EXPECT_TRUE(validate(*b).empty());
  const auto k = two_klein().board;
  EXPECT_TRUE(has_invariant(notices(*k), "partial-oracle"));
}

TEST(Board, RegionKindsParse) {
  EXPECT_EQ(region_kind_from_string("vertex"), RegionKind::vertex);
  EXPECT_EQ(region_kind_from_string("face"), RegionKind::face);
  EXPECT_THROW(region_kind_from_string("edge"), ParseError);
}

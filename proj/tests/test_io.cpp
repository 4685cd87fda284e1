#include <filesystem>

#include "doctest.h"
#include "tropid/csr.hpp"
#include "tropid/identities.hpp"
#include "tropid/io.hpp"

using namespace tropid;

namespace {
const std::filesystem::path kSamples = std::filesystem::path(TROPID_DATA_DIR) / "samples";
}

TEST_CASE("scalar json") {
  CHECK(to_json(TropScalar(Rational(-2, 3))) == "-2/3");
  CHECK(to_json(kBottom) == "-inf");
  CHECK(scalar_from_json(Json(5)) == TropScalar(5));
  CHECK(scalar_from_json(Json("-inf")).is_bottom());
  CHECK_THROWS(scalar_from_json(Json(1.5)));
}

TEST_CASE("matrix json round trip") {
  const TropMatrix a{{1, kBottom, Rational(1, 2)}, {0, -4, 3}};
  const Json j = to_json(a);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 3);
  CHECK(matrix_from_json(j) == a);
  CHECK(matrix_from_json(Json::parse(R"([[0, "-inf"], [1, 2]])")) == TropMatrix{{0, kBottom}, {1, 2}});
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"rows": 3, "cols": 2, "entries": [[0, 1], [1, 2]]})")));
  CHECK_THROWS(matrix_from_json(Json::parse(R"([[0, 1], [1]])")));
}

TEST_CASE("sample files") {
  CHECK(read_matrix(kSamples / "I3.json") == TropMatrix::identity(3));
  const TropMatrix a3 = read_matrix(kSamples / "A3.json");
  CHECK(a3(0, 2).is_bottom());
  CHECK(a3(2, 1) == TropScalar(4));
  const Identity id = identity_from_json(read_json(kSamples / "abba.json"));
  CHECK(id.u == Word::parse("ab"));
  CHECK(read_word(kSamples / "v.txt") == Word::parse("ba"));
  CHECK(construction_length(length_params_from_json(read_json(kSamples / "example_ii.json"))).length() == 19656);
  CHECK_THROWS_AS(read_json(kSamples / "missing.json"), std::runtime_error);
}

TEST_CASE("identity json round trip keeps long words compressed") {
  const Identity id(Word::parse("a^100 b"), Word::parse("b a^100"), Monoid{MonoidKind::upper_triangular, 2});
  const Json j = to_json(id);
  const Identity back = identity_from_json(j);
  CHECK(back.u == id.u);
  CHECK(back.v == id.v);
  CHECK(back.intended == id.intended);
}

TEST_CASE("certificate json carries cycles, levels and CSR matrices") {
  const TropMatrix a{{0, kBottom}, {kBottom, -1}};
  const Json j = to_json(nested_csr_expansion(a, 2));
  REQUIRE(j["cycles"].size() == 2);
  CHECK(j["cycles"][0]["nodes"] == Json::array({1}));
  CHECK(j["cycles"][1]["level"] == 2);
  CHECK(matrix_from_json(j["cycles"][0]["C"]) == TropMatrix{{0, kBottom}, {kBottom, kBottom}});
  CHECK(j["reconstruction_ok"] == true);
}

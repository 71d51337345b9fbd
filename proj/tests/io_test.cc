#include "spdmeans/io.hpp"

#include <cmath>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "spdmeans/random_spd.hpp"

#ifndef SPDMEANS_DATA_DIR
#define SPDMEANS_DATA_DIR "."
#endif

namespace spdmeans {
namespace {

using nlohmann::json;

std::string data_path(const std::string& name) {
  return std::string(SPDMEANS_DATA_DIR) + "/" + name;
}

TEST(MatrixText, ParsesDimensionThenRows) {
  const SPDMatrix m = parse_matrix("2\n1 0\n0 4\n");
  EXPECT_EQ(m.dim(), 2);
  EXPECT_DOUBLE_EQ(m.mat()(1, 1), 4.0);
}

TEST(MatrixText, RejectsMalformedInput) {
  EXPECT_THROW(parse_matrix(""), ParseError);
  EXPECT_THROW(parse_matrix("0\n"), ParseError);
  EXPECT_THROW(parse_matrix("2\n1 0\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix("2\n1 0\n0 4\n9\n"), ParseError);
  EXPECT_THROW(parse_matrix("2\n1 x\nx 1\n"), ParseError);
  EXPECT_THROW(parse_matrix("65\n"), DimensionOutOfRange);
}

TEST(MatrixText, ValidationErrorsPropagate) {
  EXPECT_THROW(parse_matrix("2\n1 2\n3 4\n"), NotSymmetric);
  EXPECT_THROW(parse_matrix("2\n1 0\n0 -1\n"), NotPositiveDefinite);
}

TEST(MatrixText, WriteParseRoundTripIsExact) {
  Prng rng(81);
  const SPDMatrix m = random_spd(5, rng);
  const SPDMatrix back = parse_matrix(write_matrix_text(m));
  EXPECT_TRUE(m.mat() == back.mat());
}

TEST(MatrixJson, ParseAndRoundTrip) {
  const SPDMatrix m =
      parse_matrix("{\"rows\": 2, \"data\": [[2.0, 1.0], [1.0, 2.0]]}");
  EXPECT_EQ(m.dim(), 2);
  const Eigen::MatrixXd back = matrix_from_json(matrix_to_json(m.mat()));
  EXPECT_TRUE(back == m.mat());
}

TEST(MatrixJson, RejectsShapeErrors) {
  EXPECT_THROW(parse_matrix("{\"rows\": 2}"), ParseError);
  EXPECT_THROW(parse_matrix("{\"rows\": 2, \"data\": [[1, 0]]}"), ParseError);
  EXPECT_THROW(parse_matrix("{\"rows\": 2, \"data\": [[1, 0], [0]]}"),
               ParseError);
  EXPECT_THROW(parse_matrix("{not json"), ParseError);
}

TEST(TupleText, ParsesWhitespaceSeparatedValues) {
  const PositiveTuple t = parse_tuple("4 1\n");
  ASSERT_EQ(t.size(), 2);
  EXPECT_DOUBLE_EQ(t.values()[0], 4.0);
}

TEST(TupleText, RejectsMalformedInput) {
  EXPECT_THROW(parse_tuple(""), ParseError);
  EXPECT_THROW(parse_tuple("1 2 x"), ParseError);
  EXPECT_THROW(parse_tuple("1 -2"), NonpositiveEntry);
}

TEST(TupleText, WriteParseRoundTripIsExact) {
  Prng rng(82);
  const PositiveTuple t = random_tuple(7, rng);
  const PositiveTuple back = parse_tuple(write_tuple_text(t));
  EXPECT_TRUE(t.values() == back.values());
}

TEST(TupleJson, ParsesValuesArray) {
  const PositiveTuple t = parse_tuple("{\"values\": [8.0, 2.0, 1.0]}");
  ASSERT_EQ(t.size(), 3);
  EXPECT_DOUBLE_EQ(t.values()[2], 1.0);
  EXPECT_THROW(parse_tuple("{\"values\": 3}"), ParseError);
}

TEST(ChainJson, OneBasedIndicesOnTheWire) {
  const PinchChain chain =
      build_pinch_chain(PositiveTuple({4, 1}), PositiveTuple({2, 2}));
  const json j = chain_to_json(chain);
  ASSERT_EQ(j.at("steps").size(), 1u);
  EXPECT_EQ(j.at("steps").at(0).at("i").get<int>(), 1);
  EXPECT_EQ(j.at("steps").at(0).at("j").get<int>(), 2);
  EXPECT_EQ(j.at("steps").at(0).at("kind").get<std::string>(),
            "multiplicative");

  const PinchChain back = chain_from_json(j);
  ASSERT_EQ(back.steps.size(), 1u);
  EXPECT_EQ(back.steps[0].i, 0);
  EXPECT_EQ(back.steps[0].j, 1);
  EXPECT_DOUBLE_EQ(back.steps[0].t, chain.steps[0].t);
  EXPECT_LE(verify_chain_scalar(back), 1e-12);
}

TEST(ChainJson, RejectsUnknownKind) {
  json j = chain_to_json(
      build_pinch_chain(PositiveTuple({4, 1}), PositiveTuple({2, 2})));
  j["steps"][0]["kind"] = "harmonic";
  EXPECT_THROW(chain_from_json(j), ParseError);
}

TEST(Files, LoadsFixturesFromDisk) {
  const SPDMatrix a = load_matrix(data_path("convexity_a.txt"));
  EXPECT_DOUBLE_EQ(a.mat()(0, 0), 12.9638);
  const PositiveTuple t = load_tuple(data_path("tuple_8_2_1.json"));
  EXPECT_EQ(t.size(), 3);
}

TEST(Files, MissingFileIsAParseError) {
  EXPECT_THROW(load_matrix(data_path("no_such_file.txt")), ParseError);
}

}  // namespace
}  // namespace spdmeans

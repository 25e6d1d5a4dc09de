#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "momentbc/io.hpp"
#include "momentbc/linalg.hpp"
#include "momentbc/measure.hpp"
#include "momentbc/numeric.hpp"

using namespace momentbc;

TEST_CASE("writer emits a fixed byte sequence") {
  io::JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.string_value(io::kSchema);
  w.key("n");
  w.int_value(3);
  w.key("flag");
  w.bool_value(true);
  w.key("x");
  w.double_value(1.5);
  w.key("r");
  w.rational_value(Rational(2, 3));
  w.key("seq");
  w.sequence(std::vector<Rational>{Rational(1), Rational(-1, 2)});
  Matrix<double> eye(2, 2);
  eye(0, 0) = 1.0;
  eye(1, 1) = 1.0;
  w.key("mat");
  w.matrix(eye);
  w.key("s");
  w.string_value("a\"b\\c\nd");
  w.end_object();
  CHECK(w.str() ==
        "{\"schema\":\"momentbc/1\",\"n\":3,\"flag\":true,"
        "\"x\":1.5000000000000000e+00,\"r\":\"2/3\","
        "\"seq\":[\"1\",\"-1/2\"],"
        "\"mat\":[[1.0000000000000000e+00,0.0000000000000000e+00],"
        "[0.0000000000000000e+00,1.0000000000000000e+00]],"
        "\"s\":\"a\\\"b\\\\c\\nd\"}");
}

TEST_CASE("float formatting survives a parse round trip") {
  for (double x : {0.0, 0.1, -1.0 / 3.0, 2.5e-308, 1.7e308, 123456789.123456789}) {
    const std::string text = format_double(x);
    CHECK(std::stod(text) == x);
  }
  CHECK(format_double(1.5) == "1.5000000000000000e+00");
  CHECK(format_double(0.0) == "0.0000000000000000e+00");
}

TEST_CASE("rational text round trip") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(parse_rational("2/4") == Rational(1, 2));  // canonicalized
  CHECK(format_rational(Rational(1, 2)) == "1/2");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(format_rational(Rational(-7, 3)) == "-7/3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("a/b"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("command-line scalars accept decimals exactly") {
  CHECK(io::parse_scalar_text<Rational>("1.25") == Rational(5, 4));
  CHECK(io::parse_scalar_text<Rational>("3/7") == Rational(3, 7));
  CHECK(io::parse_scalar_text<Rational>("-2") == Rational(-2));
  CHECK(io::parse_scalar_text<double>("2.5e-1") == 0.25);
  CHECK_THROWS_AS(io::parse_scalar_text<double>("12x"), Error);
}

TEST_CASE("json scalars may be numbers or fraction strings") {
  const nlohmann::json v = nlohmann::json::parse(R"([1, 0.5, "3/4"])");
  CHECK(io::scalar_as_double(v[0], "t") == 1.0);
  CHECK(io::scalar_as_double(v[1], "t") == 0.5);
  CHECK(io::scalar_as_double(v[2], "t") == 0.75);
  CHECK(io::scalar_as_rational(v[0], "t") == Rational(1));
  CHECK(io::scalar_as_rational(v[1], "t") == Rational(1, 2));
  CHECK(io::scalar_as_rational(v[2], "t") == Rational(3, 4));
  const nlohmann::json bad = nlohmann::json::parse(R"({"k": null})");
  CHECK_THROWS_AS(io::scalar_as_double(bad["k"], "t"), Error);
}

TEST_CASE("sequence parsing wants a nonempty array under the key") {
  const nlohmann::json doc = nlohmann::json::parse(R"({"moments": [1, 2], "empty": []})");
  CHECK(io::parse_sequence<double>(doc, "moments") == std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(io::parse_sequence<double>(doc, "empty"), Error);
  CHECK_THROWS_AS(io::parse_sequence<double>(doc, "missing"), Error);
}

TEST_CASE("jacobi parsing validates the boundary coupling") {
  const nlohmann::json good = nlohmann::json::parse(R"({"a": [1, "3/2"], "b": [0, "-1/4"]})");
  const auto j = io::parse_jacobi_as<Rational>(good);
  CHECK(j.a[1] == Rational(3, 2));
  CHECK(j.b[1] == Rational(-1, 4));
  const nlohmann::json bad = nlohmann::json::parse(R"({"a": [2, 1], "b": [0, 0]})");
  CHECK_THROWS_AS(io::parse_jacobi_as<double>(bad), Error);
}

TEST_CASE("file loading reports parse failures with the right code") {
  try {
    io::load_json_file("definitely-not-here.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
  }
  const char* path = "io_malformed_tmp.json";
  {
    std::ofstream f(path);
    f << "{not json";
  }
  try {
    io::load_json_file(path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
  }
  std::remove(path);
}

TEST_CASE("backend names round trip") {
  CHECK(io::parse_backend("f64") == io::Backend::f64);
  CHECK(io::parse_backend("rational") == io::Backend::rational);
  CHECK(std::string(io::backend_name(io::Backend::f64)) == "f64");
  CHECK(std::string(io::backend_name(io::Backend::rational)) == "rational");
  CHECK_THROWS_AS(io::parse_backend("float128"), Error);
}

TEST_CASE("measure emission is deterministic") {
  DiscreteMeasure<Rational> mu;
  mu.atoms = {Rational(-1), Rational(1)};
  mu.weights = {Rational(1, 2), Rational(1, 2)};
  io::JsonWriter w;
  io::emit_measure(w, mu, io::Backend::rational);
  CHECK(w.str() ==
        "{\"schema\":\"momentbc/1\",\"kind\":\"measure\",\"backend\":\"rational\","
        "\"atoms\":[\"-1\",\"1\"],\"weights\":[\"1/2\",\"1/2\"],"
        "\"norming_constants\":[\"2\",\"2\"]}");
}

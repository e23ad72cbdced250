#include <doctest.h>

#include <random>

#include "fluidlogic/quantity.hpp"

using namespace fluidlogic;

TEST_CASE("unit suffixes normalize to SI") {
    CHECK(parse_quantity("80kPa", Dimension::pressure).si == 80000.0);
    CHECK(parse_quantity("45cm", Dimension::length).si == 0.45);
    CHECK(parse_quantity("2.5mm", Dimension::length).si == 0.0025);
    CHECK(parse_quantity("2.5ml/s", Dimension::flow).si == 2.5e-6);
    CHECK(parse_quantity("0.894e-3Pa.s", Dimension::viscosity).si == 0.894e-3);
    CHECK(parse_quantity("1.5", Dimension::length).si == 1.5);  // bare = SI
}

TEST_CASE("resistance in Pa.s/ml converts exactly in decimal") {
    const Quantity q = parse_quantity("419.6Pa.s/ml", Dimension::resistance);
    CHECK(q.si == 4.196e8);
    CHECK(format_quantity(q) == "419.6Pa.s/ml");
    // and back again
    CHECK(parse_quantity(format_quantity(q), Dimension::resistance).si == 4.196e8);
}

TEST_CASE("unknown units and wrong dimensions are rejected with location") {
    CHECK_THROWS_WITH_AS(parse_quantity("80kPax", Dimension::pressure, {3, 7}),
                         doctest::Contains("line 3:7"), ParseError);
    CHECK_THROWS_AS(parse_quantity("80kPa", Dimension::length), ParseError);
    CHECK_THROWS_AS(parse_quantity("abc", Dimension::pressure), ParseError);
    CHECK_THROWS_AS(parse_quantity("", Dimension::pressure), ParseError);
    CHECK_THROWS_AS(parse_quantity("1e999", Dimension::pressure), ParseError);
}

TEST_CASE("format round-trips the exact double for arbitrary values") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-9, 9);
    const Dimension dims[] = {Dimension::pressure, Dimension::length, Dimension::flow,
                              Dimension::viscosity, Dimension::resistance,
                              Dimension::dimensionless};
    for (int i = 0; i < 2000; ++i) {
        Quantity q{mant(rng) * std::pow(10.0, expo(rng)), dims[i % 6]};
        const std::string text = format_quantity(q);
        const Quantity back = parse_quantity(text, q.dim);
        CHECK(back.si == q.si);
    }
}

TEST_CASE("parse_any_quantity infers the dimension from the unit") {
    CHECK(parse_any_quantity("100kPa").dim == Dimension::pressure);
    CHECK(parse_any_quantity("100kPa").si == 1e5);
    CHECK(parse_any_quantity("42").dim == Dimension::dimensionless);
}

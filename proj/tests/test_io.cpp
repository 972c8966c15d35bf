#include <catch2/catch_amalgamated.hpp>

#include "soc/io.hpp"
#include "soc/random.hpp"

using namespace soc;

TEST_CASE("matrix JSON round trip") {
    Rng rng(7);
    const DenseMatrix a = random_dense(rng, 3);
    const DenseMatrix b = matrix_from_json(to_json(a));
    REQUIRE(approx_equal(a, b, 0.0));

    json bad = to_json(a);
    bad["extra"] = 1;
    REQUIRE_THROWS_AS(matrix_from_json(bad), validation_error);

    json short_re = to_json(a);
    short_re["re"] = std::vector<double>{1.0};
    REQUIRE_THROWS_AS(matrix_from_json(short_re), validation_error);
}

TEST_CASE("symseq JSON round trip") {
    Rng rng(9);
    const SymSeq s = random_reduced_symseq(rng, 5);
    const SymSeq t = symseq_from_json(to_json(s));
    REQUIRE(t.max_degree == s.max_degree);
    for (int n = 0; n <= 5; ++n) {
        REQUIRE(t.at(n).dim == s.at(n).dim);
        REQUIRE(t.at(n).weight == s.at(n).weight);
    }
    REQUIRE(t.reduced == s.reduced);
}

TEST_CASE("functor specs parse") {
    const auto expf = functor_from_json(json{{"kind", "exponential"}, {"truncation", 5}});
    REQUIRE(expf.coeffs == std::vector<double>{1.0, 1.0, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120});

    const auto poly = functor_from_json(json{{"kind", "polynomial"}, {"coeffs", {0.0, 1.0, 2.0}}});
    REQUIRE(poly.coeff(2) == 2.0);
    REQUIRE(poly.truncation() == 16);  // default truncation pads

    const auto red = functor_from_json(
        json{{"kind", "exponential"}, {"truncation", 4}, {"reduced", true}});
    REQUIRE(red.coeff(0) == 0.0);
    REQUIRE(red.reduced);

    REQUIRE_THROWS_AS(functor_from_json(json{{"kind", "mystery"}}), validation_error);
    REQUIRE_THROWS_AS(functor_from_json(json{{"kind", "polynomial"}}), validation_error);
    REQUIRE_THROWS_AS(functor_from_json(json{{"kind", "identity"}, {"bogus", 1}}),
                      validation_error);
}

TEST_CASE("csv formatting is bit-stable and 17-significant-digit") {
    REQUIRE(format_value(9.765625e-4) == "0.0009765625");
    REQUIRE(format_value(1.0 / 3.0) == "0.33333333333333331");
    REQUIRE(format_value(0.0) == "0");
    REQUIRE(format_value(std::numeric_limits<double>::infinity()) == "inf");
    REQUIRE(format_value(BigInt("123456789012345678901234567890")) ==
            "123456789012345678901234567890");

    CsvWriter csv({"a", "b"});
    csv.row(1, 0.5);
    csv.row(2, std::string("x"));
    REQUIRE(csv.str() == "a,b\n1,0.5\n2,x\n");
}

TEST_CASE("fnv1a hash is stable") {
    REQUIRE(fnv1a_hex("") == "cbf29ce484222325");
    REQUIRE(fnv1a_hex("soc") == fnv1a_hex("soc"));
    REQUIRE(fnv1a_hex("soc") != fnv1a_hex("socc"));
}

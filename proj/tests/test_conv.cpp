#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <pac/conv.hpp>

using namespace pac;

TEST_CASE("octal parsing") {
    CHECK(ConvPoly("133").taps() == BitWord{1, 0, 1, 1, 0, 1, 1});
    CHECK(ConvPoly("133").memory() == 6);
    CHECK(ConvPoly("3211").taps() == BitWord{1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 1});
    CHECK(ConvPoly("3211").memory() == 10);
    CHECK(ConvPoly("1").taps() == BitWord{1});
    CHECK(ConvPoly("1").memory() == 0);
    CHECK(ConvPoly("7").taps() == BitWord{1, 1, 1});
    CHECK(ConvPoly("013").taps() == BitWord{1, 0, 1, 1});
}

TEST_CASE("invalid polynomials rejected") {
    CHECK_THROWS_AS(ConvPoly(""), std::invalid_argument);
    CHECK_THROWS_AS(ConvPoly("0"), std::invalid_argument);  // g identically zero
    CHECK_THROWS_AS(ConvPoly("2"), std::invalid_argument);  // g_m = 0
    CHECK_THROWS_AS(ConvPoly("4"), std::invalid_argument);
    CHECK_THROWS_AS(ConvPoly("36"), std::invalid_argument); // even => g_m = 0
    CHECK_THROWS_AS(ConvPoly("18"), std::invalid_argument); // not octal
    CHECK_THROWS_AS(ConvPoly("1a"), std::invalid_argument);
}

TEST_CASE("impulse response equals the tap vector") {
    for (const char* g : {"133", "3211", "7", "1"}) {
        ConvPoly p(g);
        std::size_t N = 16;
        BitWord v(N, 0);
        v[0] = 1;
        BitWord u = p.encode(v);
        for (std::size_t i = 0; i < N; ++i)
            CHECK(u[i] == (i < p.taps().size() ? p.taps()[i] : 0));
    }
}

TEST_CASE("encode agrees with direct convolution") {
    std::mt19937_64 g(21);
    ConvPoly p("133");
    for (int t = 0; t < 50; ++t) {
        BitWord v(64);
        for (auto& b : v) b = static_cast<std::uint8_t>(g() & 1);
        BitWord u = p.encode(v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::uint8_t want = 0;
            for (std::size_t j = 0; j < p.taps().size() && j <= i; ++j)
                want ^= static_cast<std::uint8_t>(p.taps()[j] & v[i - j]);
            CHECK(u[i] == want);
        }
    }
}

TEST_CASE("step and step_past relation") {
    std::mt19937_64 g(22);
    ConvPoly p("3211");
    BitWord v(40);
    for (auto& b : v) b = static_cast<std::uint8_t>(g() & 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::uint8_t past = p.step_past(v, i);
        CHECK(p.step(v, i) == (v[i] ^ past));
        BitWord v0 = v;
        v0[i] = 0;
        CHECK(p.step(v0, i) == past);
    }
}

TEST_CASE("g=1 is the identity") {
    ConvPoly p("1");
    BitWord v{1, 0, 1, 1, 0, 0, 1, 0};
    CHECK(p.encode(v) == v);
}

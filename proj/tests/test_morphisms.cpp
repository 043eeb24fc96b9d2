#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aperiodic/morphisms.hpp"

using namespace aperiodic;

namespace {
WordWindow random_window(std::mt19937& rng, const Alphabet& a, size_t len) {
    std::vector<uint8_t> letters;
    for (size_t i = 0; i < len; ++i)
        letters.push_back(static_cast<uint8_t>(rng() % a.size()));
    size_t origin = letters.empty() ? 0 : rng() % (len + 1);
    return WordWindow(a, letters, origin);
}
}  // namespace

TEST_CASE("morphism DSL") {
    Morphism phi = parse_morphism("A->AAB;B->AB");
    CHECK(phi.image_str(0) == "AAB");
    CHECK(phi.image_str(1) == "AB");
    CHECK(phi.is_substitution());

    Morphism ident = parse_morphism("A->A");
    CHECK(ident.image_str(0) == "A");
    CHECK(!ident.is_substitution());  // image has no growing side

    CHECK_THROWS_AS(parse_morphism("A->B;B->"), std::invalid_argument);
    CHECK_NOTHROW(parse_morphism("A->B;B->", /*require_non_erasing=*/false));
    CHECK_THROWS_AS(parse_morphism("A->AB;A->B"), std::invalid_argument);
    CHECK_THROWS_AS(parse_morphism("A->AC"), std::invalid_argument);
    CHECK_THROWS_AS(parse_morphism("AB->A"), std::invalid_argument);
}

TEST_CASE("incidence matrices") {
    IntMatrix m = parse_morphism("A->AAB;B->AB").incidence();
    CHECK(m(0, 0) == 2);
    CHECK(m(0, 1) == 1);
    CHECK(m(1, 0) == 1);
    CHECK(m(1, 1) == 1);

    IntMatrix id = parse_morphism("A->A;B->B").incidence();
    CHECK(id == IntMatrix::identity(2));

    IntMatrix c = parse_morphism("A->C;B->ACCCC;C->CB").incidence();
    long expected[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 4, 1}};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) CHECK(c(i, j) == expected[i][j]);

    // Psi(phi(w)) = M Psi(w) on random words
    std::mt19937 rng(5);
    Morphism phi = parse_morphism("A->C;B->ACCCC;C->CB");
    for (int rep = 0; rep < 200; ++rep) {
        WordWindow w = random_window(rng, phi.domain(), rng() % 40);
        ParikhVec lhs = parikh_of(phi.apply(w));
        ParikhVec rhs_in = parikh_of(w);
        std::vector<Integer> rhs = c.apply(std::vector<Integer>(rhs_in.begin(), rhs_in.end()));
        for (size_t i = 0; i < 3; ++i) CHECK(Integer(lhs[i]) == rhs[i]);
    }

    // incidence of phi o phi is M^2
    CHECK(phi.power(2).incidence() == c * c);
}

TEST_CASE("applying a morphism to a window") {
    Morphism phi = parse_morphism("A->AAB;B->AB");
    WordWindow w = WordWindow::parse("A|B");
    CHECK(phi.apply(w).str() == "AAB|AB");
    CHECK(phi.apply(WordWindow::parse("|", Alphabet("AB"))).str() == "|");

    // homomorphism law: the image of a concatenation is the concatenation
    std::mt19937 rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        WordWindow u = random_window(rng, phi.domain(), rng() % 20);
        WordWindow v = random_window(rng, phi.domain(), rng() % 20);
        std::vector<uint8_t> uv(u.raw());
        uv.insert(uv.end(), v.raw().begin(), v.raw().end());
        std::vector<uint8_t> lhs = phi.apply_seq(uv);
        std::vector<uint8_t> rhs = phi.apply_seq(u.raw());
        auto tail = phi.apply_seq(v.raw());
        rhs.insert(rhs.end(), tail.begin(), tail.end());
        CHECK(lhs == rhs);
    }
}

TEST_CASE("fixed point of the golden substitution") {
    Morphism phi = parse_morphism("A->AAB;B->AB");
    auto res = fixed_point_window(phi, FixedPointSeed::parse("B|A"), 5);
    CHECK(res.window.str() == "AABAB|AABAA");
    CHECK(res.power_used == 1);

    auto big = fixed_point_window(phi, FixedPointSeed::parse("B|A"), 13).window;
    CHECK(big.str() == "AABAABABAABAB|AABAABABAABAA");

    // the fixed-point equation phi(u) = u, letter-exact on the window
    WordWindow u = fixed_point_window(phi, FixedPointSeed::parse("B|A"), 200).window;
    WordWindow pu = phi.apply(u);
    for (long n = u.min_index(); n < u.max_index(); ++n) CHECK(pu.at(n) == u.at(n));

    // radius 0 gives the empty window
    CHECK(fixed_point_window(phi, FixedPointSeed::parse("B|A"), 0).window.empty());
}

TEST_CASE("one-sided fixed points") {
    Morphism fib = parse_morphism("A->AB;B->A");
    CHECK(fib.left_seed_letters().empty());
    auto res = fixed_point_window(fib, FixedPointSeed::parse("|A"), 8);
    CHECK(res.window.str() == "|ABAABABA");
    CHECK(res.window.origin() == 0);

    // no seed given: falls back to the first admissible (right-only) letter
    auto def = fixed_point_window(fib, std::nullopt, 8);
    CHECK(def.window.str() == "|ABAABABA");
}

TEST_CASE("streaming is prefix-stable") {
    Morphism phi = parse_morphism("A->AAB;B->AB");
    FixedPointStream stream(phi, FixedPointSeed::parse("B|A"));
    WordWindow small = stream.window(50);
    WordWindow large = stream.window(400);
    for (long n = small.min_index(); n < small.max_index(); ++n)
        CHECK(small.at(n) == large.at(n));

    // same radius twice gives identical letters
    CHECK(stream.window(50) == small);
}

TEST_CASE("inadmissible seeds and the power search") {
    Morphism phi = parse_morphism("A->C;B->ACCCC;C->CB");
    CHECK(!phi.is_substitution());       // nothing ends with its own letter
    CHECK(phi.power(2).is_substitution());

    CHECK_THROWS_AS(fixed_point_window(phi, FixedPointSeed::parse("B|C"), 10),
                    std::invalid_argument);

    auto res = fixed_point_window(phi, FixedPointSeed::parse("B|C"), 10, /*auto_power=*/true);
    CHECK(res.power_used == 2);
    CHECK(res.window.size() == 20);
    CHECK(res.window.letter_at(0) == 'C');
    CHECK(res.window.letter_at(-1) == 'B');

    // the fixed point of phi^2 is fixed by phi^2
    WordWindow u = fixed_point_window(phi, FixedPointSeed::parse("B|C"), 300,
                                      /*auto_power=*/true).window;
    WordWindow pu = phi.power(2).apply(u);
    for (long n = u.min_index(); n < u.max_index(); ++n) CHECK(pu.at(n) == u.at(n));

    CHECK_THROWS_AS(fixed_point_window(parse_morphism("A->B;B->A"), std::nullopt, 5, true),
                    std::invalid_argument);
}

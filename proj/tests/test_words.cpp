#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aperiodic/morphisms.hpp"
#include "aperiodic/words.hpp"

using namespace aperiodic;

namespace {

QuadField golden() { return QuadField(5); }
QuadElem tau() { return QuadElem(golden(), make_rational(1, 2), make_rational(1, 2)); }
QuadElem tau_inv() { return tau() - Rational(1); }  // 1/tau = tau - 1

WordWindow golden_window(size_t radius) {
    Morphism phi = parse_morphism("A->AAB;B->AB");
    return fixed_point_window(phi, FixedPointSeed::parse("B|A"), radius).window;
}

WordWindow fibonacci_prefix(size_t len) {
    Morphism phi = parse_morphism("A->AB;B->A");
    return fixed_point_window(phi, FixedPointSeed::parse("|A"), len).window;
}

}  // namespace

TEST_CASE("window parsing and addressing") {
    WordWindow w = WordWindow::parse("AABAB|AABAABAB");
    CHECK(w.size() == 13);
    CHECK(w.origin() == 5);
    CHECK(w.letter_at(0) == 'A');
    CHECK(w.letter_at(-1) == 'B');
    CHECK(w.str() == "AABAB|AABAABAB");
    CHECK_THROWS_AS(w.at(8), std::out_of_range);
    CHECK_THROWS_AS(WordWindow::parse("A|B|C"), std::invalid_argument);

    WordWindow empty = WordWindow::parse("|", Alphabet("AB"));
    CHECK(empty.empty());
}

TEST_CASE("signed parikh vectors of prefixes") {
    WordWindow w = golden_window(8);
    CHECK(parikh_prefix(w, 3) == ParikhVec{2, 1});    // prefix AAB
    CHECK(parikh_prefix(w, 0) == ParikhVec{0, 0});
    CHECK(parikh_prefix(w, -2) == ParikhVec{-1, -1});  // left of | ends ...AB

    // (1,...,1) . Psi[n] = n and additivity over intermediate factors
    for (long n = w.min_index(); n <= w.max_index(); ++n) {
        ParikhVec v = parikh_prefix(w, n);
        long total = 0;
        for (long x : v) total += x;
        CHECK(total == n);
    }
    for (long n : {-5L, -1L, 0L, 2L, 6L}) {
        for (long m : {1L, 2L}) {
            ParikhVec lhs = parikh_prefix(w, n + m);
            ParikhVec rhs = parikh_prefix(w, n);
            for (long i = n; i < n + m; ++i) ++rhs[w.at(i)];
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("balance constants") {
    CHECK(balance_constant(fibonacci_prefix(10000), 500) == 1);
    CHECK(balance_constant(WordWindow::parse("AABB"), 2) == 2);

    std::vector<uint8_t> ab;
    for (int i = 0; i < 50; ++i) {
        ab.push_back(0);
        ab.push_back(1);
    }
    WordWindow periodic(Alphabet("AB"), ab, 0);
    CHECK(balance_constant(periodic, 10) == 1);

    // monotone in max_len and in window length
    WordWindow w = fibonacci_prefix(3000);
    long prev = 0;
    for (size_t len : {10, 50, 100, 200}) {
        long c = balance_constant(w, len);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("letter frequencies") {
    WordWindow w = fibonacci_prefix(100000);
    auto freq = letter_frequencies(w);
    double fa = to_double(freq[0]);
    CHECK(std::abs(fa - 0.61803398875) < 1e-3);
    CHECK(std::abs(to_double(freq[1]) - 0.38196601125) < 1e-3);

    auto single = letter_frequencies(WordWindow::parse("A", Alphabet("AB")));
    CHECK(single == std::vector<Rational>{Rational(1), Rational(0)});

    std::vector<uint8_t> ab{0, 1, 0, 1, 0, 1};
    auto half = letter_frequencies(WordWindow(Alphabet("AB"), ab, 0));
    CHECK(half == std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});

    CHECK_THROWS_AS(letter_frequencies(WordWindow::parse("|", Alphabet("A"))),
                    std::invalid_argument);
}

TEST_CASE("geometric points") {
    QuadField f = golden();
    WordWindow w = WordWindow::parse("A|AB");
    GeomRep rep(w, {QuadElem(f, 1), tau_inv()});
    auto xs = geometric_points(rep);
    REQUIRE(xs.size() == 4);
    CHECK(xs[0] == QuadElem(f, -1));
    CHECK(xs[1] == QuadElem(f, 0));
    CHECK(xs[2] == QuadElem(f, 1));
    CHECK(xs[3] == QuadElem(f, 1) + tau_inv());

    // all lengths 1: the lattice case
    WordWindow v = golden_window(6);
    GeomRep lattice(v, {QuadElem(f, 1), QuadElem(f, 1)});
    auto ls = geometric_points(lattice);
    for (size_t i = 0; i < ls.size(); ++i)
        CHECK(ls[i] == QuadElem(f, static_cast<long>(i) - 6));

    // strictly increasing, gaps equal the letter lengths
    GeomRep g(v, {QuadElem(f, 1), tau_inv()});
    auto gs = geometric_points(g);
    for (size_t i = 0; i + 1 < gs.size(); ++i) {
        CHECK(gs[i] < gs[i + 1]);
        CHECK(gs[i + 1] - gs[i] == g.lengths[v.at(static_cast<long>(i) - 6)]);
    }

    CHECK_THROWS_AS(GeomRep(v, {QuadElem(f, 0), QuadElem(f, 1)}), std::invalid_argument);
}

TEST_CASE("morphic images of sturmian windows satisfy the balance bound") {
    // image of a c-balanced word under a non-erasing morphism is C-balanced,
    // with C from the frequency/incidence data of the source word
    std::mt19937 rng(987654321);
    WordWindow w = fibonacci_prefix(1200);
    QuadField f = golden();
    QuadElem rho_a = tau_inv();                       // frequency of A
    QuadElem rho_b = QuadElem(f, 1) - tau_inv();      // frequency of B = 1/tau^2
    const long c = 1;                                 // sturmian balance

    std::uniform_int_distribution<int> target_size(2, 3);
    std::uniform_int_distribution<int> image_len(1, 3);

    for (int rep = 0; rep < 100; ++rep) {
        size_t tsize = target_size(rng);
        Alphabet target(std::string("xyz").substr(0, tsize));
        std::vector<std::vector<uint8_t>> images(2);
        for (auto& im : images) {
            int len = image_len(rng);
            for (int i = 0; i < len; ++i)
                im.push_back(static_cast<uint8_t>(rng() % tsize));
        }
        Morphism psi(Alphabet("AB"), target, images);

        long mu = static_cast<long>(psi.max_image_length());
        QuadElem lambda = rho_a * Rational(static_cast<long>(images[0].size())) +
                          rho_b * Rational(static_cast<long>(images[1].size()));
        long row_sum_all = static_cast<long>(images[0].size() + images[1].size());
        Rational kappa = Rational(2 * mu) + Rational(c * row_sum_all);

        WordWindow img = psi.apply(w);
        long measured = balance_constant(img);

        long bound = 0;
        for (uint8_t b = 0; b < tsize; ++b) {
            long cnt_a = 0, cnt_b = 0;
            for (uint8_t x : images[0]) cnt_a += (x == b);
            for (uint8_t x : images[1]) cnt_b += (x == b);
            QuadElem lambda_b = rho_a * Rational(cnt_a) + rho_b * Rational(cnt_b);
            Rational kappa_b = Rational(2 * mu) + Rational(c * (cnt_a + cnt_b));
            QuadElem cb = (lambda_b / lambda) * Rational(2) * kappa + Rational(2) * kappa_b;
            long cl = static_cast<long>(ceil_elem(cb).get_si());
            bound = std::max(bound, cl);
        }
        CHECK(measured <= bound);
    }
}

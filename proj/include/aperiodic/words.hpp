// words.hpp -- finite windows of bi-infinite words and their combinatorics:
// signed Parikh vectors of prefixes, empirical balance constants, letter
// frequencies, and geometric representations
//
//   x_n = (l_1,...,l_d) * Psi[n],   Psi[n] = Parikh(u_[0,n)) for n >= 0,
//                                           -Parikh(u_[n,0)) for n < 0.
//
// A window stores letters together with the position of the origin delimiter
// "|"; index n is addressable when -origin <= n < length-origin.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadfield.hpp"
#include "rational.hpp"

namespace aperiodic {

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::string letters) : letters_(std::move(letters)) {
        if (letters_.empty()) throw std::invalid_argument("alphabet must not be empty");
        for (size_t i = 0; i < letters_.size(); ++i)
            for (size_t j = i + 1; j < letters_.size(); ++j)
                if (letters_[i] == letters_[j])
                    throw std::invalid_argument("alphabet letters must be distinct");
    }

    size_t size() const { return letters_.size(); }
    char letter(size_t i) const { return letters_.at(i); }
    const std::string& letters() const { return letters_; }

    bool has(char c) const { return letters_.find(c) != std::string::npos; }

    uint8_t index(char c) const {
        auto pos = letters_.find(c);
        if (pos == std::string::npos)
            throw std::invalid_argument(std::string("letter '") + c + "' not in alphabet");
        return static_cast<uint8_t>(pos);
    }

    bool operator==(const Alphabet&) const = default;

private:
    std::string letters_;
};

class WordWindow {
public:
    WordWindow() = default;
    WordWindow(Alphabet alphabet, std::vector<uint8_t> letters, size_t origin)
        : alphabet_(std::move(alphabet)), letters_(std::move(letters)), origin_(origin) {
        if (origin_ > letters_.size())
            throw std::invalid_argument("origin must lie within the window");
        for (uint8_t ix : letters_)
            if (ix >= alphabet_.size()) throw std::invalid_argument("letter index out of range");
    }

    /// Text with an optional '|' origin marker ("AABAB|AABAABAB"). Without a
    /// marker the origin sits at the left edge. Unless given, the alphabet is
    /// collected in order of first appearance.
    static WordWindow parse(const std::string& text,
                            std::optional<Alphabet> alphabet = std::nullopt) {
        std::string letters;
        size_t origin = 0;
        bool seen_marker = false;
        for (char c : text) {
            if (isspace(static_cast<unsigned char>(c))) continue;
            if (c == '|') {
                if (seen_marker) throw std::invalid_argument("duplicate origin marker");
                seen_marker = true;
                origin = letters.size();
                continue;
            }
            letters += c;
        }
        Alphabet a = alphabet ? *alphabet : [&] {
            std::string distinct;
            for (char c : letters)
                if (distinct.find(c) == std::string::npos) distinct += c;
            return Alphabet(distinct);
        }();
        std::vector<uint8_t> ix;
        ix.reserve(letters.size());
        for (char c : letters) ix.push_back(a.index(c));
        return WordWindow(std::move(a), std::move(ix), seen_marker ? origin : 0);
    }

    const Alphabet& alphabet() const { return alphabet_; }
    size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    size_t origin() const { return origin_; }
    const std::vector<uint8_t>& raw() const { return letters_; }

    long min_index() const { return -static_cast<long>(origin_); }
    long max_index() const { return static_cast<long>(letters_.size() - origin_); }

    bool addressable(long n) const { return n >= min_index() && n < max_index(); }

    uint8_t at(long n) const {
        if (!addressable(n)) throw std::out_of_range("index outside the word window");
        return letters_[static_cast<size_t>(n + static_cast<long>(origin_))];
    }

    char letter_at(long n) const { return alphabet_.letter(at(n)); }

    std::string str(bool with_marker = true) const {
        std::string out;
        out.reserve(letters_.size() + 1);
        for (size_t i = 0; i < letters_.size(); ++i) {
            if (with_marker && i == origin_) out += '|';
            out += alphabet_.letter(letters_[i]);
        }
        if (with_marker && origin_ == letters_.size()) out += '|';
        return out;
    }

    bool operator==(const WordWindow&) const = default;

private:
    Alphabet alphabet_;
    std::vector<uint8_t> letters_;
    size_t origin_ = 0;
};

using ParikhVec = std::vector<long>;

/// Signed Parikh vector of the prefix u_[0,n) (or -Parikh(u_[n,0)) for n < 0).
/// Valid for min_index <= n <= max_index.
inline ParikhVec parikh_prefix(const WordWindow& w, long n) {
    if (n < w.min_index() || n > w.max_index())
        throw std::out_of_range("parikh_prefix index outside the window");
    ParikhVec counts(w.alphabet().size(), 0);
    if (n >= 0)
        for (long i = 0; i < n; ++i) ++counts[w.at(i)];
    else
        for (long i = n; i < 0; ++i) --counts[w.at(i)];
    return counts;
}

inline ParikhVec parikh_of(const WordWindow& w) {
    ParikhVec counts(w.alphabet().size(), 0);
    for (uint8_t ix : w.raw()) ++counts[ix];
    return counts;
}

/// Least c such that every pair of equal-length factors of length <= max_len
/// satisfies ||w|_a - |v|_a| <= c. A lower bound for the balance constant of
/// the infinite word the window was cut from. max_len 0 picks the default
/// min(|w|/10, 1000) so that boundary effects cannot fake imbalance.
inline long balance_constant(const WordWindow& w, size_t max_len = 0) {
    size_t n = w.size();
    if (max_len == 0) max_len = std::min<size_t>(n / 10, 1000);
    if (max_len > n) throw std::invalid_argument("max_len exceeds the window length");
    if (n == 0 || max_len == 0) return 0;
    long c = 0;
    size_t d = w.alphabet().size();
    std::vector<long> prefix(n + 1);
    for (size_t a = 0; a < d; ++a) {
        prefix[0] = 0;
        for (size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (w.raw()[i] == a ? 1 : 0);
        for (size_t len = 1; len <= max_len; ++len) {
            long mx = prefix[len], mn = prefix[len];
            for (size_t i = 1; i + len <= n; ++i) {
                long v = prefix[i + len] - prefix[i];
                if (v > mx) mx = v;
                if (v < mn) mn = v;
            }
            if (mx - mn > c) c = mx - mn;
        }
    }
    return c;
}

/// Empirical letter frequencies |w|_a / |w| as exact rationals. For a
/// c-balanced word this estimates rho_a within c/|w|.
inline std::vector<Rational> letter_frequencies(const WordWindow& w) {
    if (w.empty()) throw std::invalid_argument("letter frequencies of an empty window");
    ParikhVec counts = parikh_of(w);
    std::vector<Rational> freq;
    freq.reserve(counts.size());
    for (long c : counts)
        freq.push_back(make_rational(Integer(c), Integer(static_cast<long>(w.size()))));
    return freq;
}

/// Geometric representation: a window plus one positive length per letter.
struct GeomRep {
    WordWindow window;
    std::vector<QuadElem> lengths;

    GeomRep(WordWindow w, std::vector<QuadElem> ls)
        : window(std::move(w)), lengths(std::move(ls)) {
        if (lengths.size() != window.alphabet().size())
            throw std::invalid_argument("one length per letter required");
        for (const auto& l : lengths)
            if (l.sign() <= 0) throw std::invalid_argument("lengths must be strictly positive");
    }
};

/// x_n for every addressable prefix boundary n in [min_index, max_index],
/// strictly increasing with x_0 = 0; the gap x_{n+1}-x_n is the length of u_n.
inline std::vector<QuadElem> geometric_points(const GeomRep& rep) {
    const WordWindow& w = rep.window;
    const QuadField& f = rep.lengths.front().field();
    std::vector<QuadElem> xs;
    xs.reserve(w.size() + 1);
    QuadElem acc(f, 0);
    // accumulate from the left edge, then shift so that x at n=0 is 0
    xs.push_back(acc);
    for (size_t i = 0; i < w.size(); ++i) {
        acc += rep.lengths[w.raw()[i]];
        xs.push_back(acc);
    }
    QuadElem shift = xs[w.origin()];
    for (auto& x : xs) x -= shift;
    return xs;
}

}  // namespace aperiodic

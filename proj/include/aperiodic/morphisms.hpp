// morphisms.hpp -- morphisms over finite alphabets, incidence matrices, and
// bidirectional fixed points of substitutions.
//
// A substitution has phi(a) = a w and phi(b) = v b with w, v nonempty; the
// bi-infinite word
//
//     ... phi^2(v) phi(v) b | a phi(w) phi^2(w) ...
//
// is then a fixed point. Both one-sided buffers are extended by whole-image
// steps, which never rewrites already-produced letters.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "words.hpp"

namespace aperiodic {

class Morphism {
public:
    Morphism(Alphabet domain, Alphabet target, std::vector<std::vector<uint8_t>> images)
        : domain_(std::move(domain)), target_(std::move(target)), images_(std::move(images)) {
        if (images_.size() != domain_.size())
            throw std::invalid_argument("one image per domain letter required");
        for (const auto& im : images_)
            for (uint8_t ix : im)
                if (ix >= target_.size())
                    throw std::invalid_argument("image letter outside the target alphabet");
    }

    const Alphabet& domain() const { return domain_; }
    const Alphabet& target() const { return target_; }
    bool is_endomorphism() const { return domain_ == target_; }

    const std::vector<uint8_t>& image(uint8_t a) const { return images_.at(a); }

    std::string image_str(uint8_t a) const {
        std::string s;
        for (uint8_t ix : images_.at(a)) s += target_.letter(ix);
        return s;
    }

    bool non_erasing() const {
        for (const auto& im : images_)
            if (im.empty()) return false;
        return true;
    }

    size_t max_image_length() const {
        size_t m = 0;
        for (const auto& im : images_) m = std::max(m, im.size());
        return m;
    }

    /// Letters a with phi(a) = a w, w nonempty (right-extendable seeds).
    std::vector<uint8_t> right_seed_letters() const {
        require_endo();
        std::vector<uint8_t> out;
        for (uint8_t a = 0; a < images_.size(); ++a)
            if (images_[a].size() >= 2 && images_[a].front() == a) out.push_back(a);
        return out;
    }

    /// Letters b with phi(b) = v b, v nonempty (left-extendable seeds).
    std::vector<uint8_t> left_seed_letters() const {
        require_endo();
        std::vector<uint8_t> out;
        for (uint8_t b = 0; b < images_.size(); ++b)
            if (images_[b].size() >= 2 && images_[b].back() == b) out.push_back(b);
        return out;
    }

    bool is_substitution() const {
        return is_endomorphism() && non_erasing() && !right_seed_letters().empty() &&
               !left_seed_letters().empty();
    }

    /// (M)_{ba} = |phi(a)|_b; endomorphisms only.
    IntMatrix incidence() const {
        require_endo();
        IntMatrix m(domain_.size());
        for (uint8_t a = 0; a < images_.size(); ++a)
            for (uint8_t b : images_[a]) m(b, a) += 1;
        return m;
    }

    std::vector<uint8_t> apply_seq(const std::vector<uint8_t>& word) const {
        std::vector<uint8_t> out;
        for (uint8_t a : word) {
            const auto& im = images_.at(a);
            out.insert(out.end(), im.begin(), im.end());
        }
        return out;
    }

    /// psi(... u_{-1} | u_0 u_1 ...): images concatenated, origin on the
    /// boundary between psi(u_{-1}) and psi(u_0).
    WordWindow apply(const WordWindow& w) const {
        if (!(w.alphabet() == domain_))
            throw std::invalid_argument("window alphabet differs from the morphism domain");
        std::vector<uint8_t> out;
        size_t new_origin = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            const auto& im = images_.at(w.raw()[i]);
            out.insert(out.end(), im.begin(), im.end());
            if (i + 1 == w.origin()) new_origin = out.size();
        }
        if (w.origin() == 0) new_origin = 0;
        return WordWindow(target_, std::move(out), new_origin);
    }

    /// phi^k by repeated substitution into the images; endomorphisms only.
    Morphism power(unsigned k) const {
        require_endo();
        if (k == 0) {
            std::vector<std::vector<uint8_t>> id(domain_.size());
            for (uint8_t a = 0; a < domain_.size(); ++a) id[a] = {a};
            return Morphism(domain_, target_, std::move(id));
        }
        Morphism acc = *this;
        for (unsigned i = 1; i < k; ++i) {
            std::vector<std::vector<uint8_t>> im(domain_.size());
            for (uint8_t a = 0; a < domain_.size(); ++a) im[a] = apply_seq(acc.image(a));
            acc = Morphism(domain_, target_, std::move(im));
        }
        return acc;
    }

private:
    void require_endo() const {
        if (!is_endomorphism())
            throw std::invalid_argument("operation requires an endomorphism");
    }

    Alphabet domain_;
    Alphabet target_;
    std::vector<std::vector<uint8_t>> images_;
};

/// DSL "A->AAB;B->AB": one rule per letter, heads define the alphabet order.
/// Erasing images ("B->") are rejected unless require_non_erasing is false.
inline Morphism parse_morphism(const std::string& text, bool require_non_erasing = true) {
    std::string compact;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) compact += c;
    std::string heads;
    std::vector<std::string> image_texts;
    size_t pos = 0;
    while (pos < compact.size()) {
        size_t end = compact.find(';', pos);
        if (end == std::string::npos) end = compact.size();
        std::string rule = compact.substr(pos, end - pos);
        pos = end + 1;
        if (rule.empty()) continue;
        size_t arrow = rule.find("->");
        if (arrow == std::string::npos || arrow != 1)
            throw std::invalid_argument("morphism rule must look like 'A->AAB': " + rule);
        char head = rule[0];
        if (heads.find(head) != std::string::npos)
            throw std::invalid_argument(std::string("duplicate rule for letter '") + head + "'");
        heads += head;
        image_texts.push_back(rule.substr(arrow + 2));
    }
    if (heads.empty()) throw std::invalid_argument("empty morphism");
    Alphabet alphabet(heads);
    std::vector<std::vector<uint8_t>> images;
    for (const auto& im : image_texts) {
        if (require_non_erasing && im.empty())
            throw std::invalid_argument("erasing image not allowed here");
        std::vector<uint8_t> ix;
        for (char c : im) ix.push_back(alphabet.index(c));
        images.push_back(std::move(ix));
    }
    return Morphism(alphabet, alphabet, std::move(images));
}

/// Seed "B|A" (left and right letter at the delimiter) or "|A" (one-sided).
struct FixedPointSeed {
    std::optional<char> left;
    char right = '\0';

    static FixedPointSeed parse(const std::string& text) {
        std::string t;
        for (char c : text)
            if (!isspace(static_cast<unsigned char>(c))) t += c;
        auto bar = t.find('|');
        if (bar == std::string::npos || bar + 2 != t.size() || bar > 1)
            throw std::invalid_argument("seed must look like 'B|A' or '|A'");
        FixedPointSeed s;
        s.right = t[bar + 1];
        if (bar == 1) s.left = t[0];
        return s;
    }

    std::string str() const {
        std::string out = left ? std::string(1, *left) : std::string();
        return out + "|" + std::string(1, right);
    }
};

/// Lazily extended factor of the bidirectional fixed point of a substitution.
/// Single consumer; the produced windows are immutable values.
class FixedPointStream {
public:
    FixedPointStream(Morphism m, FixedPointSeed seed) : m_(std::move(m)) {
        if (!m_.is_endomorphism() || !m_.non_erasing())
            throw std::invalid_argument("fixed points need a non-erasing endomorphism");
        right_letter_ = m_.domain().index(seed.right);
        const auto& rim = m_.image(right_letter_);
        if (rim.size() < 2 || rim.front() != right_letter_)
            throw std::invalid_argument("seed letter '" + std::string(1, seed.right) +
                                        "' is not right-extendable (phi(a) = a w, w nonempty)");
        right_ = {right_letter_};
        if (seed.left) {
            left_letter_ = m_.domain().index(*seed.left);
            const auto& lim = m_.image(*left_letter_);
            if (lim.size() < 2 || lim.back() != *left_letter_)
                throw std::invalid_argument("seed letter '" + std::string(1, *seed.left) +
                                            "' is not left-extendable (phi(b) = v b, v nonempty)");
            left_ = {*left_letter_};
        }
    }

    bool two_sided() const { return left_letter_.has_value(); }

    void extend_to(size_t radius) {
        while (right_.size() < radius) right_ = m_.apply_seq(right_);
        while (two_sided() && left_.size() < radius) left_ = m_.apply_seq(left_);
    }

    /// u_[-radius, radius) for two-sided seeds, u_[0, radius) otherwise.
    WordWindow window(size_t radius) {
        extend_to(radius);
        std::vector<uint8_t> letters;
        size_t origin = 0;
        if (two_sided()) {
            letters.assign(left_.end() - radius, left_.end());
            origin = radius;
        }
        letters.insert(letters.end(), right_.begin(), right_.begin() + radius);
        return WordWindow(m_.domain(), std::move(letters), origin);
    }

private:
    Morphism m_;
    uint8_t right_letter_ = 0;
    std::optional<uint8_t> left_letter_;
    std::vector<uint8_t> left_, right_;
};

struct FixedPointResult {
    WordWindow window;
    unsigned power_used = 1;
    FixedPointSeed seed;
};

/// The factor u_[-radius, radius) of the fixed point of m (or of a power of m
/// when auto_power is set and m itself admits no fixed point with the seed).
/// Without an explicit seed the first admissible pair is chosen.
inline FixedPointResult fixed_point_window(const Morphism& m,
                                           std::optional<FixedPointSeed> seed, size_t radius,
                                           bool auto_power = false, unsigned max_power = 3) {
    if (!m.is_endomorphism() || !m.non_erasing())
        throw std::invalid_argument("fixed points need a non-erasing endomorphism");
    unsigned limit = auto_power ? max_power : 1;
    std::string last_error;
    for (unsigned k = 1; k <= limit; ++k) {
        Morphism mk = m.power(k);
        std::optional<FixedPointSeed> use = seed;
        if (!use) {
            auto rights = mk.right_seed_letters();
            if (rights.empty()) {
                last_error = "no right-extendable letter";
                continue;
            }
            FixedPointSeed s;
            s.right = mk.domain().letter(rights.front());
            auto lefts = mk.left_seed_letters();
            if (!lefts.empty()) s.left = mk.domain().letter(lefts.front());
            use = s;
        }
        try {
            FixedPointStream stream(mk, *use);
            return {stream.window(radius), k, *use};
        } catch (const std::invalid_argument& e) {
            last_error = e.what();
        }
    }
    throw std::invalid_argument("no admissible fixed-point seed up to power " +
                                std::to_string(limit) + ": " + last_error);
}

}  // namespace aperiodic

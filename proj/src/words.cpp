#include "nccf/words.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "nccf/errors.hpp"

namespace nccf {

Word Word::prefix(int len) const {
    return Word(std::vector<int>(letters.begin(), letters.begin() + len));
}

Word Word::suffix(int len) const {
    return Word(std::vector<int>(letters.end() - len, letters.end()));
}

Word concat(const Word& u, const Word& v) {
    std::vector<int> ls;
    ls.reserve(u.letters.size() + v.letters.size());
    ls.insert(ls.end(), u.letters.begin(), u.letters.end());
    ls.insert(ls.end(), v.letters.begin(), v.letters.end());
    return Word(std::move(ls));
}

bool WordOrder::operator()(const Word& a, const Word& b) const {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
}

std::string format_word(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (int l : w.letters) {
        s += 'g';
        s += std::to_string(l);
    }
    return s;
}

Word parse_word(const std::string& s) {
    if (s == "1" || s == "∅") return Word();
    if (s.empty()) throw ParseError("empty word string; the empty word is written \"1\"");
    Word w;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != 'g') throw ParseError("bad word syntax at '" + s.substr(i) + "' in \"" + s + "\"");
        ++i;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw ParseError("letter index missing after 'g' in \"" + s + "\"");
        int idx = 0;
        try {
            idx = std::stoi(s.substr(start, i - start));
        } catch (const std::exception&) {
            throw ParseError("letter index out of range in \"" + s + "\"");
        }
        if (idx < 1) throw ParseError("letter indices are 1-based, got g" + std::to_string(idx));
        w.letters.push_back(idx);
    }
    return w;
}

std::vector<Word> words_of_length(int d, int j) {
    std::vector<Word> out;
    if (d < 1 || j < 0) return out;
    out.reserve(static_cast<std::size_t>(std::pow(double(d), double(j))));
    std::vector<int> cur(j, 1);
    if (j == 0) {
        out.emplace_back();
        return out;
    }
    while (true) {
        out.emplace_back(cur);
        int pos = j - 1;
        while (pos >= 0 && cur[pos] == d) {
            cur[pos] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++cur[pos];
    }
    return out;
}

InitialSegment InitialSegment::validate(int d, std::vector<Word> words) {
    if (d < 1) throw ParseError("alphabet size must be >= 1");
    std::sort(words.begin(), words.end(), WordOrder{});
    words.erase(std::unique(words.begin(), words.end()), words.end());

    InitialSegment seg;
    seg.d_ = d;
    seg.words_ = std::move(words);
    for (const Word& w : seg.words_) {
        seg.max_length_ = std::max(seg.max_length_, w.length());
        for (int l : w.letters)
            if (l < 1 || l > d)
                throw ParseError("word " + format_word(w) + " uses a letter outside [1, " +
                                 std::to_string(d) + "]");
    }
    // Prefix/suffix scan. Together with the scan running over every member
    // this certifies closure under all factors: a factor u of w satisfies
    // w = a u b, the suffix u b is found directly, and u as a prefix of the
    // member u b is found when the scan reaches u b.
    for (const Word& w : seg.words_) {
        for (int len = 0; len < w.length(); ++len) {
            Word pre = w.prefix(len);
            if (!seg.contains(pre)) throw NotFactorClosed(format_word(w), format_word(pre));
            Word suf = w.suffix(len);
            if (!seg.contains(suf)) throw NotFactorClosed(format_word(w), format_word(suf));
        }
    }
    return seg;
}

InitialSegment InitialSegment::ball(int d, int max_len) {
    std::vector<Word> words;
    for (int j = 0; j <= max_len; ++j) {
        auto layer = words_of_length(d, j);
        words.insert(words.end(), layer.begin(), layer.end());
    }
    return validate(d, std::move(words));
}

bool InitialSegment::contains(const Word& w) const { return index_of(w) >= 0; }

int InitialSegment::index_of(const Word& w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w, WordOrder{});
    if (it == words_.end() || !(*it == w)) return -1;
    return static_cast<int>(it - words_.begin());
}

std::vector<Word> InitialSegment::minimal_non_members() const {
    std::vector<Word> out;
    if (empty()) {
        out.emplace_back();  // the empty word generates everything
        return out;
    }
    for (int len = 1; len <= max_length_ + 1; ++len) {
        for (const Word& v : words_of_length(d_, len)) {
            if (contains(v)) continue;
            bool proper_factors_inside = true;
            for (int a = 0; a < v.length() && proper_factors_inside; ++a) {
                for (int b = a; b < v.length(); ++b) {
                    if (b - a + 1 == v.length()) continue;  // v itself
                    Word f(std::vector<int>(v.letters.begin() + a, v.letters.begin() + b + 1));
                    if (!contains(f)) {
                        proper_factors_inside = false;
                        break;
                    }
                }
            }
            if (proper_factors_inside) out.push_back(v);
        }
    }
    return out;
}

bool is_lambda_member(const InitialSegment& seg, const Word& w) { return seg.contains(w); }

}  // namespace nccf

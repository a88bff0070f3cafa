#ifndef NCCF_WORDS_HPP
#define NCCF_WORDS_HPP

#include <string>
#include <vector>

namespace nccf {

// A word of the free semigroup on d letters. Letters are 1-based indices;
// the empty word is the two-sided identity under concatenation.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

    int length() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    Word prefix(int len) const;
    Word suffix(int len) const;

    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return letters != o.letters; }
};

Word concat(const Word& u, const Word& v);

// Length-lex: shorter first, ties broken lexicographically by letter sequence.
// This is the enumeration and basis order used throughout.
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const;
};

// Surface syntax: "g1g2g1"; the empty word prints as "1" and parses from
// "1" or the empty-set symbol. Letters may have several digits.
std::string format_word(const Word& w);
Word parse_word(const std::string& s);

// All d^j words of length j, in lexicographic order.
std::vector<Word> words_of_length(int d, int j);

// A finite factor-closed word set; equivalently, a set whose complement is a
// two-sided ideal of the semigroup. Immutable after construction.
class InitialSegment {
public:
    InitialSegment() = default;

    // Throws NotFactorClosed naming a witness whose prefix or suffix is
    // missing. The empty set is allowed and stands for the empty segment.
    static InitialSegment validate(int d, std::vector<Word> words);

    // The ball {w : |w| <= max_len}.
    static InitialSegment ball(int d, int max_len);

    int alphabet_size() const { return d_; }
    const std::vector<Word>& words() const { return words_; }  // length-lex sorted
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    int max_length() const { return max_length_; }

    bool contains(const Word& w) const;
    // Position in the length-lex order, -1 if absent.
    int index_of(const Word& w) const;

    // Words outside the segment all of whose proper factors lie inside. Every
    // outside word has one of these as a factor, so X^v = 0 on this finite
    // list forces X^v = 0 for the whole complement.
    std::vector<Word> minimal_non_members() const;

private:
    int d_ = 0;
    std::vector<Word> words_;
    int max_length_ = -1;
};

bool is_lambda_member(const InitialSegment& seg, const Word& w);

}  // namespace nccf

#endif

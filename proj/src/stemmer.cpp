#include "memestream/stemmer.hpp"

#include <cstring>

namespace memestream {
namespace {

// Working state over the word buffer. k is the index of the last logical
// character (kept equal to b.size()-1), j the end of the stem a suffix rule
// is conditioned on.
class Porter {
public:
    explicit Porter(std::string_view w) : b(w), k(static_cast<int>(w.size()) - 1), j(0) {}

    std::string run() {
        if (k <= 1) return b;
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b;
    }

private:
    std::string b;
    int k;
    int j;

    bool cons(int i) const {
        switch (b[static_cast<std::size_t>(i)]) {
            case 'a':
            case 'e':
            case 'i':
            case 'o':
            case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Number of VC sequences in b[0..j].
    int m() const {
        int n = 0, i = 0;
        while (true) {
            if (i > j) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_cons(int i) const {
        if (i < 1) return false;
        if (b[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i - 1)]) return false;
        return cons(i);
    }

    // cvc ending at i, where the final consonant is not w, x or y.
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = b[static_cast<std::size_t>(i)];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* s) {
        const int len = static_cast<int>(std::strlen(s));
        if (len > k + 1) return false;
        if (b.compare(static_cast<std::size_t>(k - len + 1), static_cast<std::size_t>(len), s) != 0)
            return false;
        j = k - len;
        return true;
    }

    void set_to(const char* s) {
        b.resize(static_cast<std::size_t>(j + 1));
        b += s;
        k = static_cast<int>(b.size()) - 1;
    }

    void truncate(int new_k) {
        k = new_k;
        b.resize(static_cast<std::size_t>(k + 1));
    }

    void replace_if_stem(const char* s) {
        if (m() > 0) set_to(s);
    }

    void step1ab() {
        if (b[static_cast<std::size_t>(k)] == 's') {
            if (ends("sses"))
                set_to("ss");
            else if (ends("ies"))
                set_to("i");
            else if (b[static_cast<std::size_t>(k - 1)] != 's')
                truncate(k - 1);
        }
        if (ends("eed")) {
            if (m() > 0) truncate(k - 1);
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            truncate(j);
            if (ends("at"))
                set_to("ate");
            else if (ends("bl"))
                set_to("ble");
            else if (ends("iz"))
                set_to("ize");
            else if (double_cons(k)) {
                const char ch = b[static_cast<std::size_t>(k)];
                if (ch != 'l' && ch != 's' && ch != 'z') truncate(k - 1);
            } else {
                j = k;
                if (m() == 1 && cvc(k)) set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b[static_cast<std::size_t>(k)] = 'i';
    }

    struct Rule {
        const char* suffix;
        const char* replacement;
    };

    // First matching suffix decides the step even when its measure
    // condition fails.
    void apply_rules(const Rule* rules, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (ends(rules[i].suffix)) {
                replace_if_stem(rules[i].replacement);
                return;
            }
        }
    }

    void step2() {
        static const Rule rules[] = {
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        };
        apply_rules(rules, sizeof(rules) / sizeof(rules[0]));
    }

    void step3() {
        static const Rule rules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""},
        };
        apply_rules(rules, sizeof(rules) / sizeof(rules[0]));
    }

    void step4() {
        static const char* suffixes[] = {
            "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
            "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
        };
        for (const char* s : suffixes) {
            if (!ends(s)) continue;
            if (std::strcmp(s, "ion") == 0) {
                const char prev = j >= 0 ? b[static_cast<std::size_t>(j)] : '\0';
                if (prev != 's' && prev != 't') return;
            }
            if (m() > 1) truncate(j);
            return;
        }
    }

    void step5() {
        j = k;
        if (b[static_cast<std::size_t>(k)] == 'e') {
            const int a = m();
            if (a > 1 || (a == 1 && !cvc(k - 1))) truncate(k - 1);
        }
        j = k;
        if (b[static_cast<std::size_t>(k)] == 'l' && double_cons(k) && m() > 1) truncate(k - 1);
    }
};

}  // namespace

std::string porter_stem(std::string_view word) {
    for (char c : word)
        if (c < 'a' || c > 'z') return std::string(word);
    return Porter(word).run();
}

}  // namespace memestream

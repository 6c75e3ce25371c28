#include "memestream/entities.hpp"

#include <algorithm>
#include <cctype>

#include "memestream/stemmer.hpp"

namespace memestream {
namespace {

// Bytes >= 0x80 count as word characters so multi-byte UTF-8 text tokenizes
// without any language assumptions; case folding applies to ASCII only.
bool is_word_byte(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           c == '_' || c >= 0x80;
}

bool is_ascii_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char lower_ascii(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = lower_ascii(c);
    return out;
}

bool is_trail_punct(unsigned char c) {
    switch (c) {
        case '.':
        case ',':
        case ';':
        case ':':
        case '!':
        case '?':
        case '\'':
        case '"':
        case ')':
        case ']':
        case '}':
        case '>':
        case '*':
            return true;
        default:
            return false;
    }
}

bool is_lead_punct(unsigned char c) {
    switch (c) {
        case '(':
        case '[':
        case '{':
        case '<':
        case '"':
        case '\'':
        case '*':
        case '.':
        case ',':
        case ';':
        case ':':
        case '!':
        case '?':
            return true;
        default:
            return false;
    }
}

bool valid_host(std::string_view host) {
    if (host.size() < 3 || host.front() == '.' || host.front() == '-' || host.back() == '.' ||
        host.back() == '-')
        return false;
    bool has_dot = false;
    for (unsigned char c : host) {
        if (c == '.')
            has_dot = true;
        else if (!((c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                   c == '-'))
            return false;
    }
    if (!has_dot) return false;
    // top-level label must be alphabetic, length >= 2
    const auto last_dot = host.rfind('.');
    const auto tld = host.substr(last_dot + 1);
    if (tld.size() < 2) return false;
    for (unsigned char c : tld)
        if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'))) return false;
    return true;
}

// Returns the length of the prefix to lowercase (scheme+host), or 0 when the
// token is not a URL.
std::size_t url_host_end(std::string_view tok) {
    const std::string low = lower_copy(tok.substr(0, std::min<std::size_t>(tok.size(), 8)));
    std::size_t host_start = 0;
    if (low.rfind("http://", 0) == 0)
        host_start = 7;
    else if (low.rfind("https://", 0) == 0)
        host_start = 8;

    if (host_start > 0) {
        if (tok.size() <= host_start) return 0;
        const auto slash = tok.find('/', host_start);
        return slash == std::string_view::npos ? tok.size() : slash;
    }
    // schemeless short-link form: host/path
    const auto slash = tok.find('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 > tok.size()) return 0;
    if (!valid_host(tok.substr(0, slash))) return 0;
    return slash;
}

}  // namespace

const char* entity_kind_name(EntityKind k) {
    switch (k) {
        case EntityKind::Hashtag:
            return "hashtag";
        case EntityKind::Mention:
            return "mention";
        case EntityKind::Url:
            return "url";
        case EntityKind::Phrase:
            return "phrase";
        case EntityKind::TweetSelf:
            return "tweet";
    }
    return "?";
}

TokenizedTweet tokenize_tweet(std::string_view text, const StopwordSet& stopwords,
                              const BlindSet* blind) {
    TokenizedTweet out;
    std::vector<std::string> phrase_tokens;
    std::unordered_set<std::string> seen_keys;  // kind-prefixed, for dedup

    auto push_entity = [&](EntityKind kind, std::string key) {
        std::string dedup = std::string(entity_kind_name(kind)) + "\x1f" + key;
        if (seen_keys.insert(std::move(dedup)).second)
            out.entities.push_back(Entity{kind, std::move(key)});
    };

    auto push_word = [&](std::string_view raw) {
        const std::string word = lower_copy(raw);
        if (stopwords.contains(word)) return false;
        out.content_terms.push_back(porter_stem(word));
        return true;
    };

    std::size_t pos = 0;
    const std::size_t n = text.size();
    while (pos < n) {
        while (pos < n && is_ascii_space(static_cast<unsigned char>(text[pos]))) ++pos;
        std::size_t end = pos;
        while (end < n && !is_ascii_space(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos) break;
        std::string_view tok = text.substr(pos, end - pos);
        pos = end;

        while (!tok.empty() && is_trail_punct(static_cast<unsigned char>(tok.back())))
            tok.remove_suffix(1);
        while (!tok.empty() && is_lead_punct(static_cast<unsigned char>(tok.front())))
            tok.remove_prefix(1);
        if (tok.empty()) continue;

        if (const std::size_t host_end = url_host_end(tok); host_end > 0) {
            std::string key = lower_copy(tok.substr(0, host_end));
            key.append(tok.substr(host_end));
            push_entity(EntityKind::Url, std::move(key));
            continue;
        }

        std::size_t i = 0;
        while (i < tok.size()) {
            const char c = tok[i];
            const bool sigil = (c == '#' || c == '@');
            if (sigil && i + 1 < tok.size() && is_word_byte(static_cast<unsigned char>(tok[i + 1])) &&
                (i == 0 || !is_word_byte(static_cast<unsigned char>(tok[i - 1])))) {
                std::size_t j = i + 1;
                while (j < tok.size() && is_word_byte(static_cast<unsigned char>(tok[j]))) ++j;
                const std::string word = lower_copy(tok.substr(i + 1, j - i - 1));
                if (c == '#') {
                    if (blind == nullptr || blind->count(word) == 0) {
                        push_entity(EntityKind::Hashtag, "#" + word);
                        if (!stopwords.contains(word)) out.content_terms.push_back(porter_stem(word));
                    }
                } else {
                    push_entity(EntityKind::Mention, "@" + word);
                }
                i = j;
            } else if (is_word_byte(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < tok.size() && is_word_byte(static_cast<unsigned char>(tok[j]))) ++j;
                if (push_word(tok.substr(i, j - i)))
                    phrase_tokens.push_back(out.content_terms.back());
                i = j;
            } else {
                ++i;
            }
        }
    }

    if (!phrase_tokens.empty()) {
        std::string key;
        for (std::size_t i = 0; i < phrase_tokens.size(); ++i) {
            if (i > 0) key += ' ';
            key += phrase_tokens[i];
        }
        push_entity(EntityKind::Phrase, std::move(key));
    }
    return out;
}

std::vector<Entity> extract_entities(std::string_view text, const StopwordSet& stopwords) {
    return tokenize_tweet(text, stopwords).entities;
}

}  // namespace memestream

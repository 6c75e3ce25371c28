#include "memestream/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "memestream/rng.hpp"

namespace memestream {
namespace {

std::string meme_label(int meme) { return "meme" + std::to_string(meme); }
std::string meme_url(int meme) { return "x.co/m" + std::to_string(meme); }

// Overlapping users are shared pairwise around a ring of communities:
// community i draws k users from the pool it shares with each neighbor, so a
// shared user belongs to exactly two memes.
std::vector<std::string> community_users(const SynthConfig& cfg, int meme) {
    std::vector<std::string> users;
    const int n = cfg.n_users_per_meme;
    int k = static_cast<int>(std::lround(cfg.user_overlap * n / 2.0));
    if (cfg.n_memes < 2) k = 0;
    const int prev_pool = (meme + cfg.n_memes - 1) % cfg.n_memes;
    for (int j = 0; j < k; ++j) users.push_back("s" + std::to_string(prev_pool) + "_" + std::to_string(j));
    for (int j = 0; j < k; ++j) users.push_back("s" + std::to_string(meme) + "_" + std::to_string(j));
    for (int j = 2 * k; j < n; ++j)
        users.push_back("u" + std::to_string(meme) + "_" + std::to_string(j));
    return users;
}

void validate(const SynthConfig& cfg) {
    if (cfg.n_memes < 1 || cfg.n_users_per_meme < 1 || cfg.tokens_per_tweet < 0 ||
        cfg.vocab_per_meme < 0 || cfg.shared_vocab < 0)
        throw std::invalid_argument("synth: counts must be positive");
    for (double f : {cfg.shared_token_prob, cfg.user_overlap, cfg.mention_prob, cfg.retweet_prob,
                     cfg.url_prob, cfg.noise_tweet_fraction})
        if (f < 0.0 || f > 1.0) throw std::invalid_argument("synth: fractions must be in [0,1]");
    if (cfg.tweets_per_meme_per_hour <= 0.0 || cfg.duration_hours <= 0.0)
        throw std::invalid_argument("synth: rate and duration must be > 0");
    if (cfg.noise_tweet_fraction >= 1.0)
        throw std::invalid_argument("synth: noise_tweet_fraction must be < 1");
}

}  // namespace

std::vector<std::string> synth_labels(const SynthConfig& cfg) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(cfg.n_memes));
    for (int i = 0; i < cfg.n_memes; ++i) out.push_back(meme_label(i));
    return out;
}

std::vector<Tweet> generate(const SynthConfig& cfg) {
    validate(cfg);
    std::mt19937_64 rng(cfg.rng_seed);

    struct Event {
        std::int64_t ts;
        std::size_t seq;
        Tweet tweet;
    };
    std::vector<Event> events;
    std::size_t seq = 0;

    auto exp_step = [&](double rate) { return -std::log1p(-uniform01(rng)) / rate; };

    auto gen_stream = [&](double rate, int meme /* -1 = noise */) {
        const bool noise = meme < 0;
        const std::vector<std::string> users =
            noise ? [&] {
                std::vector<std::string> nu;
                const int n = std::max(2 * cfg.n_users_per_meme, 10);
                for (int j = 0; j < n; ++j) nu.push_back("nu" + std::to_string(j));
                return nu;
            }()
                  : community_users(cfg, meme);
        const int vocab = noise ? std::max(2 * cfg.vocab_per_meme, 20) : cfg.vocab_per_meme;

        double t_hours = 0.0;
        while (true) {
            t_hours += exp_step(rate);
            if (t_hours > cfg.duration_hours) break;
            Tweet tw;
            tw.timestamp = std::max<std::int64_t>(1, std::llround(t_hours * 3600.0));
            tw.author_id = users[bounded_rand(rng, users.size())];

            std::string text;
            auto append = [&text](const std::string& tok) {
                if (!text.empty()) text += ' ';
                text += tok;
            };
            if (vocab > 0) {
                for (int k = 0; k < cfg.tokens_per_tweet; ++k) {
                    if (!noise && cfg.shared_vocab > 0 && uniform01(rng) < cfg.shared_token_prob)
                        append("sw" + std::to_string(bounded_rand(rng, static_cast<std::uint64_t>(cfg.shared_vocab))));
                    else if (noise)
                        append("nw" + std::to_string(bounded_rand(rng, static_cast<std::uint64_t>(vocab))));
                    else
                        append("m" + std::to_string(meme) + "w" +
                               std::to_string(bounded_rand(rng, static_cast<std::uint64_t>(vocab))));
                }
            }
            if (uniform01(rng) < cfg.url_prob)
                append(noise ? "x.co/n" + std::to_string(seq) : meme_url(meme));
            if (uniform01(rng) < cfg.mention_prob && users.size() > 1) {
                std::string other;
                do {
                    other = users[bounded_rand(rng, users.size())];
                } while (other == tw.author_id);
                append("@" + other);
            }
            if (uniform01(rng) < cfg.retweet_prob && users.size() > 1) {
                std::string source;
                do {
                    source = users[bounded_rand(rng, users.size())];
                } while (source == tw.author_id);
                tw.retweet_of_author = source;
            }
            tw.text = std::move(text);
            if (!noise) tw.labels.push_back(meme_label(meme));
            events.push_back(Event{tw.timestamp, seq++, std::move(tw)});
        }
    };

    for (int i = 0; i < cfg.n_memes; ++i) gen_stream(cfg.tweets_per_meme_per_hour, i);
    if (cfg.noise_tweet_fraction > 0.0) {
        const double total = cfg.tweets_per_meme_per_hour * cfg.n_memes;
        gen_stream(cfg.noise_tweet_fraction / (1.0 - cfg.noise_tweet_fraction) * total, -1);
    }

    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        return a.ts != b.ts ? a.ts < b.ts : a.seq < b.seq;
    });

    std::vector<Tweet> out;
    out.reserve(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        events[i].tweet.id = "t" + std::to_string(i);
        out.push_back(std::move(events[i].tweet));
    }
    return out;
}

void write_jsonl(std::ostream& out, std::span<const Tweet> tweets) {
    for (const Tweet& t : tweets) out << tweet_to_jsonl(t) << '\n';
}

std::vector<std::pair<std::string, std::string>> generate_follower_graph(const SynthConfig& cfg) {
    validate(cfg);
    // Aligned but realistic: users follow a fraction of their community plus
    // a couple of unrelated accounts; noise users get background edges only.
    constexpr double kCommunityFollowProb = 0.5;
    constexpr int kBackgroundFollows = 3;

    std::mt19937_64 rng(cfg.rng_seed * 0x9E3779B97F4A7C15ULL + 17);
    std::vector<std::pair<std::string, std::string>> edges;

    std::vector<std::string> everyone;
    for (int i = 0; i < cfg.n_memes; ++i)
        for (const std::string& u : community_users(cfg, i)) everyone.push_back(u);
    if (cfg.noise_tweet_fraction > 0.0) {
        const int n = std::max(2 * cfg.n_users_per_meme, 10);
        for (int j = 0; j < n; ++j) everyone.push_back("nu" + std::to_string(j));
    }
    std::sort(everyone.begin(), everyone.end());
    everyone.erase(std::unique(everyone.begin(), everyone.end()), everyone.end());

    for (int i = 0; i < cfg.n_memes; ++i) {
        const std::vector<std::string> users = community_users(cfg, i);
        for (const std::string& a : users)
            for (const std::string& b : users)
                if (a != b && uniform01(rng) < kCommunityFollowProb) edges.emplace_back(a, b);
    }
    for (const std::string& a : everyone) {
        for (int j = 0; j < kBackgroundFollows; ++j) {
            const std::string& b = everyone[bounded_rand(rng, everyone.size())];
            if (a != b) edges.emplace_back(a, b);
        }
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

void write_edges(std::ostream& out, std::span<const std::pair<std::string, std::string>> edges) {
    for (const auto& [a, b] : edges) out << a << ' ' << b << '\n';
}

}  // namespace memestream

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "memestream/ingest.hpp"

namespace memestream {

// Planted-meme stream generator. Every meme gets a label (emitted only in the
// "labels" field, never in the text), a vocabulary, one canonical URL, and a
// user community; noise tweets carry random vocabulary, throwaway URLs and no
// label. Timestamps are Poisson arrivals at the configured per-meme rate,
// reported in whole seconds starting at 1.
struct SynthConfig {
    int n_memes = 10;
    double tweets_per_meme_per_hour = 10.0;
    int vocab_per_meme = 20;
    int shared_vocab = 0;            // size of the cross-meme vocabulary pool
    double shared_token_prob = 0.0;  // chance a content token comes from the shared pool
    int n_users_per_meme = 8;
    double user_overlap = 0.0;       // fraction of each community drawn from a shared user pool
    double mention_prob = 0.2;
    double retweet_prob = 0.2;
    double url_prob = 0.3;
    double noise_tweet_fraction = 0.0;
    double duration_hours = 6.0;
    std::uint64_t rng_seed = 1;
    int tokens_per_tweet = 8;
};

// Tweets sorted by timestamp, ids assigned in stream order. Same config and
// seed give a byte-identical stream.
std::vector<Tweet> generate(const SynthConfig& cfg);

void write_jsonl(std::ostream& out, std::span<const Tweet> tweets);

// Distinct labels of the config, in meme order.
std::vector<std::string> synth_labels(const SynthConfig& cfg);

// Follower edges aligned with the meme communities (each community is a
// directed clique); noise users stay isolated.
std::vector<std::pair<std::string, std::string>> generate_follower_graph(const SynthConfig& cfg);

void write_edges(std::ostream& out, std::span<const std::pair<std::string, std::string>> edges);

}  // namespace memestream

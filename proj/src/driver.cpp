#include "memestream/driver.hpp"

#include <istream>

#include <json.hpp>

namespace memestream {

using nlohmann::json;

std::size_t drive(Engine& engine, const TweetSource& next, const SnapshotSink& on_snapshot) {
    const std::int64_t dt = engine.config().window.delta_t;
    const auto step_end = [dt](std::int64_t ts) { return ((ts + dt - 1) / dt) * dt; };

    std::vector<Tweet> batch;
    std::int64_t now = 0;
    bool active = false;
    std::size_t steps = 0;

    const auto flush = [&] {
        on_snapshot(engine.step(now, batch));
        batch.clear();
        ++steps;
    };

    for (std::optional<Tweet> t = next(); t.has_value(); t = next()) {
        const std::int64_t end = step_end(t->timestamp);
        if (!active) {
            now = end;
            active = true;
        }
        while (end > now) {
            flush();
            if (end > now + dt && engine.window_tweet_count() == 0 && engine.clusters().empty())
                now = end;  // drained gap: nothing left to expire or retire
            else
                now += dt;
        }
        batch.push_back(std::move(*t));
    }
    if (active) flush();
    return steps;
}

std::size_t drive(Engine& engine, std::span<const Tweet> tweets, const SnapshotSink& on_snapshot) {
    std::size_t i = 0;
    return drive(
        engine,
        [&]() -> std::optional<Tweet> {
            if (i >= tweets.size()) return std::nullopt;
            return tweets[i++];
        },
        on_snapshot);
}

namespace {

json cluster_to_json(const SnapshotCluster& c) {
    json j;
    j["id"] = c.id;
    j["tweet_ids"] = c.tweet_ids;
    return j;
}

SnapshotCluster cluster_from_json(const json& j) {
    SnapshotCluster c;
    c.id = j.at("id").get<int>();
    for (const auto& v : j.at("tweet_ids")) c.tweet_ids.push_back(v.get<std::string>());
    return c;
}

}  // namespace

std::string snapshot_to_jsonl(const ClusteringSnapshot& snap) {
    json j;
    j["window_end"] = snap.window_end;
    j["clusters"] = json::array();
    for (const SnapshotCluster& c : snap.clusters) j["clusters"].push_back(cluster_to_json(c));
    j["retired"] = json::array();
    for (const SnapshotCluster& c : snap.retired) j["retired"].push_back(cluster_to_json(c));
    return j.dump();
}

ClusteringSnapshot snapshot_from_jsonl(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed snapshot JSON: ") + e.what());
    }
    try {
        ClusteringSnapshot snap;
        snap.window_end = j.at("window_end").get<std::int64_t>();
        for (const auto& c : j.at("clusters")) snap.clusters.push_back(cluster_from_json(c));
        for (const auto& c : j.at("retired")) snap.retired.push_back(cluster_from_json(c));
        return snap;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid snapshot record: ") + e.what());
    }
}

std::vector<ClusteringSnapshot> read_snapshots(std::istream& in) {
    std::vector<ClusteringSnapshot> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(snapshot_from_jsonl(line));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")", line_no);
        }
    }
    return out;
}

}  // namespace memestream

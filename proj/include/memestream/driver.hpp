#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "memestream/engine.hpp"

namespace memestream {

using SnapshotSink = std::function<void(const ClusteringSnapshot&)>;
using TweetSource = std::function<std::optional<Tweet>()>;

// Feeds a timestamp-ordered tweet source through engine steps. Step ends sit
// on the delta_t grid (T = ceil(ts/delta_t)*delta_t); empty steps between
// batches still run so expiry and retirement happen on schedule, but fully
// drained gaps are skipped. Returns the number of steps executed.
std::size_t drive(Engine& engine, const TweetSource& next, const SnapshotSink& on_snapshot);

std::size_t drive(Engine& engine, std::span<const Tweet> tweets, const SnapshotSink& on_snapshot);

std::string snapshot_to_jsonl(const ClusteringSnapshot& snap);
ClusteringSnapshot snapshot_from_jsonl(std::string_view line);  // throws ParseError
std::vector<ClusteringSnapshot> read_snapshots(std::istream& in);

}  // namespace memestream

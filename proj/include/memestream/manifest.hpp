#pragma once

#include <string>

#include "memestream/engine.hpp"

namespace memestream {

inline constexpr const char* kVersion = "0.1.0";

// Everything needed to reproduce a run byte-for-byte: the full engine
// configuration plus input/output paths. Written next to every output.
struct RunManifest {
    std::string version = kVersion;
    std::string command = "run";  // run | eval | sweep
    EngineConfig engine;
    std::string input;
    std::string truth;           // eval only
    std::string stopwords;       // empty = built-in default path
    std::string blind_labels;    // optional
    std::string follower_graph;  // optional
    std::string out_dir;
    std::string sweep_delta_t_list;  // sweep only, comma separated
    std::string sweep_ell_list;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);  // throws std::runtime_error

    void write_file(const std::string& path) const;
    static RunManifest read_file(const std::string& path);
};

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& s);
const char* window_model_name(WindowModel m);
WindowModel window_model_from_name(const std::string& s);

}  // namespace memestream

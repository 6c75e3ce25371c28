#include "memestream/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace memestream {

using nlohmann::json;

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Psc:
            return "psc";
        case Algorithm::B1:
            return "b1";
        case Algorithm::B2:
            return "b2";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& s) {
    if (s == "psc") return Algorithm::Psc;
    if (s == "b1") return Algorithm::B1;
    if (s == "b2") return Algorithm::B2;
    throw std::runtime_error("unknown algorithm: " + s);
}

const char* window_model_name(WindowModel m) {
    switch (m) {
        case WindowModel::Sliding:
            return "sliding";
        case WindowModel::Landmark:
            return "landmark";
        case WindowModel::Damped:
            return "damped";
    }
    return "?";
}

WindowModel window_model_from_name(const std::string& s) {
    if (s == "sliding") return WindowModel::Sliding;
    if (s == "landmark") return WindowModel::Landmark;
    if (s == "damped") return WindowModel::Damped;
    throw std::runtime_error("unknown window model: " + s);
}

std::string RunManifest::to_json() const {
    json j;
    j["version"] = version;
    j["command"] = command;
    j["algorithm"] = algorithm_name(engine.algorithm);
    j["k"] = engine.k;
    j["n_sigmas"] = engine.n_sigmas;
    j["delta_t"] = engine.window.delta_t;
    j["ell"] = engine.window.ell;
    j["window_model"] = window_model_name(engine.window.model);
    j["lambda"] = engine.window.lambda;
    j["similarity"] = engine.similarity.mode == SimilarityMode::Max ? "max" : "linear";
    j["weights"] = {engine.similarity.weights.user, engine.similarity.weights.content,
                    engine.similarity.weights.tweet, engine.similarity.weights.network};
    j["b2_alpha"] = engine.b2_alpha;
    j["seed"] = engine.rng_seed;
    j["input"] = input;
    j["truth"] = truth;
    j["stopwords"] = stopwords;
    j["blind_labels"] = blind_labels;
    j["follower_graph"] = follower_graph;
    j["out_dir"] = out_dir;
    j["sweep_delta_t_list"] = sweep_delta_t_list;
    j["sweep_ell_list"] = sweep_ell_list;
    return j.dump(2);
}

RunManifest RunManifest::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("manifest: malformed JSON: ") + e.what());
    }
    RunManifest m;
    try {
        m.version = j.at("version").get<std::string>();
        m.command = j.at("command").get<std::string>();
        m.engine.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
        m.engine.k = j.at("k").get<int>();
        m.engine.n_sigmas = j.at("n_sigmas").get<double>();
        m.engine.window.delta_t = j.at("delta_t").get<std::int64_t>();
        m.engine.window.ell = j.at("ell").get<int>();
        m.engine.window.model = window_model_from_name(j.at("window_model").get<std::string>());
        m.engine.window.lambda = j.at("lambda").get<double>();
        m.engine.similarity.mode =
            j.at("similarity").get<std::string>() == "max" ? SimilarityMode::Max : SimilarityMode::Linear;
        const auto w = j.at("weights");
        m.engine.similarity.weights = {w.at(0).get<double>(), w.at(1).get<double>(),
                                       w.at(2).get<double>(), w.at(3).get<double>()};
        m.engine.b2_alpha = j.at("b2_alpha").get<double>();
        m.engine.rng_seed = j.at("seed").get<std::uint64_t>();
        m.input = j.at("input").get<std::string>();
        m.truth = j.value("truth", "");
        m.stopwords = j.at("stopwords").get<std::string>();
        m.blind_labels = j.at("blind_labels").get<std::string>();
        m.follower_graph = j.at("follower_graph").get<std::string>();
        m.out_dir = j.at("out_dir").get<std::string>();
        m.sweep_delta_t_list = j.value("sweep_delta_t_list", "");
        m.sweep_ell_list = j.value("sweep_ell_list", "");
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("manifest: ") + e.what());
    }
    return m;
}

void RunManifest::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << to_json() << '\n';
}

RunManifest RunManifest::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

}  // namespace memestream

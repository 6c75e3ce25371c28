// memestream: protomeme stream clustering over social-media message streams.
// Subcommands: synth (labeled stream generator), run (cluster a stream),
// eval (score snapshots against ground truth), sweep (window-parameter grid).
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "memestream/driver.hpp"
#include "memestream/engine.hpp"
#include "memestream/eval.hpp"
#include "memestream/manifest.hpp"
#include "memestream/synth.hpp"

namespace ms = memestream;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_stopwords_path() {
#ifdef MEMESTREAM_DEFAULT_STOPWORDS
    return MEMESTREAM_DEFAULT_STOPWORDS;
#else
    return "data/stopwords_en.txt";
#endif
}

ms::StopwordSet load_stopwords(const std::string& path) {
    try {
        return ms::StopwordSet::from_file(path.empty() ? default_stopwords_path() : path);
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
}

ms::BlindSet load_blind_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open blind-labels file: " + path);
    ms::BlindSet out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') line.erase(0, 1);
        for (char& c : line)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
        out.insert(line);
    }
    return out;
}

// Flags shared by run and sweep; mirrors RunManifest so runs are reproducible.
struct EngineFlags {
    std::string algorithm = "psc";
    std::string similarity = "max";
    std::vector<double> weights = {0.25, 0.25, 0.25, 0.25};
    std::int64_t delta_t = 3600;
    int ell = 6;
    double n_sigmas = 2.0;
    int k = 11;
    std::uint64_t seed = 0;
    double b2_alpha = 0.5;
    std::string window_model = "sliding";
    double lambda = 1.0;
    std::string stopwords;
    std::string blind_labels;
    std::string follower_graph;

    void add_to(CLI::App& app) {
        app.add_option("--algorithm", algorithm, "Clustering algorithm")
            ->check(CLI::IsMember({"psc", "b1", "b2"}));
        app.add_option("--similarity", similarity, "Protomeme similarity combinator (psc)")
            ->check(CLI::IsMember({"max", "linear"}));
        app.add_option("--weights", weights, "Linear-combination weights w_u,w_c,w_t,w_n (sum to 1)")
            ->delimiter(',')
            ->expected(4);
        app.add_option("--delta-t", delta_t, "Step size in seconds");
        app.add_option("--ell", ell, "Window length in steps");
        app.add_option("--n-sigmas", n_sigmas, "Outlier threshold: d > mean + n*sigma");
        app.add_option("--k", k, "Initial cluster count");
        app.add_option("--seed", seed, "RNG seed (all randomness flows from it)");
        app.add_option("--b2-alpha", b2_alpha, "B2 content/network mix");
        app.add_option("--window-model", window_model, "Window model")
            ->check(CLI::IsMember({"sliding", "landmark", "damped"}));
        app.add_option("--lambda", lambda, "Damped-window decay rate (default 1, unused elsewhere)");
        app.add_option("--stopwords", stopwords, "Stopword file, one word per line");
        app.add_option("--blind-labels", blind_labels,
                       "File of hashtags to remove from protomemes and text");
        app.add_option("--follower-graph", follower_graph,
                       "Edge list 'follower followee' per line (required for b2)");
    }

    ms::RunManifest to_manifest() const {
        ms::RunManifest m;
        m.engine.algorithm = ms::algorithm_from_name(algorithm);
        m.engine.similarity.mode =
            similarity == "max" ? ms::SimilarityMode::Max : ms::SimilarityMode::Linear;
        m.engine.similarity.weights = {weights[0], weights[1], weights[2], weights[3]};
        m.engine.window.delta_t = delta_t;
        m.engine.window.ell = ell;
        m.engine.window.model = ms::window_model_from_name(window_model);
        m.engine.window.lambda = lambda;
        m.engine.n_sigmas = n_sigmas;
        m.engine.k = k;
        m.engine.rng_seed = seed;
        m.engine.b2_alpha = b2_alpha;
        m.stopwords = stopwords;
        m.blind_labels = blind_labels;
        m.follower_graph = follower_graph;
        return m;
    }
};

void configure_engine(ms::Engine& engine, const ms::RunManifest& m) {
    if (!m.blind_labels.empty()) engine.set_blind_labels(load_blind_labels(m.blind_labels));
    if (m.engine.algorithm == ms::Algorithm::B2) {
        if (m.follower_graph.empty()) throw UsageError("--algorithm b2 requires --follower-graph");
        std::ifstream g(m.follower_graph);
        if (!g) throw IoError("cannot open follower graph: " + m.follower_graph);
        engine.load_follower_graph(g);
    }
}

int run_from_manifest(ms::RunManifest m) {
    std::ifstream input(m.input);
    if (!input) throw IoError("cannot open input: " + m.input);
    const ms::StopwordSet stopwords = load_stopwords(m.stopwords);

    ms::Engine engine(m.engine, stopwords);
    configure_engine(engine, m);

    std::error_code ec;
    fs::create_directories(m.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + m.out_dir);
    m.write_file((fs::path(m.out_dir) / "manifest.json").string());

    std::ofstream snaps(fs::path(m.out_dir) / "snapshots.jsonl");
    if (!snaps) throw IoError("cannot write snapshots in " + m.out_dir);

    ms::JsonlTweetReader reader(input);
    ms::GroundTruth truth;
    bool labels_seen = false;
    std::vector<ms::WindowMetrics> rows;
    std::size_t n_tweets = 0;

    const auto source = [&]() -> std::optional<ms::Tweet> {
        auto t = reader.next();
        if (t) {
            ++n_tweets;
            if (!t->labels.empty()) {
                labels_seen = true;
                truth.add(t->id, t->timestamp, t->labels);
            }
        }
        return t;
    };
    const auto sink = [&](const ms::ClusteringSnapshot& snap) {
        snaps << ms::snapshot_to_jsonl(snap) << '\n';
        if (!labels_seen) return;
        ms::WindowMetrics wm = ms::evaluate_window(snap, truth, m.engine.window);
        if (wm.skipped)
            std::cerr << "warning: window " << wm.window_end << " skipped (empty evaluation universe)\n";
        wm.conf = ms::ConfusionMatrix{};  // run emits metrics.csv only
        wm.jaccard.clear();
        wm.label_scores.clear();
        rows.push_back(std::move(wm));
        truth.prune_older(ms::window_interval(snap.window_end, m.engine.window).lower_exclusive);
    };

    const std::size_t steps = ms::drive(engine, source, sink);

    if (labels_seen) {
        std::ofstream metrics(fs::path(m.out_dir) / "metrics.csv");
        if (!metrics) throw IoError("cannot write metrics in " + m.out_dir);
        ms::write_metrics_csv(metrics, rows);
    }

    std::cout << "run: " << n_tweets << " tweets, " << steps << " steps, " << engine.total_skipped()
              << " skipped records, " << engine.clusters().size() << " live clusters\n";
    return kExitOk;
}

int cmd_eval(const std::string& snapshots_path, const std::string& truth_path,
             const std::string& out_dir, const std::string& manifest_path, std::int64_t delta_t,
             int ell) {
    ms::WindowConfig wc;
    if (!manifest_path.empty()) {
        try {
            wc = ms::RunManifest::read_file(manifest_path).engine.window;
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
    } else {
        wc.delta_t = delta_t;
        wc.ell = ell;
    }

    std::ifstream sf(snapshots_path);
    if (!sf) throw IoError("cannot open snapshots: " + snapshots_path);
    const std::vector<ms::ClusteringSnapshot> snaps = ms::read_snapshots(sf);

    std::ifstream tf(truth_path);
    if (!tf) throw IoError("cannot open truth: " + truth_path);
    const ms::GroundTruth truth = ms::GroundTruth::from_jsonl(tf);

    std::vector<ms::WindowMetrics> rows;
    for (const ms::ClusteringSnapshot& snap : snaps) {
        rows.push_back(ms::evaluate_window(snap, truth, wc));
        if (rows.back().skipped)
            std::cerr << "warning: window " << snap.window_end << " skipped (empty evaluation universe)\n";
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);
    {
        ms::RunManifest m;
        m.command = "eval";
        m.engine.window = wc;
        m.input = snapshots_path;
        m.truth = truth_path;
        m.out_dir = out_dir;
        m.write_file((fs::path(out_dir) / "manifest.json").string());
    }
    {
        std::ofstream out(fs::path(out_dir) / "metrics.csv");
        if (!out) throw IoError("cannot write metrics.csv");
        ms::write_metrics_csv(out, rows);
    }
    {
        std::ofstream out(fs::path(out_dir) / "mcr.csv");
        if (!out) throw IoError("cannot write mcr.csv");
        ms::write_mcr_csv(out, rows);
    }
    {
        std::ofstream out(fs::path(out_dir) / "confusion.jsonl");
        if (!out) throw IoError("cannot write confusion.jsonl");
        ms::write_confusion_jsonl(out, rows);
    }
    std::cout << "eval: " << rows.size() << " windows scored\n";
    return kExitOk;
}

std::size_t sweep_threads(std::size_t cells) {
    std::size_t n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("MEMESTREAM_THREADS"); env != nullptr) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) n = static_cast<std::size_t>(v);
    }
    if (n == 0) n = 1;
    return std::min(n, cells);
}

int cmd_sweep(const EngineFlags& flags, const std::string& input, const std::string& out_dir,
              const std::vector<std::int64_t>& delta_t_list, const std::vector<int>& ell_list) {
    std::ifstream in(input);
    if (!in) throw IoError("cannot open input: " + input);
    std::vector<ms::Tweet> tweets;
    ms::GroundTruth truth;
    {
        ms::JsonlTweetReader reader(in);
        while (auto t = reader.next()) {
            if (!t->labels.empty()) truth.add(t->id, t->timestamp, t->labels);
            tweets.push_back(std::move(*t));
        }
    }
    const ms::StopwordSet stopwords = load_stopwords(flags.stopwords);

    struct Cell {
        std::int64_t delta_t;
        int ell;
        double mean_lfk = 0.0;
        double mean_nmi = 0.0;
        std::size_t windows = 0;
    };
    std::vector<Cell> cells;
    for (std::int64_t dt : delta_t_list)
        for (int ell : ell_list) cells.push_back(Cell{dt, ell, 0.0, 0.0, 0});

    const ms::RunManifest base = flags.to_manifest();
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mu;

    const auto worker = [&]() {
        for (std::size_t i = cursor.fetch_add(1); i < cells.size(); i = cursor.fetch_add(1)) {
            if (failed.load()) return;
            try {
                Cell& cell = cells[i];
                ms::RunManifest m = base;
                m.engine.window.delta_t = cell.delta_t;
                m.engine.window.ell = cell.ell;
                ms::Engine engine(m.engine, stopwords);
                configure_engine(engine, m);
                double sum_lfk = 0.0, sum_nmi = 0.0;
                std::size_t n = 0;
                ms::drive(engine, tweets, [&](const ms::ClusteringSnapshot& snap) {
                    const ms::WindowMetrics wm = ms::evaluate_window(snap, truth, m.engine.window);
                    if (wm.skipped) return;
                    sum_lfk += wm.lfk_nmi;
                    sum_nmi += wm.nmi;
                    ++n;
                });
                cell.windows = n;
                cell.mean_lfk = n > 0 ? sum_lfk / static_cast<double>(n) : 0.0;
                cell.mean_nmi = n > 0 ? sum_nmi / static_cast<double>(n) : 0.0;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) first_error = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < sweep_threads(cells.size()); ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (failed.load()) throw IoError("sweep cell failed: " + first_error);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);

    ms::RunManifest m = base;
    m.command = "sweep";
    m.input = input;
    m.out_dir = out_dir;
    for (std::size_t i = 0; i < delta_t_list.size(); ++i)
        m.sweep_delta_t_list += (i > 0 ? "," : "") + std::to_string(delta_t_list[i]);
    for (std::size_t i = 0; i < ell_list.size(); ++i)
        m.sweep_ell_list += (i > 0 ? "," : "") + std::to_string(ell_list[i]);
    m.write_file((fs::path(out_dir) / "manifest.json").string());

    std::ofstream out(fs::path(out_dir) / "sweep.csv");
    if (!out) throw IoError("cannot write sweep.csv");
    out << "delta_t,ell,mean_lfk_nmi,mean_nmi,n_windows\n";
    char buf[64];
    for (const Cell& c : cells) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g", c.mean_lfk, c.mean_nmi);
        out << c.delta_t << ',' << c.ell << ',' << buf << ',' << c.windows << '\n';
    }
    std::cout << "sweep: " << cells.size() << " cells over " << tweets.size() << " tweets\n";
    return kExitOk;
}

int cmd_synth(const ms::SynthConfig& cfg, const std::string& out_path, const std::string& graph_out,
              const std::string& labels_out) {
    const std::vector<ms::Tweet> tweets = ms::generate(cfg);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write output: " + out_path);
    ms::write_jsonl(out, tweets);
    if (!graph_out.empty()) {
        std::ofstream g(graph_out);
        if (!g) throw IoError("cannot write graph: " + graph_out);
        const auto edges = ms::generate_follower_graph(cfg);
        ms::write_edges(g, edges);
    }
    if (!labels_out.empty()) {
        std::ofstream l(labels_out);
        if (!l) throw IoError("cannot write labels: " + labels_out);
        for (const std::string& label : ms::synth_labels(cfg)) l << label << '\n';
    }
    std::cout << "synth: " << tweets.size() << " tweets -> " << out_path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memestream: protomeme stream clustering"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Cluster a JSONL tweet stream");
    EngineFlags run_flags;
    std::string run_input, run_out, run_manifest;
    run->add_option("--input", run_input, "Tweet stream (JSONL)");
    run->add_option("--out", run_out, "Output directory");
    run->add_option("--from-manifest", run_manifest, "Reproduce a previous run from its manifest");
    run_flags.add_to(*run);

    auto* ev = app.add_subcommand("eval", "Score snapshots against labeled tweets");
    std::string ev_snaps, ev_truth, ev_out, ev_manifest;
    std::int64_t ev_delta_t = 3600;
    int ev_ell = 6;
    ev->add_option("--snapshots", ev_snaps, "snapshots.jsonl from a run")->required();
    ev->add_option("--truth", ev_truth, "JSONL stream with labels")->required();
    ev->add_option("--out", ev_out, "Output directory")->required();
    ev->add_option("--manifest", ev_manifest, "Run manifest to take window parameters from");
    ev->add_option("--delta-t", ev_delta_t, "Step size in seconds");
    ev->add_option("--ell", ev_ell, "Window length in steps");

    auto* sy = app.add_subcommand("synth", "Generate a labeled synthetic stream");
    ms::SynthConfig sy_cfg;
    std::string sy_out, sy_graph, sy_labels;
    sy->add_option("--out", sy_out, "Output JSONL file")->required();
    sy->add_option("--graph-out", sy_graph, "Also write a community-aligned follower graph");
    sy->add_option("--labels-out", sy_labels, "Also write the distinct label list");
    sy->add_option("--n-memes", sy_cfg.n_memes);
    sy->add_option("--rate", sy_cfg.tweets_per_meme_per_hour, "Tweets per meme per hour");
    sy->add_option("--vocab-per-meme", sy_cfg.vocab_per_meme);
    sy->add_option("--shared-vocab", sy_cfg.shared_vocab, "Shared vocabulary pool size");
    sy->add_option("--shared-token-prob", sy_cfg.shared_token_prob);
    sy->add_option("--users-per-meme", sy_cfg.n_users_per_meme);
    sy->add_option("--user-overlap", sy_cfg.user_overlap);
    sy->add_option("--mention-prob", sy_cfg.mention_prob);
    sy->add_option("--retweet-prob", sy_cfg.retweet_prob);
    sy->add_option("--url-prob", sy_cfg.url_prob);
    sy->add_option("--noise-fraction", sy_cfg.noise_tweet_fraction);
    sy->add_option("--duration-hours", sy_cfg.duration_hours);
    sy->add_option("--tokens-per-tweet", sy_cfg.tokens_per_tweet);
    sy->add_option("--seed", sy_cfg.rng_seed);

    auto* sw = app.add_subcommand("sweep", "Grid over window length and step size");
    EngineFlags sw_flags;
    std::string sw_input, sw_out;
    std::vector<std::int64_t> sw_delta_ts;
    std::vector<int> sw_ells;
    sw->add_option("--input", sw_input, "Tweet stream (JSONL)")->required();
    sw->add_option("--out", sw_out, "Output directory")->required();
    sw->add_option("--delta-t-list", sw_delta_ts, "Step sizes, seconds")->delimiter(',')->required();
    sw->add_option("--ell-list", sw_ells, "Window lengths, steps")->delimiter(',')->required();
    sw_flags.add_to(*sw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            ms::RunManifest m;
            if (!run_manifest.empty()) {
                try {
                    m = ms::RunManifest::read_file(run_manifest);
                } catch (const std::runtime_error& e) {
                    throw IoError(e.what());
                }
                if (!run_out.empty()) m.out_dir = run_out;
            } else {
                if (run_input.empty() || run_out.empty())
                    throw UsageError("run requires --input and --out (or --from-manifest)");
                m = run_flags.to_manifest();
                m.input = run_input;
                m.out_dir = run_out;
            }
            if (m.engine.similarity.mode == ms::SimilarityMode::Linear &&
                !m.engine.similarity.weights.valid())
                throw UsageError("--weights must be in [0,1] and sum to 1");
            return run_from_manifest(std::move(m));
        }
        if (ev->parsed()) {
            if (ev_manifest.empty() && (ev->count("--delta-t") == 0 || ev->count("--ell") == 0))
                throw UsageError("eval requires --manifest or both --delta-t and --ell");
            return cmd_eval(ev_snaps, ev_truth, ev_out, ev_manifest, ev_delta_t, ev_ell);
        }
        if (sy->parsed()) {
            try {
                return cmd_synth(sy_cfg, sy_out, sy_graph, sy_labels);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
        if (sw->parsed()) return cmd_sweep(sw_flags, sw_input, sw_out, sw_delta_ts, sw_ells);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ms::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

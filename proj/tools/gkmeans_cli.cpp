// gkmeans: benchmark driver for graph-accelerated incremental k-means.
//
// Subcommands:
//   gen         synthesize a Gaussian-mixture corpus (fvecs)
//   oracle-knn  exact nearest-neighbor lists by brute force (ivecs)
//   build-graph approximate nearest-neighbor graph construction (ivecs/fvecs)
//   cluster     full pipeline: obtain a graph, run clustering, write labels
//   eval        report distortion / recall@1 / co-membership curve
//
// The default seed comes from the GKMEANS_SEED environment variable when the
// --seed flag is absent; the flag always wins. Exit code 0 on success, 1 on
// any error (message on stderr).

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "gkm/baselines.hpp"
#include "gkm/config.hpp"
#include "gkm/dataset.hpp"
#include "gkm/graph_build.hpp"
#include "gkm/graph_kmeans.hpp"
#include "gkm/io.hpp"
#include "gkm/knn_graph.hpp"
#include "gkm/metrics_trace.hpp"
#include "gkm/partition.hpp"
#include "gkm/synthetic.hpp"

namespace {

std::uint64_t env_default_seed() {
    const char* env = std::getenv("GKMEANS_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    errno = 0;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0') {
        throw std::invalid_argument("GKMEANS_SEED is not a valid unsigned integer: " +
                                    std::string(env));
    }
    return static_cast<std::uint64_t>(value);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    return flag.has_value() ? *flag : env_default_seed();
}

struct GenArgs {
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint32_t centers = 0;
    double sigma = 0.0;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct OracleArgs {
    std::string input;
    std::uint32_t kappa = 0;
    std::string out;
};

struct BuildArgs {
    std::string input;
    std::uint32_t kappa = 50;
    std::uint32_t xi = 50;
    std::uint32_t tau = 10;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string dists;
};

struct ClusterArgs {
    std::string input;
    std::uint32_t k = 0;
    std::string mode = "boost";
    std::string graph = "build";
    std::uint32_t kappa = 50;
    std::uint32_t xi = 50;
    std::uint32_t tau = 10;
    std::uint32_t max_iter = 30;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string trace;
};

struct EvalArgs {
    std::string input;
    std::string partition;
    std::string exact_graph;
    std::string approx_graph;
};

void run_gen(const GenArgs& a) {
    const gkm::Mixture mix = gkm::gen_mixture(a.n, a.d, a.centers, a.sigma, resolve_seed(a.seed));
    gkm::write_fvecs(a.out, mix.data);
}

void run_oracle(const OracleArgs& a) {
    const gkm::Dataset data = gkm::read_fvecs(a.input);
    const gkm::KnnGraph graph = gkm::brute_force_knn(data, a.kappa);
    gkm::write_graph(a.out, graph);
}

void run_build(const BuildArgs& a) {
    const gkm::Dataset data = gkm::read_fvecs(a.input);
    gkm::Config config;
    config.kappa = a.kappa;
    config.xi = a.xi;
    config.tau = a.tau;
    config.seed = resolve_seed(a.seed);
    const gkm::KnnGraph graph = gkm::build_knn_graph(data, a.kappa, config);
    gkm::write_graph(a.out, graph);
    if (!a.dists.empty()) gkm::write_graph_distances(a.dists, graph);
}

// The graph source is chosen by the --graph flag: "build" runs the
// self-bootstrapping constructor, "exact" brute-forces ground truth,
// "random" uses a fresh random graph, and "file:PATH" loads stored rows.
gkm::KnnGraph obtain_graph(const gkm::Dataset& data, const ClusterArgs& a,
                           std::uint64_t graph_seed) {
    if (a.graph == "exact") return gkm::brute_force_knn(data, a.kappa);
    if (a.graph == "random") {
        std::mt19937_64 gen(graph_seed);
        return gkm::random_graph_init(data, a.kappa, gen);
    }
    if (a.graph == "build") {
        gkm::Config config;
        config.kappa = a.kappa;
        config.xi = a.xi;
        config.tau = a.tau;
        config.seed = graph_seed;
        return gkm::build_knn_graph(data, a.kappa, config);
    }
    if (a.graph.rfind("file:", 0) == 0) {
        const std::string path = a.graph.substr(5);
        if (path.empty()) throw std::invalid_argument("--graph file: requires a path");
        return gkm::read_graph(data, path);
    }
    throw std::invalid_argument("unknown --graph source: " + a.graph +
                                " (expected build, exact, random, or file:PATH)");
}

void run_cluster(const ClusterArgs& a) {
    const gkm::Dataset data = gkm::read_fvecs(a.input);

    gkm::Config config;
    config.k = a.k;
    config.kappa = a.kappa;
    config.xi = a.xi;
    config.tau = a.tau;
    config.max_iter = a.max_iter;
    config.mode = gkm::parse_mode(a.mode);
    config.validate(data.size());

    // Phase seeds are drawn from one master stream in a fixed order so that
    // a single --seed value pins the whole pipeline.
    std::mt19937_64 master(resolve_seed(a.seed));
    const std::uint64_t graph_seed = master();
    const std::uint64_t cluster_seed = master();

    const gkm::KnnGraph graph = obtain_graph(data, a, graph_seed);

    config.seed = cluster_seed;
    gkm::MetricsTrace trace;
    const gkm::Partition part =
        gkm::gk_means(data, a.k, graph, config, a.trace.empty() ? nullptr : &trace);

    gkm::write_partition(a.out, part);
    if (!a.trace.empty()) gkm::write_trace_csv(a.trace, trace);
}

void run_eval(const EvalArgs& a) {
    const gkm::Dataset data = gkm::read_fvecs(a.input);
    const std::vector<std::uint32_t> labels = gkm::read_partition_labels(a.partition);
    if (labels.size() != data.size()) {
        throw std::invalid_argument("partition has " + std::to_string(labels.size()) +
                                    " labels for " + std::to_string(data.size()) + " samples");
    }
    std::uint32_t k = 0;
    for (const std::uint32_t v : labels) k = std::max(k, v + 1);
    const gkm::Partition part(data, labels, k);

    std::cout << "distortion," << gkm::format_double(gkm::distortion(data, part)) << "\n";

    if (!a.approx_graph.empty() && a.exact_graph.empty()) {
        throw std::invalid_argument("recall@1 needs ground truth: --approx-graph requires "
                                    "--exact-graph");
    }
    if (a.exact_graph.empty()) return;

    const gkm::KnnGraph exact = gkm::read_graph(data, a.exact_graph);
    if (!a.approx_graph.empty()) {
        const gkm::KnnGraph approx = gkm::read_graph(data, a.approx_graph);
        std::cout << "recall_at_1," << gkm::format_double(gkm::recall_at_1(approx, exact))
                  << "\n";
    }

    std::cout << "rank,co_membership_rate\n";
    for (std::uint32_t rank = 1; rank <= exact.kappa(); ++rank) {
        std::cout << rank << ","
                  << gkm::format_double(gkm::co_membership_rate(part, exact, rank)) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-accelerated incremental k-means benchmark driver"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "synthesize a Gaussian-mixture corpus");
    gen->add_option("--n", gen_args.n, "number of samples")->required();
    gen->add_option("--d", gen_args.d, "dimensionality")->required();
    gen->add_option("--centers", gen_args.centers, "number of mixture components")->required();
    gen->add_option("--sigma", gen_args.sigma, "per-axis component noise")->required();
    gen->add_option("--seed", gen_args.seed, "random seed (default: $GKMEANS_SEED or 0)");
    gen->add_option("--out", gen_args.out, "output fvecs path")->required();

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle-knn", "exact neighbor lists by brute force");
    oracle->add_option("--input", oracle_args.input, "input fvecs path")->required();
    oracle->add_option("--kappa", oracle_args.kappa, "neighbors per sample")->required();
    oracle->add_option("--out", oracle_args.out, "output ivecs path")->required();

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build-graph", "approximate neighbor-graph construction");
    build->add_option("--input", build_args.input, "input fvecs path")->required();
    build->add_option("--kappa", build_args.kappa, "neighbors per sample")->capture_default_str();
    build->add_option("--xi", build_args.xi, "average refinement-cluster size")->capture_default_str();
    build->add_option("--tau", build_args.tau, "construction rounds")->capture_default_str();
    build->add_option("--seed", build_args.seed, "random seed (default: $GKMEANS_SEED or 0)");
    build->add_option("--out", build_args.out, "output ivecs path for neighbor ids")->required();
    build->add_option("--dists", build_args.dists, "optional fvecs path for squared distances");

    ClusterArgs cluster_args;
    CLI::App* cluster = app.add_subcommand("cluster", "graph-accelerated k-means pipeline");
    cluster->add_option("--input", cluster_args.input, "input fvecs path")->required();
    cluster->add_option("--k", cluster_args.k, "number of clusters")->required();
    cluster->add_option("--mode", cluster_args.mode, "move rule")
        ->capture_default_str()
        ->check(CLI::IsMember({"boost", "traditional"}));
    cluster->add_option("--graph", cluster_args.graph,
                        "graph source: build | exact | random | file:PATH")->capture_default_str();
    cluster->add_option("--kappa", cluster_args.kappa, "neighbors per sample")->capture_default_str();
    cluster->add_option("--xi", cluster_args.xi, "average refinement-cluster size")->capture_default_str();
    cluster->add_option("--tau", cluster_args.tau, "graph-construction rounds")->capture_default_str();
    cluster->add_option("--max-iter", cluster_args.max_iter, "maximum optimization passes")->capture_default_str();
    cluster->add_option("--seed", cluster_args.seed, "random seed (default: $GKMEANS_SEED or 0)");
    cluster->add_option("--out", cluster_args.out, "output ivecs path for labels")->required();
    cluster->add_option("--trace", cluster_args.trace, "optional CSV metrics path");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "report metrics for a stored partition");
    eval->add_option("--input", eval_args.input, "input fvecs path")->required();
    eval->add_option("--partition", eval_args.partition, "stored labels (ivecs)")->required();
    eval->add_option("--exact-graph", eval_args.exact_graph, "exact neighbor ids (ivecs)");
    eval->add_option("--approx-graph", eval_args.approx_graph, "approximate neighbor ids (ivecs)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) run_gen(gen_args);
        if (oracle->parsed()) run_oracle(oracle_args);
        if (build->parsed()) run_build(build_args);
        if (cluster->parsed()) run_cluster(cluster_args);
        if (eval->parsed()) run_eval(eval_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

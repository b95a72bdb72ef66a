#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kcnas/report.hpp"

namespace {

struct CliArgs {
    std::string algorithm = "zigzag";
    kcnas::RunManifest manifest;
    std::string activation = "relu";
    std::string optimizer = "adam";
};

void add_common_flags(CLI::App& cmd, CliArgs& args) {
    cmd.add_option("--dataset", args.manifest.dataset_csv, "CSV dataset path (alternative to --surface)");
    cmd.add_option("--schema", args.manifest.schema_json, "column schema JSON for --dataset");
    cmd.add_option("--surface", args.manifest.surface,
                   "synthetic surface kind: unimodal|multimodal|constant|checkerboard-adversarial|noisy");
    cmd.add_option("--max-ihls", args.manifest.max_ihls, "largest initial hidden layer size (x axis)");
    cmd.add_option("--df-max-exp", args.manifest.df_exponent_max,
                   "largest division-factor exponent; df axis is 2..2^N");
    cmd.add_flag("--include-df-one", args.manifest.include_df_one, "prepend df = 1 to the df axis");
    cmd.add_option("--input-dim", args.manifest.input_dim, "input width for synthetic-surface runs");
    cmd.add_option("--alpha", args.manifest.alpha, "k-completeness mixing weight");
    cmd.add_option("--epochs", args.manifest.train.epochs, "training epochs per candidate");
    cmd.add_option("--batch", args.manifest.train.batch_size, "minibatch size");
    cmd.add_option("--lr", args.manifest.train.learning_rate, "learning rate");
    cmd.add_option("--split", args.manifest.train.split_fraction, "train split fraction");
    cmd.add_option("--activation", args.activation, "hidden activation: relu|sigmoid|tanh");
    cmd.add_option("--optimizer", args.optimizer, "optimizer: sgd|adam");
    cmd.add_option("--seed", args.manifest.seed, "master seed (surface, split, training)");
    cmd.add_option("--out", args.manifest.out_dir, "output directory")->required();
}

void finish_manifest(CliArgs& args) {
    args.manifest.train.hidden_activation = kcnas::parse_activation(args.activation);
    args.manifest.train.optimizer = kcnas::parse_optimizer(args.optimizer);
    args.manifest.train.seed = args.manifest.seed;
}

void print_result(const kcnas::SearchResult& result) {
    const auto& best = result.best;
    std::cout << "algorithm: " << kcnas::algorithm_name(result.algorithm) << '\n'
              << "best point: ihls=" << best.point.ihls << " df=" << best.point.df << '\n'
              << "hidden sizes: [";
    for (std::size_t i = 0; i < best.architecture.hidden_sizes.size(); ++i)
        std::cout << (i ? "," : "") << best.architecture.hidden_sizes[i];
    std::cout << "]\n"
              << "train accuracy: " << best.train_accuracy << '\n'
              << "test accuracy: " << best.test_accuracy << '\n'
              << "k-completeness: " << best.k_completeness << '\n'
              << "genuine evaluations: " << result.evaluations << '\n'
              << "elapsed seconds: " << result.elapsed_seconds << '\n';
}

void print_report(const kcnas::ComparisonReport& report) {
    std::printf("%-12s %14s %12s %10s %10s %14s\n", "algorithm", "seconds", "evaluations", "train",
                "test", "k-completeness");
    for (const auto& row : report.rows) {
        std::printf("%-12s %14.3f %12lld %10.4f %10.4f %14.4f\n",
                    std::string(kcnas::algorithm_name(row.algorithm)).c_str(), row.completion_seconds,
                    static_cast<long long>(row.evaluations), row.train_accuracy, row.test_accuracy,
                    row.k_completeness);
    }
    std::printf("speed ratios (seconds): brute/diagonal %.3f, brute/zigzag %.3f, diagonal/zigzag %.3f\n",
                report.seconds_brute_over_diagonal, report.seconds_brute_over_zigzag,
                report.seconds_diagonal_over_zigzag);
    std::printf("evaluation ratios: brute/diagonal %.3f, brute/zigzag %.3f, diagonal/zigzag %.3f\n",
                report.evals_brute_over_diagonal, report.evals_brute_over_zigzag,
                report.evals_diagonal_over_zigzag);
}

int fail_with_json(const std::string& message) {
    nlohmann::ordered_json doc{{"error", {{"message", message}}}};
    std::cerr << doc.dump() << std::endl;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-completeness-guided neural architecture search over a 2D (ihls x df) grid"};
    app.require_subcommand(1);

    CliArgs search_args;
    CLI::App* search = app.add_subcommand("search", "run one traversal algorithm");
    search->add_option("--algorithm", search_args.algorithm, "brute|diagonal|zigzag");
    add_common_flags(*search, search_args);

    CliArgs compare_args;
    CLI::App* compare = app.add_subcommand("compare", "run all three traversal algorithms");
    add_common_flags(*compare, compare_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // plain help text, exit 0
    } catch (const CLI::ParseError& e) {
        return fail_with_json(e.what());
    }

    try {
        if (search->parsed()) {
            finish_manifest(search_args);
            search_args.manifest.algorithms = {kcnas::parse_algorithm(search_args.algorithm)};
            print_result(kcnas::run_search(search_args.manifest));
        } else {
            finish_manifest(compare_args);
            compare_args.manifest.algorithms = {kcnas::AlgorithmId::brute_force,
                                                kcnas::AlgorithmId::diagonal, kcnas::AlgorithmId::zigzag};
            print_report(kcnas::compare_algorithms(compare_args.manifest));
        }
    } catch (const std::exception& e) {
        return fail_with_json(e.what());
    }
    return 0;
}

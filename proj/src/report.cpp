#include "kcnas/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>

#include "kcnas/csv.hpp"
#include "kcnas/data.hpp"
#include "kcnas/scoring.hpp"

namespace kcnas {

namespace fs = std::filesystem;

namespace {

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void write_json_file(const fs::path& path, const nlohmann::ordered_json& doc) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_visit_log(const fs::path& path, const SearchResult& result) {
    auto out = open_out(path);
    out << "order,ihls,df\n";
    for (std::size_t i = 0; i < result.visit_log.size(); ++i)
        out << i << ',' << result.visit_log[i].ihls << ',' << result.visit_log[i].df << '\n';
}

void write_best_history(const fs::path& path, const EvalRecord& best) {
    auto out = open_out(path);
    out << "epoch,loss,accuracy\n";
    for (std::size_t e = 0; e < best.loss_history.size(); ++e)
        out << e + 1 << ',' << fmt(best.loss_history[e]) << ',' << fmt(best.accuracy_history[e]) << '\n';
}

void write_grid(const fs::path& path, const SearchResult& result) {
    auto out = open_out(path);
    out << "ihls,df,train_accuracy,test_accuracy,k_completeness\n";
    for (const EvalRecord& r : result.records)
        out << r.point.ihls << ',' << r.point.df << ',' << fmt(r.train_accuracy) << ','
            << fmt(r.test_accuracy) << ',' << fmt(r.k_completeness) << '\n';
}

// Deterministic projection of a result: wall-clock time lives in timing.json
// so reruns of the same manifest produce byte-identical result documents.
nlohmann::ordered_json result_document(const SearchResult& result, bool synthetic) {
    nlohmann::ordered_json doc = to_json(result);
    doc.erase("elapsed_seconds");
    nlohmann::ordered_json files{{"manifest", "manifest.json"},
                                 {"timing", "timing.json"},
                                 {"visit_log", "visit_log.csv"},
                                 {"best_history", "best_history.csv"},
                                 {"grid", "grid.csv"}};
    if (synthetic) files["surface"] = "surface.csv";
    doc["files"] = std::move(files);
    return doc;
}

void write_run_directory(const fs::path& dir, const RunManifest& manifest, const SearchResult& result,
                         const SurfaceOracle* surface) {
    fs::create_directories(dir);
    write_json_file(dir / "manifest.json", to_json(manifest));
    write_json_file(dir / "result.json", result_document(result, surface != nullptr));
    double oracle_seconds = 0.0;
    for (const EvalRecord& r : result.records) oracle_seconds += r.duration_seconds;
    write_json_file(dir / "timing.json",
                    nlohmann::ordered_json{{"elapsed_seconds", result.elapsed_seconds},
                                           {"oracle_seconds", oracle_seconds}});
    write_visit_log(dir / "visit_log.csv", result);
    write_best_history(dir / "best_history.csv", result.best);
    write_grid(dir / "grid.csv", result);
    if (surface) {
        auto out = open_out(dir / "surface.csv");
        surface->write_csv(out);
    }
}

SearchResult dispatch(AlgorithmId id, const SearchSpace& space, Oracle& oracle) {
    switch (id) {
        case AlgorithmId::brute_force: return brute_force_search(space, oracle);
        case AlgorithmId::diagonal: return diagonal_search(space, oracle);
        case AlgorithmId::zigzag: return zigzag_search(space, oracle);
    }
    throw std::logic_error("dispatch: unknown algorithm");
}

// Oracle inputs shared by run_search and compare_algorithms. The dataset
// lives on the heap so the oracle's reference survives moves of the context.
struct RunContext {
    SearchSpace space;
    std::unique_ptr<Dataset> dataset;
    std::optional<SurfaceOracle> surface;
    std::optional<MlpOracle> mlp;

    Oracle& oracle() { return surface ? static_cast<Oracle&>(*surface) : *mlp; }
    const SurfaceOracle* surface_ptr() const { return surface ? &*surface : nullptr; }
};

RunContext make_context(const RunManifest& manifest) {
    if (!manifest.surface.empty()) {
        SearchSpace space = build_space(manifest.max_ihls, manifest.df_exponent_max,
                                        manifest.include_df_one, manifest.input_dim);
        SurfaceOracle surface = make_surface(parse_surface_kind(manifest.surface), space, manifest.seed);
        return {std::move(space), nullptr, std::move(surface), std::nullopt};
    }
    auto dataset = std::make_unique<Dataset>(load_dataset(manifest.dataset_csv, manifest.schema_json,
                                                          manifest.seed, manifest.train.split_fraction));
    SearchSpace space = build_space(manifest.max_ihls, manifest.df_exponent_max, manifest.include_df_one,
                                    static_cast<int>(dataset->features.cols()));
    RunContext context{std::move(space), std::move(dataset), std::nullopt, std::nullopt};
    TrainConfig config = manifest.train;
    config.seed = manifest.seed;
    context.mlp.emplace(context.space, *context.dataset, config, manifest.alpha);
    return context;
}

const AlgorithmRow& row_for(const ComparisonReport& report, AlgorithmId id) {
    for (const auto& row : report.rows)
        if (row.algorithm == id) return row;
    throw std::logic_error("comparison report is missing an algorithm row");
}

}  // namespace

void validate(const RunManifest& manifest) {
    const bool has_dataset = !manifest.dataset_csv.empty();
    const bool has_surface = !manifest.surface.empty();
    if (has_dataset == has_surface)
        throw std::invalid_argument("manifest: exactly one of dataset or surface must be set");
    if (has_surface) parse_surface_kind(manifest.surface);
    if (has_dataset) {
        if (manifest.schema_json.empty())
            throw std::invalid_argument("manifest: dataset runs need a schema file");
        if (!fs::exists(manifest.dataset_csv))
            throw std::invalid_argument("manifest: dataset file '" + manifest.dataset_csv + "' does not exist");
        if (!fs::exists(manifest.schema_json))
            throw std::invalid_argument("manifest: schema file '" + manifest.schema_json + "' does not exist");
    }
    if (manifest.max_ihls < 1) throw std::invalid_argument("manifest: max_ihls must be >= 1");
    if (manifest.df_exponent_max < 0) throw std::invalid_argument("manifest: df_exponent_max must be >= 0");
    if (manifest.df_exponent_max == 0 && !manifest.include_df_one)
        throw std::invalid_argument("manifest: df axis is empty");
    if (manifest.input_dim < 1) throw std::invalid_argument("manifest: input_dim must be >= 1");
    if (manifest.alpha < 0.0 || manifest.alpha > 1.0)
        throw std::invalid_argument("manifest: alpha must be in [0, 1]");
    if (manifest.algorithms.empty()) throw std::invalid_argument("manifest: no algorithm selected");
    if (manifest.train.epochs < 1) throw std::invalid_argument("manifest: epochs must be >= 1");
    if (manifest.train.batch_size < 1) throw std::invalid_argument("manifest: batch size must be >= 1");
    if (manifest.train.learning_rate <= 0.0)
        throw std::invalid_argument("manifest: learning rate must be positive");
    if (manifest.train.split_fraction <= 0.0 || manifest.train.split_fraction >= 1.0)
        throw std::invalid_argument("manifest: split fraction must be in (0, 1)");
    if (manifest.out_dir.empty()) throw std::invalid_argument("manifest: out_dir must be set");
}

nlohmann::ordered_json to_json(const RunManifest& manifest) {
    nlohmann::ordered_json algorithms = nlohmann::ordered_json::array();
    for (AlgorithmId id : manifest.algorithms) algorithms.push_back(std::string(algorithm_name(id)));
    return nlohmann::ordered_json{
        {"dataset", manifest.dataset_csv},
        {"schema", manifest.schema_json},
        {"surface", manifest.surface},
        {"max_ihls", manifest.max_ihls},
        {"df_exponent_max", manifest.df_exponent_max},
        {"include_df_one", manifest.include_df_one},
        {"input_dim", manifest.input_dim},
        {"alpha", manifest.alpha},
        {"seed", manifest.seed},
        {"algorithms", std::move(algorithms)},
        {"train",
         {{"epochs", manifest.train.epochs},
          {"batch_size", manifest.train.batch_size},
          {"learning_rate", manifest.train.learning_rate},
          {"split_fraction", manifest.train.split_fraction},
          {"hidden_activation", std::string(activation_name(manifest.train.hidden_activation))},
          {"optimizer", std::string(optimizer_name(manifest.train.optimizer))}}},
        {"out_dir", manifest.out_dir},
    };
}

RunManifest manifest_from_json(const nlohmann::json& doc) {
    RunManifest manifest;
    manifest.dataset_csv = doc.value("dataset", std::string{});
    manifest.schema_json = doc.value("schema", std::string{});
    manifest.surface = doc.value("surface", std::string{});
    manifest.max_ihls = doc.value("max_ihls", 64);
    manifest.df_exponent_max = doc.value("df_exponent_max", 6);
    manifest.include_df_one = doc.value("include_df_one", false);
    manifest.input_dim = doc.value("input_dim", 11);
    manifest.alpha = doc.value("alpha", 0.5);
    manifest.seed = doc.value("seed", std::uint64_t{42});
    if (doc.contains("algorithms"))
        for (const auto& name : doc["algorithms"]) manifest.algorithms.push_back(parse_algorithm(name.get<std::string>()));
    if (doc.contains("train")) {
        const auto& t = doc["train"];
        manifest.train.epochs = t.value("epochs", manifest.train.epochs);
        manifest.train.batch_size = t.value("batch_size", manifest.train.batch_size);
        manifest.train.learning_rate = t.value("learning_rate", manifest.train.learning_rate);
        manifest.train.split_fraction = t.value("split_fraction", manifest.train.split_fraction);
        if (t.contains("hidden_activation"))
            manifest.train.hidden_activation = parse_activation(t["hidden_activation"].get<std::string>());
        if (t.contains("optimizer"))
            manifest.train.optimizer = parse_optimizer(t["optimizer"].get<std::string>());
    }
    manifest.out_dir = doc.value("out_dir", std::string{});
    return manifest;
}

nlohmann::ordered_json to_json(const ComparisonReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        rows.push_back(nlohmann::ordered_json{
            {"algorithm", std::string(algorithm_name(row.algorithm))},
            {"completion_seconds", row.completion_seconds},
            {"evaluations", row.evaluations},
            {"train_accuracy", row.train_accuracy},
            {"test_accuracy", row.test_accuracy},
            {"k_completeness", row.k_completeness},
            {"best_point", {{"ihls", row.best_point.ihls}, {"df", row.best_point.df}}},
            {"best_hidden_sizes", row.best_hidden_sizes},
        });
    }
    return nlohmann::ordered_json{
        {"rows", std::move(rows)},
        {"ratios",
         {{"seconds",
           {{"brute_force_over_diagonal", report.seconds_brute_over_diagonal},
            {"brute_force_over_zigzag", report.seconds_brute_over_zigzag},
            {"diagonal_over_zigzag", report.seconds_diagonal_over_zigzag}}},
          {"evaluations",
           {{"brute_force_over_diagonal", report.evals_brute_over_diagonal},
            {"brute_force_over_zigzag", report.evals_brute_over_zigzag},
            {"diagonal_over_zigzag", report.evals_diagonal_over_zigzag}}}}},
    };
}

SearchResult run_search(const RunManifest& manifest) {
    validate(manifest);
    RunContext context = make_context(manifest);
    const SearchResult result = dispatch(manifest.algorithms.front(), context.space, context.oracle());
    write_run_directory(manifest.out_dir, manifest, result, context.surface_ptr());
    return result;
}

ComparisonReport compare_algorithms(const RunManifest& manifest) {
    RunManifest full = manifest;
    full.algorithms = {AlgorithmId::brute_force, AlgorithmId::diagonal, AlgorithmId::zigzag};
    validate(full);
    RunContext context = make_context(full);

    ComparisonReport report;
    for (AlgorithmId id : full.algorithms) {
        // each run builds a fresh run-local cache, so no results leak between algorithms
        const SearchResult result = dispatch(id, context.space, context.oracle());
        write_run_directory(fs::path(full.out_dir) / std::string(algorithm_name(id)), full, result,
                            context.surface_ptr());
        AlgorithmRow row;
        row.algorithm = id;
        row.completion_seconds = result.elapsed_seconds;
        row.evaluations = result.evaluations;
        row.train_accuracy = result.best.train_accuracy;
        row.test_accuracy = result.best.test_accuracy;
        row.k_completeness = result.best.k_completeness;
        row.best_point = result.best.point;
        row.best_hidden_sizes = result.best.architecture.hidden_sizes;
        report.rows.push_back(std::move(row));
    }

    const AlgorithmRow& brute = row_for(report, AlgorithmId::brute_force);
    const AlgorithmRow& diagonal = row_for(report, AlgorithmId::diagonal);
    const AlgorithmRow& zigzag = row_for(report, AlgorithmId::zigzag);
    report.seconds_brute_over_diagonal = brute.completion_seconds / diagonal.completion_seconds;
    report.seconds_brute_over_zigzag = brute.completion_seconds / zigzag.completion_seconds;
    report.seconds_diagonal_over_zigzag = diagonal.completion_seconds / zigzag.completion_seconds;
    report.evals_brute_over_diagonal =
        static_cast<double>(brute.evaluations) / static_cast<double>(diagonal.evaluations);
    report.evals_brute_over_zigzag =
        static_cast<double>(brute.evaluations) / static_cast<double>(zigzag.evaluations);
    report.evals_diagonal_over_zigzag =
        static_cast<double>(diagonal.evaluations) / static_cast<double>(zigzag.evaluations);

    fs::create_directories(full.out_dir);
    write_json_file(fs::path(full.out_dir) / "manifest.json", to_json(full));
    write_json_file(fs::path(full.out_dir) / "comparison.json", to_json(report));
    {
        auto out = open_out(fs::path(full.out_dir) / "comparison.csv");
        out << "algorithm,completion_seconds,evaluations,train_accuracy,test_accuracy,k_completeness,"
               "best_architecture\n";
        for (const auto& row : report.rows) {
            std::string arch = "[";
            for (std::size_t i = 0; i < row.best_hidden_sizes.size(); ++i) {
                if (i > 0) arch += ' ';
                arch += std::to_string(row.best_hidden_sizes[i]);
            }
            arch += ']';
            out << algorithm_name(row.algorithm) << ',' << fmt(row.completion_seconds) << ','
                << row.evaluations << ',' << fmt(row.train_accuracy) << ',' << fmt(row.test_accuracy)
                << ',' << fmt(row.k_completeness) << ',' << arch << '\n';
        }
    }
    return report;
}

}  // namespace kcnas

// Command-line surface: dataset ingestion, valuation methods, and the
// experiment protocols, with JSON reports and CSV curves per run.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dvrl/baselines.hpp"
#include "dvrl/csv.hpp"
#include "dvrl/engine.hpp"
#include "dvrl/experiments.hpp"
#include "dvrl/preprocess.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string task = "classification";
    std::string train_path;
    std::string valid_path;
    std::string test_path;
    std::string flags_path;
    std::string values_path;
    std::string label_column = "label";
    std::vector<std::string> categorical;
    std::string method = "dvrl";
    std::string out_dir = "out";
    std::uint64_t seed = 0;

    // DVRL hyperparameters
    int outer_iterations = 1000;
    int inner_iterations = 200;
    int batch_predictor = 256;
    int batch_valuation = 2000;
    int window = 20;
    double alpha = 0.001;
    double beta = 0.01;
    bool cold_start = false;
    std::string predictor = "logistic";
    std::vector<int> hidden = {32};
    std::vector<int> estimator_hidden = {100, 100};

    // method / experiment specific
    int permutations = 1000;
    double truncation = -1.0; // negative: default 0.001 * perf(full)
    int fit_iterations = 300;
    double ratio = 0.2;
    double sigma = 0.0;
    std::string end = "both";
    std::vector<double> fractions = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3,
                                     0.35, 0.4, 0.45, 0.5};
    std::vector<int> sizes = {10, 100, 400};
};

dvrl::TaskKind task_kind(const RunConfig& cfg) {
    if (cfg.task == "classification") return dvrl::TaskKind::Classification;
    if (cfg.task == "regression") return dvrl::TaskKind::Regression;
    throw dvrl::ValidationError("task must be 'classification' or 'regression'");
}

dvrl::PredictorConfig predictor_config(const RunConfig& cfg) {
    dvrl::PredictorConfig pcfg;
    if (cfg.predictor == "logistic") {
        if (task_kind(cfg) == dvrl::TaskKind::Regression) {
            throw dvrl::ValidationError("logistic predictor requires a classification task");
        }
        pcfg.kind = dvrl::PredictorKind::LogisticRegression;
    } else if (cfg.predictor == "mlp") {
        pcfg.kind = task_kind(cfg) == dvrl::TaskKind::Classification
                        ? dvrl::PredictorKind::MlpClassifier
                        : dvrl::PredictorKind::MlpRegressor;
        for (int h : cfg.hidden) pcfg.hidden_widths.push_back(static_cast<std::size_t>(h));
    } else {
        throw dvrl::ValidationError("predictor must be 'logistic' or 'mlp'");
    }
    pcfg.learning_rate = cfg.alpha;
    return pcfg;
}

dvrl::DvrlConfig dvrl_config(const RunConfig& cfg) {
    dvrl::DvrlConfig dc;
    dc.outer_iterations = cfg.outer_iterations;
    dc.inner_iterations = cfg.inner_iterations;
    dc.predictor_batch = cfg.batch_predictor;
    dc.valuation_batch = cfg.batch_valuation;
    dc.moving_average_window = cfg.window;
    dc.predictor_lr = cfg.alpha;
    dc.estimator_lr = cfg.beta;
    dc.warm_start = !cfg.cold_start;
    dc.seed = cfg.seed;
    dc.predictor = predictor_config(cfg);
    for (int h : cfg.estimator_hidden) {
        if (h < 1) throw dvrl::ValidationError("estimator hidden widths must be >= 1");
    }
    dc.estimator.hidden_widths.assign(cfg.estimator_hidden.begin(),
                                      cfg.estimator_hidden.end());
    dc.estimator.learning_rate = cfg.beta;
    return dc;
}

struct LoadedData {
    dvrl::PreprocessSpec spec;
    dvrl::Dataset train;
    std::optional<dvrl::Dataset> valid;
    std::optional<dvrl::Dataset> test;
    dvrl::RawTable train_raw;
};

std::vector<std::uint8_t> read_flags_csv(const std::string& path, std::size_t n);

LoadedData load_data(const RunConfig& cfg, bool need_valid, bool need_test) {
    if (cfg.train_path.empty()) throw dvrl::ValidationError("--train is required");
    if (need_valid && cfg.valid_path.empty()) {
        throw dvrl::ValidationError("--valid is required for this subcommand");
    }
    if (need_test && cfg.test_path.empty()) {
        throw dvrl::ValidationError("--test is required for this subcommand");
    }
    LoadedData data;
    data.train_raw = dvrl::load_csv(cfg.train_path, cfg.label_column, cfg.categorical);
    data.spec = dvrl::fit_preprocess(data.train_raw, task_kind(cfg));
    data.train = dvrl::apply_preprocess(data.spec, data.train_raw, dvrl::SplitRole::Train);
    if (!cfg.valid_path.empty()) {
        auto raw = dvrl::load_csv(cfg.valid_path, cfg.label_column, cfg.categorical);
        data.valid = dvrl::apply_preprocess(data.spec, raw, dvrl::SplitRole::Validation);
    }
    if (!cfg.test_path.empty()) {
        auto raw = dvrl::load_csv(cfg.test_path, cfg.label_column, cfg.categorical);
        data.test = dvrl::apply_preprocess(data.spec, raw, dvrl::SplitRole::Test);
    }
    if (!cfg.flags_path.empty()) {
        data.train.corruption_flags = read_flags_csv(cfg.flags_path, data.train.size());
    }
    return data;
}

void write_values_csv(const fs::path& path, const std::vector<double>& values,
                      const std::vector<std::uint8_t>& flags) {
    std::ofstream out(path);
    if (!out) throw dvrl::ValidationError("cannot write " + path.string());
    out << "index,value,flag\n";
    out.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << i << ',' << values[i] << ',';
        if (!flags.empty()) out << static_cast<int>(flags[i]);
        out << '\n';
    }
}

struct ValuesFile {
    std::vector<double> values;
    std::vector<std::uint8_t> flags; // empty when unknown
};

ValuesFile read_values_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dvrl::ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw dvrl::ValidationError(path + ": empty file");
    ValuesFile out;
    bool any_flag = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string index, value, flag;
        std::getline(ss, index, ',');
        std::getline(ss, value, ',');
        std::getline(ss, flag, ',');
        out.values.push_back(std::stod(value));
        if (!flag.empty()) {
            any_flag = true;
            out.flags.push_back(static_cast<std::uint8_t>(std::stoi(flag)));
        } else {
            out.flags.push_back(0);
        }
    }
    if (!any_flag) out.flags.clear();
    return out;
}

std::vector<std::uint8_t> read_flags_csv(const std::string& path, std::size_t n) {
    const ValuesFile vf = read_values_csv(path);
    std::vector<std::uint8_t> flags = vf.flags;
    if (flags.empty()) flags.assign(vf.values.size(), 0);
    if (flags.size() != n) {
        throw dvrl::ValidationError(path + ": " + std::to_string(flags.size()) +
                                    " flags for " + std::to_string(n) + " rows");
    }
    return flags;
}

void write_curve_csv(const fs::path& path, const std::vector<dvrl::CurvePoint>& curve) {
    std::ofstream out(path);
    if (!out) throw dvrl::ValidationError("cannot write " + path.string());
    out << "fraction,value,skipped\n";
    out.precision(17);
    for (const auto& p : curve) {
        out << p.fraction << ',' << p.value << ',' << (p.skipped ? 1 : 0) << '\n';
    }
}

json curve_to_json(const std::vector<dvrl::CurvePoint>& curve) {
    json arr = json::array();
    for (const auto& p : curve) {
        arr.push_back({{"fraction", p.fraction}, {"value", p.value}, {"skipped", p.skipped}});
    }
    return arr;
}

json trace_to_json(const std::vector<dvrl::TraceEntry>& trace) {
    json arr = json::array();
    for (const auto& t : trace) {
        arr.push_back({{"iteration", t.iteration},
                       {"mean_validation_loss", t.mean_validation_loss},
                       {"delta", t.delta},
                       {"selected_fraction", t.selected_fraction}});
    }
    return arr;
}

json config_to_json(const RunConfig& cfg) {
    return {{"task", cfg.task},
            {"train", cfg.train_path},
            {"valid", cfg.valid_path},
            {"test", cfg.test_path},
            {"label", cfg.label_column},
            {"method", cfg.method},
            {"seed", cfg.seed},
            {"outer_iterations", cfg.outer_iterations},
            {"inner_iterations", cfg.inner_iterations},
            {"batch_predictor", cfg.batch_predictor},
            {"batch_valuation", cfg.batch_valuation},
            {"window", cfg.window},
            {"alpha", cfg.alpha},
            {"beta", cfg.beta},
            {"cold_start", cfg.cold_start},
            {"predictor", cfg.predictor}};
}

void write_report(const RunConfig& cfg, json report) {
    report["config"] = config_to_json(cfg);
    report["seed"] = cfg.seed;
    report["method"] = cfg.method;
    std::ofstream out(fs::path(cfg.out_dir) / "report.json");
    out << report.dump(2) << '\n';
}

dvrl::MarginalEvaluator retraining_evaluator(const RunConfig& cfg,
                                             const dvrl::Dataset& validation) {
    const dvrl::Metric metric = task_kind(cfg) == dvrl::TaskKind::Classification
                                    ? dvrl::Metric::Accuracy
                                    : dvrl::Metric::Mse;
    return dvrl::MarginalEvaluator::retraining(predictor_config(cfg), metric, validation,
                                               cfg.fit_iterations, cfg.batch_predictor,
                                               cfg.seed);
}

struct ValuationOutput {
    std::vector<double> values;
    json extra = json::object();
};

ValuationOutput compute_values(const RunConfig& cfg, const LoadedData& data) {
    ValuationOutput out;
    if (cfg.method == "random") {
        out.values = dvrl::random_values(data.train.size(), cfg.seed);
    } else if (cfg.method == "dvrl") {
        if (!data.valid) throw dvrl::ValidationError("method dvrl requires --valid");
        const auto result = dvrl::train_dvrl(data.train, *data.valid, dvrl_config(cfg));
        out.values = result.values;
        out.extra["traces"] = trace_to_json(result.trace);
        out.extra["diverged"] = result.diverged;
        if (data.test) {
            out.extra["metrics"]["dvrl_test"] = result.final_predictor.evaluate(
                *data.test, task_kind(cfg) == dvrl::TaskKind::Classification
                                ? dvrl::Metric::Accuracy
                                : dvrl::Metric::Mse);
        }
    } else if (cfg.method == "loo") {
        if (!data.valid) throw dvrl::ValidationError("method loo requires --valid");
        out.values = dvrl::loo_values(data.train, retraining_evaluator(cfg, *data.valid));
    } else if (cfg.method == "shapley-tmc") {
        if (!data.valid) throw dvrl::ValidationError("method shapley-tmc requires --valid");
        const auto evaluator = retraining_evaluator(cfg, *data.valid);
        double tol = cfg.truncation;
        if (tol < 0.0) {
            std::vector<int> all(data.train.size());
            std::iota(all.begin(), all.end(), 0);
            tol = 0.001 * std::abs(evaluator.evaluate(data.train, all));
        }
        out.values = dvrl::shapley_tmc(data.train, evaluator, cfg.permutations, tol,
                                       cfg.seed);
        out.extra["truncation_tolerance"] = tol;
    } else {
        throw dvrl::ValidationError("unknown method '" + cfg.method + "'");
    }
    return out;
}

int cmd_value(const RunConfig& cfg) {
    const LoadedData data = load_data(cfg, cfg.method != "random", false);
    ValuationOutput out = compute_values(cfg, data);
    write_values_csv(fs::path(cfg.out_dir) / "values.csv", out.values,
                     data.train.corruption_flags);
    json report = std::move(out.extra);
    report["preprocess_warnings"] = data.spec.warnings;
    write_report(cfg, std::move(report));
    return 0;
}

int cmd_discover(const RunConfig& cfg) {
    std::vector<double> values;
    std::vector<std::uint8_t> flags;
    if (!cfg.values_path.empty()) {
        ValuesFile vf = read_values_csv(cfg.values_path);
        values = std::move(vf.values);
        flags = std::move(vf.flags);
        if (!cfg.flags_path.empty()) flags = read_flags_csv(cfg.flags_path, values.size());
    } else {
        const LoadedData data = load_data(cfg, cfg.method != "random", false);
        values = compute_values(cfg, data).values;
        flags = data.train.corruption_flags;
    }
    if (flags.empty()) {
        throw dvrl::ValidationError("discover: corruption flags required (via values.csv "
                                    "flag column or --flags)");
    }
    const auto curve = dvrl::discovery_curve(values, flags, cfg.fractions);
    write_curve_csv(fs::path(cfg.out_dir) / "discovery.csv", curve);
    write_values_csv(fs::path(cfg.out_dir) / "values.csv", values, flags);
    write_report(cfg, {{"curves", {{"discovery", curve_to_json(curve)}}}});
    return 0;
}

int cmd_remove_curve(const RunConfig& cfg) {
    const LoadedData data = load_data(cfg, false, true);
    std::vector<double> values;
    if (!cfg.values_path.empty()) {
        values = read_values_csv(cfg.values_path).values;
    } else {
        const LoadedData with_valid = load_data(cfg, cfg.method != "random", true);
        values = compute_values(cfg, with_valid).values;
    }
    const auto evaluator = retraining_evaluator(cfg, *data.test);
    json curves;
    if (cfg.end == "most" || cfg.end == "both") {
        const auto curve = dvrl::removal_curve(values, data.train, dvrl::CurveEnd::Most,
                                               cfg.fractions, evaluator);
        write_curve_csv(fs::path(cfg.out_dir) / "removal_most.csv", curve);
        curves["removal_most"] = curve_to_json(curve);
    }
    if (cfg.end == "least" || cfg.end == "both") {
        const auto curve = dvrl::removal_curve(values, data.train, dvrl::CurveEnd::Least,
                                               cfg.fractions, evaluator);
        write_curve_csv(fs::path(cfg.out_dir) / "removal_least.csv", curve);
        curves["removal_least"] = curve_to_json(curve);
    }
    write_values_csv(fs::path(cfg.out_dir) / "values.csv", values,
                     data.train.corruption_flags);
    write_report(cfg, {{"curves", curves}});
    return 0;
}

int cmd_robust(const RunConfig& cfg) {
    const LoadedData data = load_data(cfg, true, true);
    const auto report =
        dvrl::robust_learning_eval(data.train, *data.valid, *data.test, dvrl_config(cfg));
    write_report(cfg, {{"metrics",
                        {{"dvrl", report.dvrl},
                         {"baseline", report.baseline},
                         {"clean_only", report.clean_only},
                         {"validation_only", report.validation_only}}}});
    return 0;
}

int cmd_adapt(const RunConfig& cfg) {
    const LoadedData data = load_data(cfg, true, true);
    const auto report = dvrl::domain_adaptation_eval(data.train, *data.valid, *data.test,
                                                     dvrl_config(cfg));
    json by_domain = json::object();
    for (const auto& [tag, value] : report.mean_value_by_domain) {
        by_domain[std::to_string(tag)] = value;
    }
    write_report(cfg, {{"metrics", {{"dvrl", report.dvrl}, {"baseline", report.baseline}}},
                       {"mean_value_by_domain", by_domain}});
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const LoadedData data = load_data(cfg, true, false);
    const auto entries = dvrl::validation_size_sweep(data.train, *data.valid, cfg.sizes,
                                                     dvrl_config(cfg), cfg.fractions);
    json curves;
    for (const auto& entry : entries) {
        const std::string name = "discovery_" + std::to_string(entry.validation_size);
        write_curve_csv(fs::path(cfg.out_dir) / (name + ".csv"), entry.discovery);
        curves[name] = curve_to_json(entry.discovery);
    }
    write_report(cfg, {{"curves", curves}});
    return 0;
}

int cmd_corrupt(const RunConfig& cfg) {
    if (cfg.train_path.empty()) throw dvrl::ValidationError("--train is required");
    dvrl::RawTable raw = dvrl::load_csv(cfg.train_path, cfg.label_column, cfg.categorical);
    if (cfg.sigma > 0.0) {
        throw dvrl::ValidationError("corrupt: feature noise is applied via the library; "
                                    "the CLI supports label flips only");
    }
    // Corrupt the label column through the standard one-hot path, then map the
    // flipped classes back to label strings.
    const auto spec = dvrl::fit_preprocess(raw, dvrl::TaskKind::Classification);
    dvrl::Dataset labels_only;
    labels_only.features = dvrl::DenseMatrix(raw.rows(), 1);
    labels_only.labels = dvrl::apply_preprocess(spec, raw, dvrl::SplitRole::Train).labels;
    labels_only.task = dvrl::TaskKind::Classification;
    labels_only.role = dvrl::SplitRole::Train;

    dvrl::CorruptionSpec cspec;
    cspec.kind = dvrl::CorruptionKind::LabelFlip;
    cspec.ratio = cfg.ratio;
    cspec.seed = cfg.seed;
    const dvrl::Dataset corrupted = dvrl::corrupt_labels(labels_only, cspec);

    std::size_t flipped = 0;
    for (std::size_t r = 0; r < raw.rows(); ++r) {
        if (corrupted.corruption_flags[r] != 0) {
            raw.cells[r][raw.label_index] = spec.label_vocabulary[corrupted.class_of(r)];
            ++flipped;
        }
    }
    dvrl::write_csv((fs::path(cfg.out_dir) / "train_corrupted.csv").string(), raw);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "flags.csv");
        out << "index,value,flag\n";
        for (std::size_t r = 0; r < raw.rows(); ++r) {
            out << r << ",0," << static_cast<int>(corrupted.corruption_flags[r]) << '\n';
        }
    }
    write_report(cfg, {{"metrics", {{"flipped_rows", flipped}, {"ratio", cfg.ratio}}}});
    return 0;
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--task", cfg.task, "classification | regression");
    sub->add_option("--train", cfg.train_path, "training split CSV");
    sub->add_option("--valid", cfg.valid_path, "validation split CSV");
    sub->add_option("--test", cfg.test_path, "test split CSV");
    sub->add_option("--label", cfg.label_column, "label column name");
    sub->add_option("--categorical", cfg.categorical, "categorical column names")
        ->delimiter(',');
    sub->add_option("--method", cfg.method, "dvrl | random | loo | shapley-tmc");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--seed", cfg.seed, "rng seed");
    sub->add_option("--outer-iterations", cfg.outer_iterations);
    sub->add_option("--inner-iterations", cfg.inner_iterations);
    sub->add_option("--batch-predictor", cfg.batch_predictor);
    sub->add_option("--batch-valuation", cfg.batch_valuation);
    sub->add_option("--window", cfg.window);
    sub->add_option("--alpha", cfg.alpha, "predictor learning rate");
    sub->add_option("--beta", cfg.beta, "value estimator learning rate");
    sub->add_flag("--cold-start", cfg.cold_start, "re-initialize the predictor each outer iteration");
    sub->add_option("--predictor", cfg.predictor, "logistic | mlp");
    sub->add_option("--hidden", cfg.hidden, "predictor hidden widths")->delimiter(',');
    sub->add_option("--estimator-hidden", cfg.estimator_hidden)->delimiter(',');
    sub->add_option("--permutations", cfg.permutations);
    sub->add_option("--truncation", cfg.truncation, "TMC truncation tolerance");
    sub->add_option("--fit-iterations", cfg.fit_iterations, "evaluator training steps");
    sub->add_option("--fractions", cfg.fractions)->delimiter(',');
    sub->add_option("--sizes", cfg.sizes, "validation sizes for the sweep")->delimiter(',');
    sub->add_option("--values", cfg.values_path, "precomputed values.csv");
    sub->add_option("--flags", cfg.flags_path, "corruption flags CSV");
    sub->add_option("--end", cfg.end, "most | least | both");
    sub->add_option("--ratio", cfg.ratio, "label corruption ratio");
    sub->add_option("--sigma", cfg.sigma, "feature noise stddev");
}

// --config <json> supplies defaults for any long flag; explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        }
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw dvrl::ValidationError("cannot open config file: " + config_path);
    json cfg = json::parse(in);
    std::vector<std::string> expanded;
    if (!args.empty()) expanded.push_back(args.front()); // subcommand
    for (const auto& [key, value] : cfg.items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) expanded.push_back("--" + key);
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& v : value) {
                if (!joined.empty()) joined += ',';
                joined += v.is_string() ? v.get<std::string>() : v.dump();
            }
            expanded.push_back("--" + key + "=" + joined);
        } else if (value.is_string()) {
            expanded.push_back("--" + key + "=" + value.get<std::string>());
        } else {
            expanded.push_back("--" + key + "=" + value.dump());
        }
    }
    expanded.insert(expanded.end(), args.begin() + (args.empty() ? 0 : 1), args.end());
    return expanded;
}

void emit_error(const RunConfig& cfg, const std::string& type, const std::string& message) {
    const json record = {{"error", {{"type", type}, {"message", message}}}};
    std::cerr << record.dump() << '\n';
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (!ec) {
        std::ofstream out(fs::path(cfg.out_dir) / "error.json");
        out << record.dump(2) << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DVRL data valuation toolkit"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RunConfig cfg;
    const char* names[] = {"value",  "discover", "remove-curve", "robust",
                           "adapt",  "sweep-validation", "corrupt"};
    const char* descriptions[] = {
        "compute per-sample data values",
        "corrupted-sample discovery curve",
        "remove-high/low performance curves",
        "robust learning comparison (dvrl / baseline / clean-only / validation-only)",
        "domain adaptation comparison",
        "discovery curves across validation sizes",
        "inject exact-count label noise into a training CSV"};
    for (std::size_t i = 0; i < std::size(names); ++i) {
        add_common_options(app.add_subcommand(names[i], descriptions[i]), cfg);
    }

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const std::exception& e) {
        emit_error(cfg, "config", e.what());
        return 2;
    }

    try {
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        emit_error(cfg, "cli", e.what());
        return 2;
    }

    try {
        fs::create_directories(cfg.out_dir);
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "value") return cmd_value(cfg);
        if (sub == "discover") return cmd_discover(cfg);
        if (sub == "remove-curve") return cmd_remove_curve(cfg);
        if (sub == "robust") return cmd_robust(cfg);
        if (sub == "adapt") return cmd_adapt(cfg);
        if (sub == "sweep-validation") return cmd_sweep(cfg);
        if (sub == "corrupt") return cmd_corrupt(cfg);
        emit_error(cfg, "cli", "unknown subcommand");
        return 2;
    } catch (const dvrl::ValidationError& e) {
        emit_error(cfg, "validation", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(cfg, "runtime", e.what());
        return 1;
    }
}

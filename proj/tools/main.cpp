// svtail command-line front end. Everything here goes through the public C
// API in svtail.h; no core internals are reachable from this translation
// unit. Every output artifact starts with '#'-prefixed lines echoing the
// fully resolved configuration, so a result file always records how it was
// produced, and identical invocations on identical inputs produce
// byte-identical artifacts.

#include <svtail.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

// Failure that has already been reported through a status code: carries the
// process exit code (2 usage, 1 everything else).
struct Failure {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail_status(int status) {
    throw Failure{status == SVTAIL_ERR_USAGE ? 2 : 1, svtail_last_error()};
}

void check(int status) {
    if (status != SVTAIL_OK) {
        fail_status(status);
    }
}

[[noreturn]] void fail_usage(const std::string& message) {
    throw Failure{2, message};
}

using MatrixPtr = std::unique_ptr<svtail_matrix, decltype(&svtail_matrix_free)>;
using DatasetPtr = std::unique_ptr<svtail_dataset, decltype(&svtail_dataset_free)>;
using FitPtr = std::unique_ptr<svtail_fit_result, decltype(&svtail_fit_result_free)>;
using SurfacePtr = std::unique_ptr<svtail_surface, decltype(&svtail_surface_free)>;

MatrixPtr own(svtail_matrix* m) {
    return {m, &svtail_matrix_free};
}
DatasetPtr own(svtail_dataset* ds) {
    return {ds, &svtail_dataset_free};
}
FitPtr own(svtail_fit_result* r) {
    return {r, &svtail_fit_result_free};
}
SurfacePtr own(svtail_surface* s) {
    return {s, &svtail_surface_free};
}

// Full-precision, locale-independent number formatting for all artifacts.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(size_t v) {
    return std::to_string(v);
}

// Accumulates the resolved configuration of a run: emitted as '#' lines at
// the top of report files and as comment lines in model files.
class ConfigEcho {
public:
    explicit ConfigEcho(const std::string& command) {
        add("command", command);
        add("version", std::string(svtail_version()));
    }

    void add(const std::string& key, const std::string& value) {
        lines_.push_back(key + "=" + value);
    }
    // Without this overload a string literal would convert to bool.
    void add(const std::string& key, const char* value) {
        add(key, std::string(value));
    }
    void add(const std::string& key, double value) { add(key, fmt(value)); }
    void add(const std::string& key, size_t value) { add(key, fmt(value)); }
    void add(const std::string& key, bool value) {
        add(key, std::string(value ? "true" : "false"));
    }

    const std::vector<std::string>& lines() const { return lines_; }

    void write_hash_header(std::ostream& out) const {
        for (const std::string& line : lines_) {
            out << "# " << line << "\n";
        }
    }

    std::vector<const char*> c_lines() const {
        std::vector<const char*> out;
        out.reserve(lines_.size());
        for (const std::string& line : lines_) {
            out.push_back(line.c_str());
        }
        return out;
    }

private:
    std::vector<std::string> lines_;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Failure{1, "cannot write output file: " + path};
    }
    return out;
}

// Writes a key=value report to the given path, or to stdout when the path
// is empty.
void write_report(const std::string& path, const ConfigEcho& echo,
                  const std::vector<std::string>& lines) {
    auto emit = [&](std::ostream& out) {
        echo.write_hash_header(out);
        for (const std::string& line : lines) {
            out << line << "\n";
        }
    };
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream out = open_output(path);
    emit(out);
    if (!out.flush()) {
        throw Failure{1, "write failed: " + path};
    }
}

/* ------------------------------------------------------------------ */
/* Shared option bundles                                               */
/* ------------------------------------------------------------------ */

struct DataOptions {
    std::vector<std::string> paths;
    size_t labels = 0;
    std::string label_xml;
    bool labels_at_start = false;
};

void add_data_options(CLI::App* cmd, DataOptions& opts, bool multiple) {
    auto* data = cmd->add_option("--data", opts.paths,
                                 multiple ? "ARFF file(s); several are merged row-wise"
                                          : "ARFF file");
    data->required();
    if (!multiple) {
        data->expected(1);
    }
    cmd->add_option("--labels", opts.labels, "number of label attributes");
    cmd->add_option("--label-xml", opts.label_xml,
                    "label-list XML file naming the label attributes");
    cmd->add_flag("--labels-at-start", opts.labels_at_start,
                  "label attributes come first instead of last");
}

void echo_data_options(ConfigEcho& echo, const DataOptions& opts) {
    std::string joined;
    for (size_t i = 0; i < opts.paths.size(); ++i) {
        joined += (i ? "," : "") + opts.paths[i];
    }
    echo.add("data", joined);
    echo.add("labels", opts.labels);
    echo.add("label_xml", opts.label_xml.empty() ? "(none)" : opts.label_xml);
    echo.add("labels_at_end", !opts.labels_at_start);
}

DatasetPtr load_datasets(const DataOptions& opts) {
    if (opts.labels == 0 && opts.label_xml.empty()) {
        fail_usage("one of --labels or --label-xml is required");
    }
    DatasetPtr merged{nullptr, &svtail_dataset_free};
    for (const std::string& path : opts.paths) {
        svtail_dataset* ds = nullptr;
        check(svtail_dataset_load_arff(path.c_str(), opts.labels,
                                       opts.labels_at_start ? 0 : 1,
                                       opts.label_xml.empty() ? nullptr
                                                              : opts.label_xml.c_str(),
                                       &ds));
        DatasetPtr loaded = own(ds);
        if (!merged) {
            merged = std::move(loaded);
        } else {
            svtail_dataset* joined = nullptr;
            check(svtail_dataset_merge(merged.get(), loaded.get(), &joined));
            merged = own(joined);
        }
    }
    return merged;
}

struct ThetaOptions {
    size_t theta = 0;
    double theta_frac = -1.0;
    bool theta_given = false;
    bool frac_given = false;
};

void add_theta_options(CLI::App* cmd, ThetaOptions& opts, size_t default_theta) {
    opts.theta = default_theta;
    auto* theta = cmd->add_option("--theta", opts.theta,
                                  "number of leading singular values exempt from the "
                                  "penalty");
    auto* frac = cmd->add_option("--theta-frac", opts.theta_frac,
                                 "theta as a fraction of the label count");
    theta->excludes(frac);
    frac->excludes(theta);
    cmd->callback([&opts, theta, frac] {
        opts.theta_given = theta->count() > 0;
        opts.frac_given = frac->count() > 0;
    });
}

size_t resolve_theta(const ThetaOptions& opts, size_t d, size_t l) {
    if (!opts.frac_given) {
        return opts.theta;
    }
    size_t theta = 0;
    check(svtail_theta_from_fraction(opts.theta_frac, d, l, &theta));
    return theta;
}

std::string gamma_validator(const std::string& value) {
    try {
        if (std::stod(value) > 1.0) {
            return "";
        }
    } catch (...) {
    }
    return "gamma must be a number > 1";
}

/* ------------------------------------------------------------------ */
/* train                                                               */
/* ------------------------------------------------------------------ */

struct TrainOptions {
    DataOptions data;
    ThetaOptions theta;
    std::string reg = "tail";
    double c = 1.0;
    double t0 = 0.0;
    double gamma = 1.1;
    size_t max_iters = 500;
    double rel_tol = 1e-6;
    std::string warm_start;
    std::string out;
    std::string trace_path;
};

int reg_code(const std::string& name) {
    if (name == "tail") {
        return SVTAIL_REG_TAIL;
    }
    if (name == "trace") {
        return SVTAIL_REG_TRACE;
    }
    if (name == "frobenius") {
        return SVTAIL_REG_FROBENIUS;
    }
    if (name == "none") {
        return SVTAIL_REG_NONE;
    }
    fail_usage("unknown regularizer '" + name + "'");
}

void run_train(const TrainOptions& opts) {
    DatasetPtr ds = load_datasets(opts.data);
    svtail_matrix* raw = nullptr;
    check(svtail_dataset_features(ds.get(), &raw));
    MatrixPtr x = own(raw);
    check(svtail_dataset_labels(ds.get(), &raw));
    MatrixPtr y = own(raw);

    const size_t d = svtail_matrix_cols(x.get());
    const size_t l = svtail_matrix_cols(y.get());

    svtail_solver_config config;
    svtail_solver_config_default(&config);
    config.regularizer = reg_code(opts.reg);
    config.theta = resolve_theta(opts.theta, d, l);
    config.c = opts.c;
    config.gamma = opts.gamma;
    config.max_iters = opts.max_iters;
    config.rel_tol = opts.rel_tol;
    config.t0 = opts.t0;
    if (config.t0 == 0.0) {
        // Make the automatic step parameter explicit in the echoed
        // configuration: 2 * sigma_max(X)^2.
        std::vector<double> sigma(std::min(svtail_matrix_rows(x.get()), d));
        size_t count = 0;
        check(svtail_singular_values(x.get(), sigma.data(), sigma.size(), &count));
        config.t0 = 2.0 * sigma[0] * sigma[0];
        if (config.t0 == 0.0) {
            config.t0 = 1.0;
        }
    }

    MatrixPtr w0{nullptr, &svtail_matrix_free};
    if (!opts.warm_start.empty()) {
        check(svtail_model_load(opts.warm_start.c_str(), &raw));
        w0 = own(raw);
    }

    ConfigEcho echo("train");
    echo_data_options(echo, opts.data);
    echo.add("reg", opts.reg);
    echo.add("theta", config.theta);
    if (opts.theta.frac_given) {
        echo.add("theta_frac", opts.theta.theta_frac);
    }
    echo.add("c", config.c);
    echo.add("t0", config.t0);
    echo.add("gamma", config.gamma);
    echo.add("max_iters", config.max_iters);
    echo.add("rel_tol", config.rel_tol);
    echo.add("warm_start", opts.warm_start.empty() ? "(none)" : opts.warm_start);
    echo.add("n", svtail_matrix_rows(x.get()));
    echo.add("d", d);
    echo.add("l", l);

    svtail_fit_result* fit_raw = nullptr;
    check(svtail_fit(x.get(), y.get(), &config, w0.get(), &fit_raw));
    FitPtr fit = own(fit_raw);

    ConfigEcho model_echo = echo;
    model_echo.add("iterations", svtail_fit_result_iterations(fit.get()));
    model_echo.add("converged", svtail_fit_result_converged(fit.get()) != 0);

    check(svtail_fit_result_model(fit.get(), &raw));
    MatrixPtr w = own(raw);
    std::vector<const char*> comments = model_echo.c_lines();
    check(svtail_model_save(w.get(), opts.out.c_str(), comments.data(),
                            comments.size()));

    if (!opts.trace_path.empty()) {
        std::ofstream out = open_output(opts.trace_path);
        model_echo.write_hash_header(out);
        out << "iteration,objective,loss,penalty\n";
        const size_t len = svtail_fit_result_trace_len(fit.get());
        for (size_t i = 0; i < len; ++i) {
            double objective = 0.0;
            double loss = 0.0;
            double penalty = 0.0;
            check(svtail_fit_result_trace_entry(fit.get(), i, &objective, &loss,
                                                &penalty));
            out << i << "," << fmt(objective) << "," << fmt(loss) << ","
                << fmt(penalty) << "\n";
        }
        if (!out.flush()) {
            throw Failure{1, "write failed: " + opts.trace_path};
        }
    }
}

/* ------------------------------------------------------------------ */
/* predict                                                             */
/* ------------------------------------------------------------------ */

struct PredictOptions {
    std::string model;
    DataOptions data;
    std::string out;
};

void run_predict(const PredictOptions& opts) {
    svtail_matrix* raw = nullptr;
    check(svtail_model_load(opts.model.c_str(), &raw));
    MatrixPtr w = own(raw);
    DatasetPtr ds = load_datasets(opts.data);
    check(svtail_dataset_features(ds.get(), &raw));
    MatrixPtr x = own(raw);
    check(svtail_predict(w.get(), x.get(), &raw));
    MatrixPtr scores = own(raw);

    ConfigEcho echo("predict");
    echo.add("model", opts.model);
    echo_data_options(echo, opts.data);

    std::ofstream out = open_output(opts.out);
    echo.write_hash_header(out);
    const size_t rows = svtail_matrix_rows(scores.get());
    const size_t cols = svtail_matrix_cols(scores.get());
    for (size_t j = 0; j < cols; ++j) {
        const char* name = svtail_dataset_label_name(ds.get(), j);
        out << (j ? "," : "") << (name != nullptr ? name : "label");
    }
    out << "\n";
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) {
            double v = 0.0;
            check(svtail_matrix_get(scores.get(), i, j, &v));
            out << (j ? "," : "") << fmt(v);
        }
        out << "\n";
    }
    if (!out.flush()) {
        throw Failure{1, "write failed: " + opts.out};
    }
}

/* ------------------------------------------------------------------ */
/* eval                                                                */
/* ------------------------------------------------------------------ */

struct EvalOptions {
    std::string model;
    DataOptions data;
    std::vector<size_t> ks{1, 3, 5};
    std::string out;
};

void run_eval(const EvalOptions& opts) {
    svtail_matrix* raw = nullptr;
    check(svtail_model_load(opts.model.c_str(), &raw));
    MatrixPtr w = own(raw);
    DatasetPtr ds = load_datasets(opts.data);
    check(svtail_dataset_features(ds.get(), &raw));
    MatrixPtr x = own(raw);
    check(svtail_dataset_labels(ds.get(), &raw));
    MatrixPtr y = own(raw);
    check(svtail_predict(w.get(), x.get(), &raw));
    MatrixPtr scores = own(raw);

    ConfigEcho echo("eval");
    echo.add("model", opts.model);
    echo_data_options(echo, opts.data);
    std::string k_list;
    for (size_t i = 0; i < opts.ks.size(); ++i) {
        k_list += (i ? "," : "") + std::to_string(opts.ks[i]);
    }
    echo.add("k", k_list);

    std::vector<std::string> lines;
    svtail_metric_result result{};
    for (size_t k : opts.ks) {
        check(svtail_top_k_accuracy(scores.get(), y.get(), k, &result));
        lines.push_back("top_" + std::to_string(k) + "_accuracy=" + fmt(result.value));
    }
    check(svtail_hamming_loss(scores.get(), y.get(), &result));
    lines.push_back("hamming_loss=" + fmt(result.value));
    check(svtail_average_auc(scores.get(), y.get(), &result));
    lines.push_back("average_auc=" + fmt(result.value));
    lines.push_back("auc_skipped_rows=" + fmt(result.skipped_rows));
    check(svtail_average_precision(scores.get(), y.get(), &result));
    lines.push_back("average_precision=" + fmt(result.value));
    lines.push_back("ap_skipped_rows=" + fmt(result.skipped_rows));

    write_report(opts.out, echo, lines);
}

/* ------------------------------------------------------------------ */
/* demo-completion                                                     */
/* ------------------------------------------------------------------ */

struct DemoOptions {
    std::string norm = "trace";
    size_t theta = 2;
    double lo = 1.0;
    double hi = 3.0;
    double step = 0.05;
    size_t refine = 3;
    std::string out;
    std::string report;
};

void run_demo(const DemoOptions& opts) {
    if (opts.out.empty() && opts.report.empty()) {
        fail_usage("demo-completion needs --out and/or --report");
    }
    int norm_kind = 0;
    if (opts.norm == "trace") {
        norm_kind = SVTAIL_NORM_TRACE;
    } else if (opts.norm == "tail") {
        norm_kind = SVTAIL_NORM_TAIL;
    } else {
        fail_usage("unknown norm '" + opts.norm + "' (expected trace or tail)");
    }

    ConfigEcho echo("demo-completion");
    echo.add("norm", opts.norm);
    echo.add("theta", opts.theta);
    echo.add("lo", opts.lo);
    echo.add("hi", opts.hi);
    echo.add("step", opts.step);
    echo.add("refine", opts.refine);

    if (!opts.out.empty()) {
        svtail_surface* raw = nullptr;
        check(svtail_demo_surface(norm_kind, opts.theta, opts.lo, opts.hi, opts.step,
                                  &raw));
        SurfacePtr surface = own(raw);
        std::ofstream out = open_output(opts.out);
        echo.write_hash_header(out);
        out << "v1,v2,norm\n";
        const size_t count = svtail_surface_size(surface.get());
        for (size_t i = 0; i < count; ++i) {
            double v1 = 0.0;
            double v2 = 0.0;
            double norm = 0.0;
            check(svtail_surface_point(surface.get(), i, &v1, &v2, &norm));
            out << fmt(v1) << "," << fmt(v2) << "," << fmt(norm) << "\n";
        }
        if (!out.flush()) {
            throw Failure{1, "write failed: " + opts.out};
        }
    }

    if (!opts.report.empty()) {
        double values[2] = {0.0, 0.0};
        double norm = 0.0;
        double sigma[3] = {0.0, 0.0, 0.0};
        check(svtail_demo_minimize(norm_kind, opts.theta, opts.lo, opts.hi, opts.step,
                                   opts.refine, values, &norm, sigma));
        write_report(opts.report, echo,
                     {"v1=" + fmt(values[0]), "v2=" + fmt(values[1]),
                      "norm=" + fmt(norm), "sigma1=" + fmt(sigma[0]),
                      "sigma2=" + fmt(sigma[1]), "sigma3=" + fmt(sigma[2])});
    }
}

/* ------------------------------------------------------------------ */
/* bound                                                               */
/* ------------------------------------------------------------------ */

struct BoundOptions {
    std::string model;
    ThetaOptions theta;
    size_t n = 0;
    double delta = 0.05;
    double r = 1.0;
    std::string out;
};

void run_bound(const BoundOptions& opts) {
    svtail_matrix* raw = nullptr;
    check(svtail_model_load(opts.model.c_str(), &raw));
    MatrixPtr w = own(raw);
    const size_t d = svtail_matrix_rows(w.get());
    const size_t l = svtail_matrix_cols(w.get());
    size_t theta = resolve_theta(opts.theta, d, l);

    svtail_bound_report report{};
    check(svtail_bound_report_compute(w.get(), opts.n, opts.delta, opts.r, theta,
                                      &report));

    ConfigEcho echo("bound");
    echo.add("model", opts.model);
    echo.add("n", opts.n);
    echo.add("delta", opts.delta);
    echo.add("r", opts.r);
    echo.add("theta", theta);
    if (opts.theta.frac_given) {
        echo.add("theta_frac", opts.theta.theta_frac);
    }

    write_report(opts.out, echo,
                 {"trace=" + fmt(report.trace), "tail_sum=" + fmt(report.tail_sum),
                  "trace_bound_value=" + fmt(report.trace_bound_value),
                  "local_rc_value=" + fmt(report.local_rc_value),
                  "global_gap=" + fmt(report.global_gap),
                  "local_gap=" + fmt(report.local_gap)});
}

/* ------------------------------------------------------------------ */
/* synth                                                               */
/* ------------------------------------------------------------------ */

struct SynthOptions {
    size_t n_train = 0;
    size_t n_test = 0;
    size_t d = 0;
    size_t l = 0;
    size_t rank = 0;
    double noise = 0.0;
    unsigned long long seed = 42;
    std::string out_train;
    std::string out_test;
    std::string out_model;
};

void run_synth(const SynthOptions& opts) {
    if (opts.n_test > 0 && opts.out_test.empty()) {
        fail_usage("--n-test > 0 requires --out-test");
    }
    svtail_dataset* ds_raw = nullptr;
    svtail_matrix* w_raw = nullptr;
    check(svtail_synth_low_rank(opts.n_train + opts.n_test, opts.d, opts.l, opts.rank,
                                opts.noise, opts.seed, &ds_raw, &w_raw));
    DatasetPtr ds = own(ds_raw);
    MatrixPtr w_star = own(w_raw);

    ConfigEcho echo("synth");
    echo.add("n_train", opts.n_train);
    echo.add("n_test", opts.n_test);
    echo.add("d", opts.d);
    echo.add("l", opts.l);
    echo.add("rank", opts.rank);
    echo.add("noise", opts.noise);
    echo.add("seed", static_cast<size_t>(opts.seed));
    echo.add("out_train", opts.out_train);
    echo.add("out_test", opts.out_test.empty() ? "(none)" : opts.out_test);
    echo.add("out_model", opts.out_model.empty() ? "(none)" : opts.out_model);

    svtail_dataset* slice_raw = nullptr;
    check(svtail_dataset_slice(ds.get(), 0, opts.n_train, &slice_raw));
    DatasetPtr train = own(slice_raw);
    check(svtail_dataset_save_arff(train.get(), opts.out_train.c_str(), "synth-train"));

    if (opts.n_test > 0) {
        check(svtail_dataset_slice(ds.get(), opts.n_train, opts.n_test, &slice_raw));
        DatasetPtr test = own(slice_raw);
        check(svtail_dataset_save_arff(test.get(), opts.out_test.c_str(), "synth-test"));
    }

    if (!opts.out_model.empty()) {
        std::vector<const char*> comments = echo.c_lines();
        check(svtail_model_save(w_star.get(), opts.out_model.c_str(), comments.data(),
                                comments.size()));
    }

    // The run's report goes to stdout; the ARFF format has no '#' comments.
    write_report("", echo, {});
}

/* ------------------------------------------------------------------ */
/* stats                                                               */
/* ------------------------------------------------------------------ */

struct StatsOptions {
    DataOptions data;
    std::string out;
};

void run_stats(const StatsOptions& opts) {
    DatasetPtr ds = load_datasets(opts.data);
    svtail_stats_result st{};
    check(svtail_dataset_stats(ds.get(), &st));

    ConfigEcho echo("stats");
    echo_data_options(echo, opts.data);

    write_report(opts.out, echo,
                 {"n=" + fmt(st.n), "d=" + fmt(st.d), "l=" + fmt(st.l),
                  "cardinality=" + fmt(st.cardinality), "density=" + fmt(st.density),
                  "distinct=" + fmt(st.distinct)});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-label least-squares learning with spectral regularizers"};
    app.set_version_flag("--version", svtail_version());
    app.require_subcommand(1);

    TrainOptions train_opts;
    auto* train = app.add_subcommand("train", "fit a model and write it to disk");
    add_data_options(train, train_opts.data, true);
    add_theta_options(train, train_opts.theta, 0);
    train->add_option("--reg", train_opts.reg,
                      "regularizer: tail, trace, frobenius, none")
        ->check(CLI::IsMember({"tail", "trace", "frobenius", "none"}));
    train->add_option("--c", train_opts.c, "penalty weight")
        ->check(CLI::NonNegativeNumber);
    train->add_option("--t0", train_opts.t0,
                      "initial step parameter (0 selects 2*sigma_max(X)^2)")
        ->check(CLI::NonNegativeNumber);
    train->add_option("--gamma", train_opts.gamma, "step growth factor, > 1")
        ->check(CLI::Validator(gamma_validator, "GAMMA"));
    train->add_option("--max-iters", train_opts.max_iters, "iteration cap")
        ->check(CLI::PositiveNumber);
    train->add_option("--rel-tol", train_opts.rel_tol,
                      "relative objective-change stopping threshold")
        ->check(CLI::PositiveNumber);
    train->add_option("--warm-start", train_opts.warm_start,
                      "model file providing the initial iterate");
    train->add_option("--out", train_opts.out, "output model file")->required();
    train->add_option("--trace", train_opts.trace_path,
                      "objective-history CSV (iteration,objective,loss,penalty)");

    PredictOptions predict_opts;
    auto* predict = app.add_subcommand("predict", "write a score CSV for a dataset");
    predict->add_option("--model", predict_opts.model, "model file")->required();
    add_data_options(predict, predict_opts.data, true);
    predict->add_option("--out", predict_opts.out, "output CSV")->required();

    EvalOptions eval_opts;
    auto* eval = app.add_subcommand("eval", "evaluate a model on a labeled dataset");
    eval->add_option("--model", eval_opts.model, "model file")->required();
    add_data_options(eval, eval_opts.data, true);
    eval->add_option("--k", eval_opts.ks, "top-k cutoffs (default 1,3,5)")
        ->delimiter(',');
    eval->add_option("--out", eval_opts.out, "report file (stdout when omitted)");

    DemoOptions demo_opts;
    auto* demo = app.add_subcommand(
        "demo-completion", "two-entry matrix completion by spectral-norm search");
    demo->add_option("--norm", demo_opts.norm, "objective: trace or tail")
        ->check(CLI::IsMember({"trace", "tail"}));
    demo->add_option("--theta", demo_opts.theta, "protected head size for tail");
    demo->add_option("--lo", demo_opts.lo, "search box lower bound");
    demo->add_option("--hi", demo_opts.hi, "search box upper bound");
    demo->add_option("--step", demo_opts.step, "coarse grid step")
        ->check(CLI::PositiveNumber);
    demo->add_option("--refine", demo_opts.refine, "refinement rounds");
    demo->add_option("--out", demo_opts.out, "surface CSV (v1,v2,norm)");
    demo->add_option("--report", demo_opts.report, "minimizer report (key=value)");

    BoundOptions bound_opts;
    auto* bound = app.add_subcommand("bound", "complexity-bound report for a model");
    bound->add_option("--model", bound_opts.model, "model file")->required();
    bound->add_option("--n", bound_opts.n, "sample size the bound refers to")
        ->required()
        ->check(CLI::PositiveNumber);
    bound->add_option("--delta", bound_opts.delta, "confidence parameter in (0,1)");
    bound->add_option("--r", bound_opts.r, "variance/operator-norm radius")
        ->check(CLI::NonNegativeNumber);
    add_theta_options(bound, bound_opts.theta, 0);
    bound->add_option("--out", bound_opts.out, "report file (stdout when omitted)");

    SynthOptions synth_opts;
    auto* synth = app.add_subcommand("synth", "generate a planted low-rank dataset");
    synth->add_option("--n-train", synth_opts.n_train, "training rows")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--n-test", synth_opts.n_test, "test rows (0 for none)");
    synth->add_option("--d", synth_opts.d, "feature count")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--l", synth_opts.l, "label count")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--rank", synth_opts.rank, "planted rank")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--noise", synth_opts.noise, "score noise level")
        ->check(CLI::NonNegativeNumber);
    synth->add_option("--seed", synth_opts.seed, "random seed");
    synth->add_option("--out-train", synth_opts.out_train, "training ARFF")->required();
    synth->add_option("--out-test", synth_opts.out_test, "test ARFF");
    synth->add_option("--out-model", synth_opts.out_model, "planted model file");

    StatsOptions stats_opts;
    auto* stats = app.add_subcommand("stats", "dataset statistics report");
    add_data_options(stats, stats_opts.data, true);
    stats->add_option("--out", stats_opts.out, "report file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        // Help and version requests exit 0; every other parse problem is a
        // usage error.
        return rc == 0 ? 0 : 2;
    }

    try {
        if (train->parsed()) {
            run_train(train_opts);
        } else if (predict->parsed()) {
            run_predict(predict_opts);
        } else if (eval->parsed()) {
            run_eval(eval_opts);
        } else if (demo->parsed()) {
            run_demo(demo_opts);
        } else if (bound->parsed()) {
            run_bound(bound_opts);
        } else if (stats->parsed()) {
            run_stats(stats_opts);
        } else if (synth->parsed()) {
            run_synth(synth_opts);
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "svtail.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "completion.hpp"
#include "data_io.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "metrics.hpp"
#include "prox.hpp"
#include "solver.hpp"

struct svtail_matrix {
    svtail::DenseMatrix m;
};

struct svtail_dataset {
    svtail::MultiLabelDataset ds;
};

struct svtail_fit_result {
    svtail::DenseMatrix w;
    svtail::SolverTrace trace;
};

struct svtail_surface {
    std::vector<svtail::SurfacePoint> points;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) {
    g_last_error = message;
}

// Runs fn, translating C++ exceptions into status codes and recording the
// message for svtail_last_error.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return SVTAIL_OK;
    } catch (const svtail::UsageError& e) {
        set_error(e.what());
        return SVTAIL_ERR_USAGE;
    } catch (const svtail::ParseError& e) {
        set_error(e.what());
        return SVTAIL_ERR_PARSE;
    } catch (const svtail::IoError& e) {
        set_error(e.what());
        return SVTAIL_ERR_IO;
    } catch (const svtail::NumericalError& e) {
        set_error(e.what());
        return SVTAIL_ERR_NUMERIC;
    } catch (const svtail::MetricError& e) {
        set_error(e.what());
        return SVTAIL_ERR_DOMAIN;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return SVTAIL_ERR_UNKNOWN;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SVTAIL_ERR_UNKNOWN;
    } catch (...) {
        set_error("unknown error");
        return SVTAIL_ERR_UNKNOWN;
    }
}

int require(bool ok, const char* message) {
    if (!ok) {
        set_error(message);
        return SVTAIL_ERR_USAGE;
    }
    return SVTAIL_OK;
}

svtail::Regularizer to_regularizer(int reg) {
    switch (reg) {
        case SVTAIL_REG_TAIL:
            return svtail::Regularizer::tail;
        case SVTAIL_REG_TRACE:
            return svtail::Regularizer::trace;
        case SVTAIL_REG_FROBENIUS:
            return svtail::Regularizer::frobenius;
        case SVTAIL_REG_NONE:
            return svtail::Regularizer::none;
        default:
            throw svtail::UsageError("unknown regularizer code " + std::to_string(reg));
    }
}

svtail::CompletionNorm to_norm(int kind) {
    switch (kind) {
        case SVTAIL_NORM_TRACE:
            return svtail::CompletionNorm::trace;
        case SVTAIL_NORM_TAIL:
            return svtail::CompletionNorm::tail;
        default:
            throw svtail::UsageError("unknown norm code " + std::to_string(kind));
    }
}

} // namespace

extern "C" {

const char* svtail_last_error(void) {
    return g_last_error.c_str();
}

const char* svtail_version(void) {
    return "1.0.0";
}

/* ------------------------------------------------------------------ */

int svtail_matrix_create(size_t rows, size_t cols, const double* data,
                         svtail_matrix** out) {
    if (int rc = require(out != nullptr, "out must not be null")) {
        return rc;
    }
    return guarded([&] {
        if (data == nullptr) {
            *out = new svtail_matrix{svtail::DenseMatrix(rows, cols)};
        } else {
            std::vector<double> values(data, data + rows * cols);
            *out = new svtail_matrix{svtail::DenseMatrix(rows, cols, std::move(values))};
        }
    });
}

void svtail_matrix_free(svtail_matrix* m) {
    delete m;
}

size_t svtail_matrix_rows(const svtail_matrix* m) {
    return m == nullptr ? 0 : m->m.rows();
}

size_t svtail_matrix_cols(const svtail_matrix* m) {
    return m == nullptr ? 0 : m->m.cols();
}

int svtail_matrix_get(const svtail_matrix* m, size_t i, size_t j, double* out) {
    if (int rc = require(m != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    if (int rc = require(i < m->m.rows() && j < m->m.cols(), "index out of range")) {
        return rc;
    }
    *out = m->m(i, j);
    return SVTAIL_OK;
}

int svtail_matrix_copy_data(const svtail_matrix* m, double* buf, size_t buflen) {
    if (int rc = require(m != nullptr && buf != nullptr, "null argument")) {
        return rc;
    }
    const std::vector<double>& data = m->m.data();
    if (int rc = require(buflen >= data.size(), "buffer too small")) {
        return rc;
    }
    std::memcpy(buf, data.data(), data.size() * sizeof(double));
    return SVTAIL_OK;
}

int svtail_singular_values(const svtail_matrix* m, double* buf, size_t buflen,
                           size_t* count) {
    if (int rc = require(m != nullptr && buf != nullptr && count != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] {
        std::vector<double> sigma = svtail::svd(m->m).sigma;
        if (buflen < sigma.size()) {
            throw svtail::UsageError("buffer too small for " +
                                     std::to_string(sigma.size()) + " singular values");
        }
        std::copy(sigma.begin(), sigma.end(), buf);
        *count = sigma.size();
    });
}

int svtail_trace_norm(const svtail_matrix* m, double* out) {
    if (int rc = require(m != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = svtail::trace_norm(m->m); });
}

int svtail_tail_sum(const svtail_matrix* m, size_t theta, double* out) {
    if (int rc = require(m != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = svtail::tail_singular_sum(m->m, theta); });
}

int svtail_frobenius_norm(const svtail_matrix* m, double* out) {
    if (int rc = require(m != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = svtail::frobenius_norm(m->m); });
}

int svtail_model_save(const svtail_matrix* m, const char* path,
                      const char* const* comments, size_t n_comments) {
    if (int rc = require(m != nullptr && path != nullptr, "null argument")) {
        return rc;
    }
    if (int rc = require(comments != nullptr || n_comments == 0,
                         "comments is null but n_comments > 0")) {
        return rc;
    }
    return guarded([&] {
        std::vector<std::string> lines(comments, comments + n_comments);
        svtail::save_model(m->m, path, lines);
    });
}

int svtail_model_load(const char* path, svtail_matrix** out) {
    if (int rc = require(path != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = new svtail_matrix{svtail::load_model(path)}; });
}

/* ------------------------------------------------------------------ */

int svtail_dataset_load_arff(const char* path, size_t label_count, int labels_at_end,
                             const char* xml_label_path, svtail_dataset** out) {
    if (int rc = require(path != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] {
        *out = new svtail_dataset{svtail::load_arff(
            path, label_count, labels_at_end != 0,
            xml_label_path == nullptr ? std::string() : std::string(xml_label_path))};
    });
}

void svtail_dataset_free(svtail_dataset* ds) {
    delete ds;
}

size_t svtail_dataset_rows(const svtail_dataset* ds) {
    return ds == nullptr ? 0 : ds->ds.features.rows();
}

size_t svtail_dataset_features_count(const svtail_dataset* ds) {
    return ds == nullptr ? 0 : ds->ds.features.cols();
}

size_t svtail_dataset_labels_count(const svtail_dataset* ds) {
    return ds == nullptr ? 0 : ds->ds.labels.cols();
}

const char* svtail_dataset_label_name(const svtail_dataset* ds, size_t idx) {
    if (ds == nullptr || idx >= ds->ds.label_names.size()) {
        return nullptr;
    }
    return ds->ds.label_names[idx].c_str();
}

int svtail_dataset_features(const svtail_dataset* ds, svtail_matrix** out) {
    if (int rc = require(ds != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = new svtail_matrix{ds->ds.features}; });
}

int svtail_dataset_labels(const svtail_dataset* ds, svtail_matrix** out) {
    if (int rc = require(ds != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = new svtail_matrix{ds->ds.labels}; });
}

int svtail_dataset_merge(const svtail_dataset* a, const svtail_dataset* b,
                         svtail_dataset** out) {
    if (int rc = require(a != nullptr && b != nullptr && out != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] { *out = new svtail_dataset{svtail::merge(a->ds, b->ds)}; });
}

int svtail_dataset_slice(const svtail_dataset* ds, size_t start, size_t count,
                         svtail_dataset** out) {
    if (int rc = require(ds != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] {
        const svtail::MultiLabelDataset& src = ds->ds;
        if (count < 1 || start >= src.features.rows() ||
            count > src.features.rows() - start) {
            throw svtail::UsageError("slice [" + std::to_string(start) + ", " +
                                     std::to_string(start + count) +
                                     ") is outside the dataset");
        }
        svtail::MultiLabelDataset sliced{
            svtail::DenseMatrix(count, src.features.cols()),
            svtail::DenseMatrix(count, src.labels.cols()), src.feature_names,
            src.label_names};
        for (size_t i = 0; i < count; ++i) {
            for (size_t j = 0; j < src.features.cols(); ++j) {
                sliced.features(i, j) = src.features(start + i, j);
            }
            for (size_t j = 0; j < src.labels.cols(); ++j) {
                sliced.labels(i, j) = src.labels(start + i, j);
            }
        }
        *out = new svtail_dataset{std::move(sliced)};
    });
}

int svtail_dataset_stats(const svtail_dataset* ds, svtail_stats_result* out) {
    if (int rc = require(ds != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::DatasetStats st = svtail::stats(ds->ds);
        out->n = st.n;
        out->d = st.d;
        out->l = st.l;
        out->cardinality = st.cardinality;
        out->density = st.density;
        out->distinct = st.distinct;
    });
}

int svtail_dataset_save_arff(const svtail_dataset* ds, const char* path,
                             const char* relation) {
    if (int rc = require(ds != nullptr && path != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::save_arff(ds->ds, path,
                          relation == nullptr ? "dataset" : std::string(relation));
    });
}

int svtail_synth_low_rank(size_t n, size_t d, size_t l, size_t rank, double noise,
                          unsigned long long seed, svtail_dataset** ds_out,
                          svtail_matrix** w_star_out) {
    if (int rc = require(ds_out != nullptr || w_star_out != nullptr,
                         "at least one output must be requested")) {
        return rc;
    }
    return guarded([&] {
        auto [ds, w_star] = svtail::synth_low_rank(n, d, l, rank, noise, seed);
        if (ds_out != nullptr) {
            *ds_out = new svtail_dataset{std::move(ds)};
        }
        if (w_star_out != nullptr) {
            *w_star_out = new svtail_matrix{std::move(w_star)};
        }
    });
}

/* ------------------------------------------------------------------ */

void svtail_solver_config_default(svtail_solver_config* config) {
    if (config == nullptr) {
        return;
    }
    config->regularizer = SVTAIL_REG_TAIL;
    config->theta = 0;
    config->c = 1.0;
    config->t0 = 0.0;
    config->gamma = 1.1;
    config->max_iters = 500;
    config->rel_tol = 1e-6;
}

int svtail_fit(const svtail_matrix* x, const svtail_matrix* y,
               const svtail_solver_config* config, const svtail_matrix* w0,
               svtail_fit_result** out) {
    if (int rc = require(x != nullptr && y != nullptr && config != nullptr &&
                             out != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::SolverConfig cfg;
        cfg.regularizer = to_regularizer(config->regularizer);
        cfg.theta = config->theta;
        cfg.c = config->c;
        cfg.t0 = config->t0;
        cfg.gamma = config->gamma;
        cfg.max_iters = config->max_iters;
        cfg.rel_tol = config->rel_tol;
        if (w0 != nullptr) {
            cfg.w0 = w0->m;
        }
        auto [w, trace] = svtail::fit(x->m, y->m, cfg);
        *out = new svtail_fit_result{std::move(w), std::move(trace)};
    });
}

void svtail_fit_result_free(svtail_fit_result* r) {
    delete r;
}

int svtail_fit_result_model(const svtail_fit_result* r, svtail_matrix** out) {
    if (int rc = require(r != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = new svtail_matrix{r->w}; });
}

size_t svtail_fit_result_iterations(const svtail_fit_result* r) {
    return r == nullptr ? 0 : r->trace.iterations_run;
}

int svtail_fit_result_converged(const svtail_fit_result* r) {
    return r != nullptr && r->trace.converged ? 1 : 0;
}

size_t svtail_fit_result_trace_len(const svtail_fit_result* r) {
    return r == nullptr ? 0 : r->trace.objectives.size();
}

int svtail_fit_result_trace_entry(const svtail_fit_result* r, size_t idx,
                                  double* objective, double* loss, double* penalty) {
    if (int rc = require(r != nullptr, "null argument")) {
        return rc;
    }
    if (int rc = require(idx < r->trace.objectives.size(), "trace index out of range")) {
        return rc;
    }
    if (objective != nullptr) {
        *objective = r->trace.objectives[idx];
    }
    if (loss != nullptr) {
        *loss = r->trace.loss_terms[idx];
    }
    if (penalty != nullptr) {
        *penalty = r->trace.reg_terms[idx];
    }
    return SVTAIL_OK;
}

int svtail_ridge_closed_form(const svtail_matrix* x, const svtail_matrix* y, double c,
                             svtail_matrix** out) {
    if (int rc = require(x != nullptr && y != nullptr && out != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] {
        *out = new svtail_matrix{svtail::ridge_closed_form(x->m, y->m, c)};
    });
}

int svtail_predict(const svtail_matrix* w, const svtail_matrix* x,
                   svtail_matrix** out) {
    if (int rc = require(w != nullptr && x != nullptr && out != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] { *out = new svtail_matrix{svtail::predict(w->m, x->m)}; });
}

int svtail_theta_from_fraction(double frac, size_t d, size_t l, size_t* out) {
    if (int rc = require(out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = svtail::theta_from_fraction(frac, d, l); });
}

/* ------------------------------------------------------------------ */

namespace {

int run_metric(const svtail_matrix* scores, const svtail_matrix* labels,
               svtail_metric_result* out,
               double (*metric)(const svtail::EvalPair&, size_t*)) {
    if (int rc = require(scores != nullptr && labels != nullptr && out != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::EvalPair pair{scores->m, labels->m};
        size_t skipped = 0;
        out->value = metric(pair, &skipped);
        out->skipped_rows = skipped;
    });
}

} // namespace

int svtail_hamming_loss(const svtail_matrix* scores, const svtail_matrix* labels,
                        svtail_metric_result* out) {
    return run_metric(scores, labels, out, [](const svtail::EvalPair& p, size_t*) {
        return svtail::hamming_loss(p);
    });
}

int svtail_top_k_accuracy(const svtail_matrix* scores, const svtail_matrix* labels,
                          size_t k, svtail_metric_result* out) {
    if (int rc = require(scores != nullptr && labels != nullptr && out != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::EvalPair pair{scores->m, labels->m};
        out->value = svtail::top_k_accuracy(pair, k);
        out->skipped_rows = 0;
    });
}

int svtail_average_auc(const svtail_matrix* scores, const svtail_matrix* labels,
                       svtail_metric_result* out) {
    return run_metric(scores, labels, out,
                      [](const svtail::EvalPair& p, size_t* skipped) {
                          return svtail::average_auc(p, skipped);
                      });
}

int svtail_average_precision(const svtail_matrix* scores, const svtail_matrix* labels,
                             svtail_metric_result* out) {
    return run_metric(scores, labels, out,
                      [](const svtail::EvalPair& p, size_t* skipped) {
                          return svtail::average_precision(p, skipped);
                      });
}

/* ------------------------------------------------------------------ */

int svtail_bound_report_compute(const svtail_matrix* w, size_t n, double delta,
                                double r, size_t theta, svtail_bound_report* out) {
    if (int rc = require(w != nullptr && out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::BoundReport report = svtail::bound_report(w->m, n, delta, r, theta);
        out->trace = report.trace;
        out->tail_sum = report.tail_sum;
        out->trace_bound_value = report.trace_bound_value;
        out->local_rc_value = report.local_rc_value;
        out->global_gap = report.global_gap;
        out->local_gap = report.local_gap;
    });
}

/* ------------------------------------------------------------------ */

int svtail_demo_matrix(svtail_matrix** out) {
    if (int rc = require(out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] { *out = new svtail_matrix{svtail::demo_matrix()}; });
}

int svtail_demo_surface(int norm_kind, size_t theta, double lo, double hi, double step,
                        svtail_surface** out) {
    if (int rc = require(out != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::CompletionProblem p =
            svtail::demo_problem(to_norm(norm_kind), theta, lo, hi);
        *out = new svtail_surface{svtail::norm_surface(p, step)};
    });
}

void svtail_surface_free(svtail_surface* s) {
    delete s;
}

size_t svtail_surface_size(const svtail_surface* s) {
    return s == nullptr ? 0 : s->points.size();
}

int svtail_surface_point(const svtail_surface* s, size_t idx, double* v1, double* v2,
                         double* norm) {
    if (int rc = require(s != nullptr, "null argument")) {
        return rc;
    }
    if (int rc = require(idx < s->points.size(), "surface index out of range")) {
        return rc;
    }
    const svtail::SurfacePoint& p = s->points[idx];
    if (v1 != nullptr) {
        *v1 = p.values[0];
    }
    if (v2 != nullptr) {
        *v2 = p.values.size() > 1 ? p.values[1] : p.values[0];
    }
    if (norm != nullptr) {
        *norm = p.norm;
    }
    return SVTAIL_OK;
}

int svtail_demo_minimize(int norm_kind, size_t theta, double lo, double hi,
                         double coarse_step, size_t refine_rounds, double values_out[2],
                         double* norm_out, double sigma_out[3]) {
    if (int rc = require(values_out != nullptr && norm_out != nullptr &&
                             sigma_out != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&] {
        svtail::CompletionProblem p =
            svtail::demo_problem(to_norm(norm_kind), theta, lo, hi);
        svtail::MinimizerResult r = svtail::find_minimizer(p, coarse_step, refine_rounds);
        values_out[0] = r.values[0];
        values_out[1] = r.values[1];
        *norm_out = r.norm;
        sigma_out[0] = r.sigma[0];
        sigma_out[1] = r.sigma[1];
        sigma_out[2] = r.sigma[2];
    });
}

} /* extern "C" */

/* Copyright 2026 The pwla authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <pwla/cli.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pwla/catalog.hpp>
#include <pwla/core.hpp>
#include <pwla/csv.hpp>
#include <pwla/lnn.hpp>
#include <pwla/linfit.hpp>
#include <pwla/model_io.hpp>
#include <pwla/oracle.hpp>
#include <pwla/svg.hpp>
#include <pwla/theorems.hpp>

namespace pwla {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using clock_type = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

int thread_budget() {
    const char *env = std::getenv("PWLA_THREADS");
    if (!env)
        return 1;
    int value = std::atoi(env);
    return value >= 1 ? value : 1;
}

Dataset load_dataset(const std::string &fn, const std::string &csv, int m) {
    if (fn.empty() == csv.empty())
        throw UsageError("exactly one of --fn and --data is required");
    if (!csv.empty())
        return load_csv(csv);
    return make_grid(catalog(fn), m);
}

std::vector<double> parse_breakpoint_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream stream(text);
    std::string field;
    while (std::getline(stream, field, ',')) {
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception &) {
            throw UsageError("cannot parse breakpoint '" + field + "'");
        }
    }
    if (out.empty())
        throw UsageError("--breakpoints needs at least one value");
    return out;
}

// ---------------------------------------------------------------- fit ----

struct FitArgs {
    std::string fn, csv, method, breakpoints, out_dir = ".", opt = "adam";
    int order = 2, neurons = 0, m = 2000, batch = 0, epochs = 300;
    int population = 30, generations = 200;
    double lr = 3e-3, crossover = 0.7, weight = 0.8;
    std::uint64_t seed = 0;
    bool freeze = false;
};

TrainConfig train_config(const FitArgs &args) {
    TrainConfig config;
    if (args.opt == "sgd")
        config.optimizer = Optimizer::kSgd;
    else if (args.opt == "adam")
        config.optimizer = Optimizer::kAdam;
    else
        throw UsageError("--opt must be sgd or adam");
    config.lr = args.lr;
    config.batch_size = args.batch;
    config.epochs = args.epochs;
    config.seed = args.seed;
    config.freeze_breakpoints = args.freeze;
    return config;
}

int cmd_fit(const FitArgs &args) {
    Dataset data = load_dataset(args.fn, args.csv, args.m);
    fs::create_directories(args.out_dir);

    std::optional<PwlModel> model;
    std::optional<LnnParams> network;
    double seconds = 0.0;
    auto start = clock_type::now();
    if (args.method == "dp") {
        model = solve_pwla_dp(data, args.order).model;
        seconds = seconds_since(start);
    } else if (args.method == "scan") {
        model = solve_cpwla_scan(data, args.order).model;
        seconds = seconds_since(start);
    } else if (args.method == "de") {
        DeConfig config{args.population, args.generations, args.crossover,
                        args.weight, args.seed};
        model = solve_cpwla_de(data, args.order, config).model;
        seconds = seconds_since(start);
    } else if (args.method == "fixed") {
        if (args.breakpoints.empty())
            throw UsageError("--method fixed requires --breakpoints");
        model = fit_cpwl_fixed(data, parse_breakpoint_list(args.breakpoints))
                    .model;
        seconds = seconds_since(start);
    } else if (args.method == "lnn") {
        int units = args.neurons > 0 ? args.neurons : args.order - 1;
        if (units < 1)
            throw UsageError("--neurons (or --order) must give >= 1 unit");
        TrainResult trained = train(data, units, train_config(args));
        seconds = trained.seconds;
        network = trained.params;
        model = to_pwl(trained.params);
    } else {
        throw UsageError("--method must be one of lnn, dp, scan, de, fixed");
    }

    fs::path dir(args.out_dir);
    if (network)
        save_lnn(*network, (dir / "model.txt").string());
    else
        save_pwl(*model, (dir / "model.txt").string());

    json report = {
        {"source", args.csv.empty() ? args.fn : args.csv},
        {"method", args.method},
        {"order", model->order()},
        {"continuous", model->continuous()},
        {"seed", args.seed},
        {"sse", sse(*model, data)},
        {"mse", mse(*model, data)},
        {"seconds", seconds},
        {"breakpoints", model->breakpoints()},
    };
    std::ofstream report_out(dir / "report.json");
    if (!report_out)
        throw std::runtime_error("cannot write report.json");
    report_out << report.dump(2) << "\n";

    std::string title =
        (args.csv.empty() ? args.fn : fs::path(args.csv).stem().string()) +
        " (" + args.method + ")";
    save_svg(*model, data, title, (dir / "fit.svg").string());
    std::cout << "wrote " << (dir / "model.txt").string()
              << ", report.json, fit.svg (mse "
              << mse(*model, data) << ")\n";
    return kExitOk;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
    std::vector<std::string> fns{"table2_1", "table2_2", "table2_3"};
    std::vector<std::string> methods{"lnn", "de"};
    // Learning-rate and batch candidate grids swept for the network runs.
    std::vector<double> lrs{1e-3, 5e-4, 3e-4, 1e-4, 5e-5, 3e-5, 1e-5};
    std::vector<int> batches{20, 40, 100};
    std::vector<std::uint64_t> seeds{1};
    int order_min = 2, order_max = 12, m = 2000, epochs = 200;
    int population = 30, generations = 200;
    double crossover = 0.7, weight = 0.8;
    std::string opt = "adam", out_dir = "bench";
};

struct BenchJob {
    std::string fn, method;
    int order = 0;
    double lr = 0.0;
    int batch = 0;
    std::uint64_t seed = 0;
};

struct BenchRow {
    BenchJob job;
    double mse = std::numeric_limits<double>::quiet_NaN();
    double seconds = 0.0;
    std::string error;
};

BenchRow run_bench_job(const BenchJob &job, const Dataset &data,
                       const BenchArgs &args) {
    BenchRow row{job};
    try {
        if (job.method == "lnn") {
            TrainConfig config;
            config.optimizer =
                args.opt == "sgd" ? Optimizer::kSgd : Optimizer::kAdam;
            config.lr = job.lr;
            config.batch_size = job.batch;
            config.epochs = args.epochs;
            config.seed = job.seed;
            TrainResult trained = train(data, job.order - 1, config);
            row.mse = trained.final_mse;
            row.seconds = trained.seconds;
        } else {
            DeConfig config{args.population, args.generations, args.crossover,
                            args.weight, job.seed};
            auto start = clock_type::now();
            FitResult fit = solve_cpwla_de(data, job.order, config);
            row.seconds = seconds_since(start);
            row.mse = fit.sse / static_cast<double>(data.m());
        }
    } catch (const std::exception &err) {
        row.error = err.what();
    }
    return row;
}

int cmd_bench(const BenchArgs &args) {
    if (args.order_min < 2 || args.order_max < args.order_min)
        throw UsageError("order range must satisfy 2 <= min <= max");
    for (const std::string &method : args.methods)
        if (method != "lnn" && method != "de")
            throw UsageError("--methods entries must be lnn or de");
    fs::create_directories(args.out_dir);

    std::vector<std::string> fns = args.fns;
    std::sort(fns.begin(), fns.end());
    std::vector<BenchJob> jobs;
    std::vector<Dataset> datasets;
    datasets.reserve(fns.size());
    for (std::size_t f = 0; f < fns.size(); ++f) {
        datasets.push_back(make_grid(catalog(fns[f]), args.m));
        for (int order = args.order_min; order <= args.order_max; ++order) {
            for (const std::string &method : args.methods) {
                if (method == "lnn") {
                    for (double lr : args.lrs)
                        for (int batch : args.batches)
                            for (std::uint64_t seed : args.seeds)
                                jobs.push_back({fns[f], method, order, lr,
                                                batch, seed});
                } else {
                    for (std::uint64_t seed : args.seeds)
                        jobs.push_back({fns[f], method, order, 0.0, 0, seed});
                }
            }
        }
    }

    // Jobs are independent and each writes only its own slot, so any
    // interleaving yields the same rows; sorting below fixes the order.
    std::vector<BenchRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            const BenchJob &job = jobs[i];
            std::size_t f = static_cast<std::size_t>(
                std::lower_bound(fns.begin(), fns.end(), job.fn) -
                fns.begin());
            rows[i] = run_bench_job(job, datasets[f], args);
        }
    };
    int threads = std::min<int>(thread_budget(),
                                static_cast<int>(jobs.size()) > 0
                                    ? static_cast<int>(jobs.size())
                                    : 1);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (std::thread &t : pool)
            t.join();
    }

    std::sort(rows.begin(), rows.end(), [](const BenchRow &a,
                                           const BenchRow &b) {
        auto key = [](const BenchRow &r) {
            return std::tuple(r.job.fn, r.job.method, r.job.order, r.job.lr,
                              r.job.batch, r.job.seed);
        };
        return key(a) < key(b);
    });

    fs::path dir(args.out_dir);
    std::ofstream csv(dir / "bench.csv");
    if (!csv)
        throw std::runtime_error("cannot write bench.csv");
    csv << "function,method,order,lr,batch,seed,mse,seconds\n";
    char buffer[160];
    for (const BenchRow &row : rows) {
        std::snprintf(buffer, sizeof buffer, "%g,%d,%llu,%.17g,%.6f\n",
                      row.job.lr, row.job.batch,
                      static_cast<unsigned long long>(row.job.seed), row.mse,
                      row.seconds);
        csv << row.job.fn << "," << row.job.method << "," << row.job.order
            << "," << buffer;
        if (!row.error.empty())
            std::cerr << "bench: " << row.job.fn << " " << row.job.method
                      << " order " << row.job.order << " failed: "
                      << row.error << "\n";
    }
    csv.close();

    // Per function: best-mse-per-order curves, and the matching run times.
    for (const std::string &fn : fns) {
        std::vector<SvgSeries> mse_series, time_series;
        const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
        std::size_t color_at = 0;
        for (const std::string &method : args.methods) {
            SvgSeries mse_s, time_s;
            mse_s.label = time_s.label = method;
            mse_s.color = time_s.color = colors[color_at++ % 4];
            mse_s.markers = time_s.markers = true;
            for (int order = args.order_min; order <= args.order_max;
                 ++order) {
                const BenchRow *best = nullptr;
                for (const BenchRow &row : rows)
                    if (row.job.fn == fn && row.job.method == method &&
                        row.job.order == order && std::isfinite(row.mse) &&
                        (!best || row.mse < best->mse))
                        best = &row;
                if (!best)
                    continue;
                mse_s.xs.push_back(order);
                mse_s.ys.push_back(best->mse);
                time_s.xs.push_back(order);
                time_s.ys.push_back(best->seconds);
            }
            mse_series.push_back(std::move(mse_s));
            time_series.push_back(std::move(time_s));
        }
        std::ofstream mse_svg(dir / (fn + "_mse.svg"));
        write_svg_plot(fn + ": best mse by order", mse_series, mse_svg);
        std::ofstream time_svg(dir / (fn + "_time.svg"));
        write_svg_plot(fn + ": run seconds by order", time_series, time_svg);
    }
    std::cout << "wrote " << (dir / "bench.csv").string() << " ("
              << rows.size() << " rows) and per-function SVG plots\n";
    return kExitOk;
}

// -------------------------------------------------------------- check ----

struct CheckArgs {
    std::string model_path, fn, csv, out_path;
    int m = 2000;
    bool grid_tol = false;
};

int cmd_check(const CheckArgs &args) {
    Dataset data = load_dataset(args.fn, args.csv, args.m);
    PwlModel model = load_model_as_pwl(args.model_path);
    Tolerances tol =
        args.grid_tol ? grid_scaled_tolerances(data) : default_tolerances(data);
    OptimalityReport report = model.continuous()
                                  ? check_theorem2(model, data, tol)
                                  : check_theorem1(model, data, tol);
    if (args.out_path.empty()) {
        write_report(report, std::cout);
    } else {
        std::ofstream out(args.out_path);
        if (!out)
            throw std::runtime_error(args.out_path +
                                     ": cannot open for writing");
        write_report(report, out);
    }
    if (report.pass())
        return kExitOk;
    for (std::size_t i = 0; i < report.per_segment_lsq_ok.size(); ++i)
        if (!report.per_segment_lsq_ok[i])
            std::cerr << "check: segment " << i
                      << " is not a least-squares fit of its samples\n";
    for (std::size_t i = 0; i < report.junction_kind.size(); ++i)
        if (report.junction_kind[i] == JunctionKind::kViolated)
            std::cerr << "check: junction at " << report.junction_mu[i]
                      << " is neither continuous nor reflected\n";
    return kExitCheckFailed;
}

} // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"piecewise linear approximation toolkit"};
    app.require_subcommand(1);

    FitArgs fit_args;
    CLI::App *fit = app.add_subcommand(
        "fit", "fit one model and write model.txt, report.json, fit.svg");
    fit->add_option("--fn", fit_args.fn, "built-in target function name");
    fit->add_option("--data", fit_args.csv, "dataset CSV (x,y with header)");
    fit->add_option("--method", fit_args.method,
                    "lnn | dp | scan | de | fixed")
        ->required();
    fit->add_option("--order", fit_args.order, "segment count");
    fit->add_option("--neurons", fit_args.neurons,
                    "hidden units (default: order - 1)");
    fit->add_option("--breakpoints", fit_args.breakpoints,
                    "comma-separated breakpoints for --method fixed");
    fit->add_option("--m", fit_args.m, "grid size for --fn targets");
    fit->add_option("--opt", fit_args.opt, "sgd | adam");
    fit->add_option("--lr", fit_args.lr, "learning rate");
    fit->add_option("--batch", fit_args.batch, "batch size (0 = full batch)");
    fit->add_option("--epochs", fit_args.epochs, "training epochs");
    fit->add_option("--pop", fit_args.population, "evolution population");
    fit->add_option("--gens", fit_args.generations, "evolution generations");
    fit->add_option("--cr", fit_args.crossover, "evolution crossover rate");
    fit->add_option("--f", fit_args.weight, "evolution differential weight");
    fit->add_option("--seed", fit_args.seed, "random seed");
    fit->add_flag("--freeze", fit_args.freeze,
                  "freeze network breakpoints (train slopes and bias only)");
    fit->add_option("--out", fit_args.out_dir, "output directory");

    BenchArgs bench_args;
    CLI::App *bench = app.add_subcommand(
        "bench", "sweep hyperparameters and orders; write bench.csv + SVGs");
    bench->add_option("--fn", bench_args.fns, "target functions to sweep");
    bench->add_option("--methods", bench_args.methods, "subset of {lnn, de}");
    bench->add_option("--order-min", bench_args.order_min, "first order");
    bench->add_option("--order-max", bench_args.order_max, "last order");
    bench->add_option("--lrs", bench_args.lrs, "learning-rate candidates");
    bench->add_option("--batches", bench_args.batches, "batch candidates");
    bench->add_option("--seeds", bench_args.seeds, "seeds to repeat over");
    bench->add_option("--epochs", bench_args.epochs, "training epochs");
    bench->add_option("--m", bench_args.m, "grid size");
    bench->add_option("--opt", bench_args.opt, "sgd | adam");
    bench->add_option("--pop", bench_args.population, "evolution population");
    bench->add_option("--gens", bench_args.generations,
                      "evolution generations");
    bench->add_option("--cr", bench_args.crossover,
                      "evolution crossover rate");
    bench->add_option("--f", bench_args.weight,
                      "evolution differential weight");
    bench->add_option("--out", bench_args.out_dir, "output directory");

    CheckArgs check_args;
    CLI::App *check = app.add_subcommand(
        "check", "verify a fitted model against the optimality conditions");
    check->add_option("--model", check_args.model_path, "model file to check")
        ->required();
    check->add_option("--fn", check_args.fn, "built-in target function name");
    check->add_option("--data", check_args.csv, "dataset CSV");
    check->add_option("--m", check_args.m, "grid size for --fn targets");
    check->add_flag("--grid-tol", check_args.grid_tol,
                    "use the looser slacks for grid-restricted solutions");
    check->add_option("--out", check_args.out_path,
                      "report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(fit))
            return cmd_fit(fit_args);
        if (app.got_subcommand(bench))
            return cmd_bench(bench_args);
        return cmd_check(check_args);
    } catch (const UsageError &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitSolver;
    }
}

} // namespace pwla

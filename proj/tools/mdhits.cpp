// Command-line entry point: rank, hits, check-alpha, compare, synth, and
// convergence subcommands over delimited edge-list files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdhits/dataio.hpp"
#include "mdhits/metrics.hpp"
#include "mdhits/solver.hpp"

namespace {

using namespace mdhits;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> alpha;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            alpha.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("--alpha: cannot parse '" + item + "'");
        }
    }
    if (alpha.empty()) throw InvalidArgument("--alpha: empty list");
    return alpha;
}

struct CommonOptions {
    std::string input;
    std::string format = "coo5";
    std::string alpha_text;
    double tolerance = 1e-6;
    int max_iterations = 1000;
    std::string start = "ones";
    std::uint64_t seed = 0;
    std::string output;
    std::string output_format = "json";
    int threads = -1;  // unset: MDHITS_THREADS, then all hardware threads
    bool compensated = false;
    char delimiter = 0;
    bool header = false;
    bool zero_based = false;

    EdgeRecordFormat record_format() const {
        EdgeRecordFormat fmt;
        fmt.tag = edge_format_from_name(format);
        if (delimiter != 0) fmt.delimiter = delimiter;
        fmt.header = header;
        fmt.one_based = !zero_based;
        return fmt;
    }

    int effective_threads() const {
        if (threads >= 0) return threads;
        if (const char* env = std::getenv("MDHITS_THREADS")) {
            return std::max(0, std::atoi(env));
        }
        return 0;  // auto
    }

    SolverConfig solver_config() const {
        SolverConfig sc;
        sc.tolerance = tolerance;
        sc.max_iterations = max_iterations;
        sc.threads = effective_threads();
        sc.compensated = compensated;
        if (start == "ones") {
            sc.start = StartKind::ones;
        } else if (start == "random") {
            sc.start = StartKind::random_positive;
            sc.seed = seed;
        } else {
            throw InvalidArgument("--start must be 'ones' or 'random'");
        }
        return sc;
    }

    OutputFormat parsed_output_format() const {
        if (output_format == "json") return OutputFormat::json;
        if (output_format == "csv") return OutputFormat::csv;
        throw InvalidArgument("--output-format must be 'json' or 'csv'");
    }

    std::vector<double> alpha_or(std::size_t order, double fallback) const {
        if (alpha_text.empty()) return std::vector<double>(order, fallback);
        return parse_alpha_list(alpha_text);
    }
};

void attach_input_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--input", opt.input, "Edge-list file")->required();
    cmd->add_option("--format", opt.format, "Input format: coo5, coo2, multiplex, citation");
    cmd->add_option("--delimiter", opt.delimiter, "Field delimiter (default: format-specific)");
    cmd->add_flag("--header", opt.header, "Skip the first input line");
    cmd->add_flag("--zero-based", opt.zero_based, "Indices in the file start at 0");
}

void attach_solver_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--alpha", opt.alpha_text, "Comma-separated exponents");
    cmd->add_option("--tol", opt.tolerance, "Stopping tolerance");
    cmd->add_option("--max-iter", opt.max_iterations, "Iteration cap");
    cmd->add_option("--start", opt.start, "Initial tuple: ones or random");
    cmd->add_option("--seed", opt.seed, "Seed for --start random");
    cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    cmd->add_flag("--compensated-sum", opt.compensated, "Kahan accumulation in contractions");
}

Solution solution_from_monolayer(const MonolayerHits& r, const ExponentConfig& cfg) {
    Solution s;
    s.c.slices = {r.hub, r.authority};
    s.lambda = {r.lambda1, r.lambda2};
    s.sigma = r.sigma;
    s.iterations = r.iterations;
    s.converged = r.converged;
    s.trace = r.trace;
    s.alpha = cfg.alpha;
    s.rho = cfg.rho;
    s.beta = cfg.beta;
    return s;
}

int run_rank(const CommonOptions& opt) {
    SparseTensor tensor = load_tensor(opt.input, opt.record_format());
    ExponentConfig cfg = ExponentConfig::from_alpha(
        opt.alpha_or(static_cast<std::size_t>(tensor.order()), 0.2));
    Solution s = solve(tensor, cfg, opt.solver_config());
    if (!opt.output.empty()) write_solution(s, opt.output, opt.parsed_output_format());
    std::cout << "iterations=" << s.iterations << " rho=" << fmt17(s.rho)
              << " sigma=" << fmt17(s.sigma) << " converged=" << (s.converged ? "true" : "false")
              << "\n";
    return s.converged ? 0 : 3;
}

int run_hits(const CommonOptions& opt, bool classical) {
    EdgeRecordFormat fmt = opt.record_format();
    SparseTensor tensor = load_tensor(opt.input, fmt);
    if (tensor.order() != 2) {
        throw InvalidArgument("hits: input must be an order-2 edge list (use --format coo2)");
    }
    if (classical) {
        ClassicalHits r = classical_hits(tensor, opt.solver_config());
        if (!opt.output.empty()) {
            ExponentConfig linear;  // the alpha = 1 boundary of the model
            linear.alpha = {1.0, 1.0};
            linear.rho = 1.0;
            linear.beta = {0.5, 0.5};
            MonolayerHits as_monolayer;
            as_monolayer.hub = r.hub;
            as_monolayer.authority = r.authority;
            as_monolayer.lambda1 = r.lambda1;
            as_monolayer.lambda2 = r.lambda2;
            as_monolayer.sigma = r.sigma;
            as_monolayer.iterations = r.iterations;
            as_monolayer.converged = r.converged;
            write_solution(solution_from_monolayer(as_monolayer, linear), opt.output,
                           opt.parsed_output_format());
        }
        std::cout << "iterations=" << r.iterations << " lambda1=" << fmt17(r.lambda1)
                  << " lambda2=" << fmt17(r.lambda2) << " sigma=" << fmt17(r.sigma)
                  << " converged=" << (r.converged ? "true" : "false") << "\n";
        return r.converged ? 0 : 3;
    }
    std::vector<double> alpha = opt.alpha_or(2, 1.0 / 3);
    if (alpha.size() != 2) throw InvalidArgument("hits: --alpha needs exactly 2 exponents");
    MonolayerHits r = monolayer_hits(tensor, alpha[0], alpha[1], opt.solver_config());
    if (!opt.output.empty()) {
        ExponentConfig cfg = ExponentConfig::from_alpha(alpha);
        write_solution(solution_from_monolayer(r, cfg), opt.output, opt.parsed_output_format());
    }
    std::cout << "iterations=" << r.iterations << " lambda1=" << fmt17(r.lambda1)
              << " lambda2=" << fmt17(r.lambda2) << " sigma=" << fmt17(r.sigma)
              << " converged=" << (r.converged ? "true" : "false") << "\n";
    return r.converged ? 0 : 3;
}

int run_check_alpha(const CommonOptions& opt) {
    if (opt.alpha_text.empty()) throw InvalidArgument("check-alpha: --alpha is required");
    FeasibilityReport report = check_feasible(parse_alpha_list(opt.alpha_text));
    const char* verdict = report.verdict == Feasibility::feasible     ? "feasible"
                          : report.verdict == Feasibility::boundary   ? "boundary"
                                                                      : "infeasible";
    std::cout << "verdict=" << verdict << " rho=" << fmt17(report.rho)
              << " gershgorin_hint=" << (report.gershgorin_hint ? "true" : "false") << "\n";
    return 0;
}

int run_synth(Index n_v, const CommonOptions& opt) {
    if (opt.output.empty()) throw InvalidArgument("synth: --output is required");
    SynthSpec spec{.n_v = n_v, .seed = opt.seed};
    SparseTensor tensor = generate_random(spec);
    write_edge_list_file(tensor, opt.output);
    std::cout << "n_v=" << n_v << " n_l=" << spec.n_layers() << " n_t=" << spec.n_time()
              << " nnz=" << tensor.nnz() << " path=" << opt.output << "\n";
    return 0;
}

int run_convergence(const CommonOptions& opt, const std::string& sweep) {
    SparseTensor tensor = load_tensor(opt.input, opt.record_format());
    std::ostringstream csv;

    if (!sweep.empty()) {
        double from = 0.0;
        double to = 0.0;
        double step = 0.0;
        if (std::sscanf(sweep.c_str(), "%lf:%lf:%lf", &from, &to, &step) != 3 || step <= 0.0) {
            throw InvalidArgument("--alpha-sweep expects from:to:step with step > 0");
        }
        csv << "alpha,rho,iterations\n";
        for (double a = from; a <= to + 1e-12; a += step) {
            ExponentConfig cfg = ExponentConfig::from_alpha(
                std::vector<double>(static_cast<std::size_t>(tensor.order()), a));
            Solution s = solve(tensor, cfg, opt.solver_config());
            csv << fmt17(a) << ',' << fmt17(cfg.rho) << ',' << s.iterations << "\n";
        }
    } else {
        ExponentConfig cfg = ExponentConfig::from_alpha(
            opt.alpha_or(static_cast<std::size_t>(tensor.order()), 0.2));
        SolverConfig sc = opt.solver_config();
        sc.record_trace = true;
        Solution s = solve(tensor, cfg, sc);
        csv << "k,step,bound\n";
        for (const TraceEntry& e : s.trace) {
            csv << e.iteration << ',' << fmt17(e.step) << ',' << fmt17(e.bound) << "\n";
        }
    }

    if (opt.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(opt.output);
        if (!out) throw IoError(opt.output, "cannot open for writing");
        out << csv.str();
        if (!out) throw IoError(opt.output, "write failed");
        std::cout << "rows written to " << opt.output << "\n";
    }
    return 0;
}

int run_compare(const std::string& left_path, const std::string& right_path, Index k,
                const std::string& metric) {
    Solution left = read_solution(left_path);
    Solution right = read_solution(right_path);
    if (left.c.order() != right.c.order()) {
        throw InvalidArgument("compare: solutions have different orders");
    }
    const std::vector<std::string> names =
        left.c.order() == 5 ? std::vector<std::string>{"hub", "authority", "broadcast",
                                                       "receive", "time"}
                            : std::vector<std::string>{"hub", "authority"};
    for (std::size_t s = 0; s < names.size(); ++s) {
        const auto& a = left.c.slices[s];
        const auto& b = right.c.slices[s];
        if (a.size() != b.size()) {
            throw InvalidArgument("compare: '" + names[s] + "' vectors have different lengths (" +
                                  std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                  ")");
        }
        if (metric == "isim") {
            const Index depth = std::min(k, static_cast<Index>(a.size()));
            const double isim =
                intersection_similarity(rank_all(a), rank_all(b), depth);
            std::cout << names[s] << " k=" << depth << " isim=" << fmt17(isim)
                      << " I_K=" << fmt17(1.0 - isim) << "\n";
        } else if (metric == "kendall") {
            std::cout << names[s] << " tau=" << fmt17(kendall_tau(a, b)) << "\n";
        } else {
            throw InvalidArgument("--metric must be 'isim' or 'kendall'");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-dimensional HITS centrality for temporal multilayer networks"};
    app.require_subcommand(1);

    CommonOptions rank_opt;
    CLI::App* rank = app.add_subcommand("rank", "Compute the centrality tuple of a tensor");
    attach_input_flags(rank, rank_opt);
    attach_solver_flags(rank, rank_opt);
    rank->add_option("--output", rank_opt.output, "Solution file to write");
    rank->add_option("--output-format", rank_opt.output_format, "json or csv");

    CommonOptions hits_opt;
    hits_opt.format = "coo2";
    bool classical = false;
    CLI::App* hits = app.add_subcommand("hits", "Hub/authority scores of a monolayer graph");
    attach_input_flags(hits, hits_opt);
    attach_solver_flags(hits, hits_opt);
    hits->add_flag("--classical", classical, "Linear HITS baseline (start-dependent)");
    hits->add_option("--output", hits_opt.output, "Solution file to write");
    hits->add_option("--output-format", hits_opt.output_format, "json or csv");

    CommonOptions check_opt;
    CLI::App* check = app.add_subcommand("check-alpha", "Feasibility of an exponent vector");
    check->add_option("--alpha", check_opt.alpha_text, "Comma-separated exponents")->required();

    CommonOptions synth_opt;
    Index synth_n = 0;
    CLI::App* synth = app.add_subcommand("synth", "Write a seeded random sparse tensor");
    synth->add_option("--n", synth_n, "Number of nodes (= number of layers)")->required();
    synth->add_option("--seed", synth_opt.seed, "Generator seed");
    synth->add_option("--output", synth_opt.output, "Edge-list file to write")->required();

    CommonOptions conv_opt;
    std::string sweep;
    CLI::App* convergence =
        app.add_subcommand("convergence", "Per-iteration step and bound, or an alpha sweep");
    attach_input_flags(convergence, conv_opt);
    attach_solver_flags(convergence, conv_opt);
    convergence->add_option("--alpha-sweep", sweep, "Uniform alpha sweep from:to:step");
    convergence->add_option("--output", conv_opt.output, "CSV file to write (default stdout)");

    std::string compare_left;
    std::string compare_right;
    Index compare_k = 10;
    std::string metric = "isim";
    CLI::App* compare = app.add_subcommand("compare", "Compare two solution files");
    compare->add_option("left", compare_left, "First solution json")->required();
    compare->add_option("right", compare_right, "Second solution json")->required();
    compare->add_option("--k", compare_k, "Ranking depth");
    compare->add_option("--metric", metric, "isim or kendall");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rank->parsed()) return run_rank(rank_opt);
        if (hits->parsed()) return run_hits(hits_opt, classical);
        if (check->parsed()) return run_check_alpha(check_opt);
        if (synth->parsed()) return run_synth(synth_n, synth_opt);
        if (convergence->parsed()) return run_convergence(conv_opt, sweep);
        if (compare->parsed()) return run_compare(compare_left, compare_right, compare_k, metric);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

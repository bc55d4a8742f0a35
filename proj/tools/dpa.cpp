#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpa/errors.hpp"
#include "dpa/model.hpp"
#include "dpa/prob_tree.hpp"
#include "dpa/report.hpp"
#include "dpa/simulate.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dpa::ModelError("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const dpa::Json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw dpa::ModelError("cannot open output file: " + out_path);
    out << text;
}

struct QuerySpec {
    bool histories = false;
    bool makespan = false;
    std::vector<std::pair<std::string, std::string>> precedes;
    bool any = false;
};

QuerySpec parse_queries(const std::vector<std::string>& queries) {
    QuerySpec q;
    for (const auto& s : queries) {
        q.any = true;
        if (s == "histories") {
            q.histories = true;
        } else if (s == "makespan") {
            q.makespan = true;
        } else if (s.rfind("precedes:", 0) == 0) {
            const std::string rest = s.substr(9);
            const auto comma = rest.find(',');
            if (comma == std::string::npos)
                throw dpa::ModelError("malformed query '" + s + "' (expected precedes:a,b)");
            q.precedes.emplace_back(rest.substr(0, comma), rest.substr(comma + 1));
        } else {
            throw dpa::ModelError("unknown query '" + s +
                                  "' (expected histories, makespan or precedes:a,b)");
        }
    }
    return q;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and statistical analysis of duration probabilistic automata"};
    app.require_subcommand(1);

    std::string model_path, out_path;
    std::string prune_eps = "0";
    std::vector<std::string> queries;
    int cdf_grid = 101;

    auto* analyze = app.add_subcommand("analyze", "exact probabilistic reachability analysis");
    analyze->add_option("model", model_path, "model file (JSON)")->required();
    analyze->add_option("--prune-eps", prune_eps, "discard branches below this mass (rational)");
    analyze->add_option("--query", queries,
                        "histories | makespan | precedes:a,b (repeatable; default: histories "
                        "plus makespan when the absolute-time clock is on)");
    analyze->add_option("--cdf-grid", cdf_grid, "number of cdf sample points")
        ->check(CLI::Range(2, 100000));
    analyze->add_option("--out", out_path, "write the report here instead of stdout");

    std::uint64_t samples = 0, seed = 0;
    int threads = 0;

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimation");
    simulate->add_option("model", model_path, "model file (JSON)")->required();
    simulate->add_option("--samples", samples, "number of runs")
        ->envname("DPA_SAMPLES")
        ->required();
    simulate->add_option("--seed", seed, "RNG seed")->envname("DPA_SEED")->required();
    simulate->add_option("--threads", threads, "worker threads (0 = auto)");
    simulate->add_option("--out", out_path, "write the report here instead of stdout");

    std::vector<std::string> overrides;
    auto* compare = app.add_subcommand("compare", "check exact analysis against simulation");
    compare->add_option("model", model_path, "model file (JSON)")->required();
    compare->add_option("--samples", samples, "number of runs")
        ->envname("DPA_SAMPLES")
        ->required();
    compare->add_option("--seed", seed, "RNG seed")->envname("DPA_SEED")->required();
    compare->add_option("--threads", threads, "worker threads (0 = auto)");
    compare->add_option("--out", out_path, "write the report here instead of stdout");
    compare->add_option("--exact-override", overrides, "history=p/q (testing hook)")->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string text = slurp(model_path);
        const dpa::DpaModel model = dpa::parse_model(text);
        const std::string digest = dpa::model_digest(text);

        if (analyze->parsed()) {
            dpa::AnalyzeOptions opt;
            opt.prune_eps = dpa::parse_rational(prune_eps);
            opt.cdf_grid = cdf_grid;
            const QuerySpec q = parse_queries(queries);
            if (q.any) {
                opt.histories = q.histories;
                opt.makespan_query = q.makespan;
                for (const auto& [a, b] : q.precedes)
                    opt.precedes.emplace_back(model.parse_event(a), model.parse_event(b));
            }
            const dpa::ProbTree tree = dpa::build_prob_tree(model, opt.prune_eps);
            emit(dpa::analyze_report(model, digest, tree, opt), out_path);
            return 0;
        }

        if (simulate->parsed()) {
            const dpa::EstimateReport est = dpa::estimate(model, samples, seed, threads);
            emit(dpa::simulate_report(model, digest, est), out_path);
            return 0;
        }

        // compare
        std::map<std::string, dpa::Rational> exact_overrides;
        for (const auto& s : overrides) {
            const auto eqpos = s.rfind('=');
            if (eqpos == std::string::npos)
                throw dpa::ModelError("malformed --exact-override (expected history=p/q)");
            exact_overrides[s.substr(0, eqpos)] = dpa::parse_rational(s.substr(eqpos + 1));
        }
        const dpa::ProbTree tree = dpa::build_prob_tree(model);
        const dpa::EstimateReport est = dpa::estimate(model, samples, seed, threads);
        const dpa::CompareResult res =
            dpa::compare_report(model, digest, tree, est, exact_overrides);
        emit(res.doc, out_path);
        return res.pass ? 0 : 3;
    } catch (const dpa::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

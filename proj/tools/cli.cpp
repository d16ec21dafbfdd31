#include "cli.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "genfinder/branch.hpp"
#include "genfinder/embed.hpp"
#include "genfinder/reduction.hpp"
#include "genfinder/snapshot_io.hpp"

namespace genfinder::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
    double tol = kDefaultTol;
    bool tol_set = false;
    int branch_bound = kDefaultBranchBound;
    bool emit_json = false;
    std::string out_path;
    std::string convention = "transfer";
    bool corpus = false;
};

int thread_budget() {
    if (const char* env = std::getenv("GENFINDER_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return int(std::min(2u, hw == 0 ? 1u : hw));
}

IndexConvention parse_convention(const std::string& name) {
    if (name == "transfer") return IndexConvention::TransferRowMajor;
    if (name == "paper") return IndexConvention::PaperTrace;
    throw Error("unknown convention '" + name + "' (expected 'transfer' or 'paper')");
}

int exit_code_for(Verdict v) {
    switch (v) {
        case Verdict::Markovian: return kExitYes;
        case Verdict::NonMarkovian: return kExitNo;
        case Verdict::Indeterminate: return kExitIndeterminate;
    }
    return kExitIndeterminate;
}

json conditions_json(const LindbladConditions& c) {
    return {{"hermiticity_residual", c.hermiticity_residual},
            {"normalization_residual", c.normalization_residual},
            {"ccp_margin", c.ccp_margin}};
}

json report_json(const std::string& command, const GeneratorReport& rep, int exit_code) {
    json j = {{"version", "report-v1"},
              {"command", command},
              {"verdict", to_string(rep.verdict)},
              {"cause", to_string(rep.cause)},
              {"exit_code", exit_code},
              {"tolerance", rep.tolerance_used},
              {"branch_bound", rep.branch_bound_used},
              {"conditions", conditions_json(rep.conditions)}};
    if (rep.witness_m) j["witness_m"] = *rep.witness_m;
    if (!rep.snapshot_residuals.empty()) j["snapshot_residuals"] = rep.snapshot_residuals;
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    return j;
}

const char* verdict_phrase(Verdict v, bool classical) {
    if (!classical) return to_string(v);
    switch (v) {
        case Verdict::Markovian: return "embeddable";
        case Verdict::NonMarkovian: return "non-embeddable";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

void print_report(std::ostream& out, const std::string& command, const GeneratorReport& rep,
                  int exit_code, bool as_json, bool classical = false) {
    if (as_json) {
        // JSON keeps the uniform verdict vocabulary across commands.
        out << report_json(command, rep, exit_code).dump(1) << '\n';
        return;
    }
    out << command << ": " << verdict_phrase(rep.verdict, classical);
    if (rep.cause != DecisionCause::None) out << " (" << to_string(rep.cause) << ")";
    out << '\n';
    out << "  tolerance " << rep.tolerance_used << ", branch bound " << rep.branch_bound_used
        << '\n';
    out << "  residuals: hermiticity " << rep.conditions.hermiticity_residual
        << ", normalization " << rep.conditions.normalization_residual << ", ccp margin "
        << rep.conditions.ccp_margin << '\n';
    if (rep.witness_m) {
        out << "  witness m = [";
        for (std::size_t i = 0; i < rep.witness_m->size(); ++i)
            out << (i ? " " : "") << (*rep.witness_m)[i];
        out << "]\n";
    }
    if (!rep.detail.empty()) out << "  " << rep.detail << '\n';
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json generator_file_json(const CMat& witness, int dim) {
    return {{"kind", "generator"},
            {"dim", dim},
            {"convention", "transfer-rowmajor-v1"},
            {"matrix", complex_matrix_to_json(witness)}};
}

int cmd_check_markov(const fs::path& file, const Options& opt, std::ostream& out) {
    const TransferMatrix t =
        transfer_from_json(load_json_file(file), parse_convention(opt.convention));
    const GeneratorReport rep = decide_markovian(t, opt.tol, opt.branch_bound);
    const int code = exit_code_for(rep.verdict);
    print_report(out, "check-markov", rep, code, opt.emit_json);
    return code;
}

int cmd_check_embed(const fs::path& file, const Options& opt, std::ostream& out) {
    const StochasticMatrix t = stochastic_from_json(load_json_file(file));
    const GeneratorReport rep = decide_embeddable(t, opt.tol, opt.branch_bound);
    const int code = exit_code_for(rep.verdict);
    print_report(out, "check-embed", rep, code, opt.emit_json, /*classical=*/true);
    return code;
}

int cmd_extract(const fs::path& file, const Options& opt, std::ostream& out) {
    const json j = load_json_file(file);
    const std::string kind = j.value("kind", "");

    GeneratorReport rep;
    json genfile;
    if (kind == "classical") {
        const StochasticMatrix t = stochastic_from_json(j);
        rep = decide_embeddable(t, opt.tol, opt.branch_bound);
        if (rep.verdict == Verdict::Markovian)
            genfile = generator_file_json(*rep.witness_L, t.dim);
    } else {
        const TransferMatrix t = transfer_from_json(j, parse_convention(opt.convention));
        rep = decide_markovian(t, opt.tol, opt.branch_bound);
        if (rep.verdict == Verdict::Markovian) {
            genfile = generator_file_json(*rep.witness_L, t.hilbert_dim);
            const LindbladDecomposition dec = decompose_lindblad(*rep.witness_L, opt.tol);
            genfile["hamiltonian"] = complex_matrix_to_json(dec.hamiltonian);
            genfile["coupling"] = complex_matrix_to_json(dec.coupling);
            genfile["reassembly_residual"] = dec.reassembly_residual;
        }
    }

    const int code = exit_code_for(rep.verdict);
    if (rep.verdict == Verdict::Markovian) {
        const fs::path target = opt.out_path.empty() ? fs::path(file.string() + ".generator.json")
                                                     : fs::path(opt.out_path);
        atomic_write_file(target, genfile.dump(1));
        if (!opt.emit_json) out << "extract: wrote " << target.string() << '\n';
    }
    print_report(out, "extract", rep, code, opt.emit_json);
    return code;
}

int cmd_fit(const fs::path& file, const Options& opt, std::ostream& out) {
    const SnapshotSeries s =
        series_from_json(load_json_file(file), parse_convention(opt.convention));
    const GeneratorReport rep = fit_generator_series(s, opt.tol, opt.branch_bound);
    const int code = exit_code_for(rep.verdict);
    if (rep.verdict == Verdict::Markovian) {
        json genfile = generator_file_json(*rep.witness_L, s.entries.front().snapshot.hilbert_dim);
        genfile["snapshot_residuals"] = rep.snapshot_residuals;
        const fs::path target = opt.out_path.empty() ? fs::path(file.string() + ".generator.json")
                                                     : fs::path(opt.out_path);
        atomic_write_file(target, genfile.dump(1));
        if (!opt.emit_json) out << "fit: wrote " << target.string() << '\n';
    }
    print_report(out, "fit", rep, code, opt.emit_json);
    return code;
}

int cmd_reduce(const fs::path& file, const Options& opt, std::ostream& out) {
    if (opt.out_path.empty()) throw Error("reduce: --out directory is required");
    const SatInstance inst = parse_sat(slurp(file));
    if (inst.num_vars > kVerifyVarCap || int(inst.clauses.size()) > kVerifyClauseCap)
        throw TooLarge("reduce: instance exceeds the documented caps");
    const ReductionBundle bundle = build_reduction_bundle(inst);
    export_bundle(bundle, opt.out_path);
    if (opt.emit_json) {
        out << json({{"version", "report-v1"},
                     {"command", "reduce"},
                     {"out_dir", opt.out_path},
                     {"d", bundle.d},
                     {"sigma", bundle.sigma.to_double()},
                     {"exit_code", kExitYes}})
                   .dump(1)
            << '\n';
    } else {
        out << "reduce: wrote bundle (d = " << bundle.d << ", sigma = "
            << bundle.sigma.to_double() << ") to " << opt.out_path << '\n';
    }
    return kExitYes;
}

json verification_json(const SatInstance& inst, const VerificationReport& q,
                       const ClassicalVerificationReport& c) {
    json clause_arr = json::array();
    for (const auto& cl : inst.clauses) clause_arr.push_back({cl[0], cl[1], cl[2]});
    return {{"num_vars", inst.num_vars},
            {"clauses", clause_arr},
            {"sat", q.sat_satisfiable},
            {"inequalities_feasible", q.inequalities_feasible},
            {"quantum_verdict", to_string(q.quantum_verdict)},
            {"classical_feasible", c.classical_feasible},
            {"worst_branch_closure", q.worst_branch_closure},
            {"tolerance", q.tolerance_used},
            {"agree", q.agree && c.agree}};
}

int cmd_verify_reduction(const fs::path& file, const Options& opt, std::ostream& out) {
    std::vector<SatInstance> instances;
    if (opt.corpus) {
        instances = canonical_corpus(5, 4);
    } else {
        instances.push_back(parse_sat(slurp(file)));
    }

    const double tol = opt.tol_set ? opt.tol : 0.0;
    std::vector<json> results(instances.size());
    std::vector<bool> agrees(instances.size(), false);

    const int threads = std::min<int>(thread_budget(), int(instances.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= instances.size()) return;
            const VerificationReport q = verify_reduction(instances[i], tol);
            const ClassicalVerificationReport c = verify_classical_reduction(instances[i], tol);
            results[i] = verification_json(instances[i], q, c);
            agrees[i] = q.agree && c.agree;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    bool all_agree = true;
    for (const bool a : agrees) all_agree &= a;
    const int code = all_agree ? kExitYes : kExitMismatch;

    if (opt.emit_json) {
        out << json({{"version", "report-v1"},
                     {"command", "verify-reduction"},
                     {"instances", results},
                     {"all_agree", all_agree},
                     {"exit_code", code}})
                   .dump(1)
            << '\n';
    } else {
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            out << "instance " << i + 1 << "/" << results.size() << ": V="
                << r["num_vars"].get<int>() << " C=" << r["clauses"].size() << " sat="
                << (r["sat"].get<bool>() ? "yes" : "no") << " quantum="
                << r["quantum_verdict"].get<std::string>() << " classical="
                << (r["classical_feasible"].get<bool>() ? "feasible" : "infeasible")
                << (r["agree"].get<bool>() ? "  [agree]" : "  [MISMATCH]") << '\n';
        }
        out << (all_agree ? "all checks agree" : "verification mismatch") << '\n';
    }
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"decide, extract, and encode time-independent master-equation generators"};
    app.require_subcommand(1);

    Options opt;
    std::string input_file;

    auto add_common = [&](CLI::App* sub, bool needs_file) {
        sub->add_option("--tol", opt.tol, "decision tolerance")
            ->check(CLI::PositiveNumber)
            ->each([&](const std::string&) { opt.tol_set = true; });
        sub->add_option("--branch-bound", opt.branch_bound, "integer branch search bound")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--json", opt.emit_json, "machine-readable report on stdout");
        sub->add_option("--out", opt.out_path, "output path");
        sub->add_option("--convention", opt.convention,
                        "snapshot index pairing: transfer | paper");
        if (needs_file)
            sub->add_option("file", input_file, "input file")->required();
    };

    CLI::App* markov = app.add_subcommand("check-markov", "is a quantum snapshot Markovian");
    add_common(markov, true);
    CLI::App* embed = app.add_subcommand("check-embed", "is a stochastic matrix embeddable");
    add_common(embed, true);
    CLI::App* extract = app.add_subcommand("extract", "extract a witness generator");
    add_common(extract, true);
    CLI::App* fit = app.add_subcommand("fit", "fit one generator to a snapshot series");
    add_common(fit, true);
    CLI::App* reduce = app.add_subcommand("reduce", "encode a 1-in-3SAT instance as a snapshot");
    add_common(reduce, true);
    CLI::App* verify = app.add_subcommand("verify-reduction", "cross-check the encoding");
    add_common(verify, false);
    verify->add_flag("--corpus", opt.corpus, "sweep the bundled small-instance corpus");
    verify->add_option("file", input_file, "1-in-3SAT file");

    std::vector<std::string> argv_like = args;
    std::vector<const char*> argv;
    argv.reserve(argv_like.size());
    for (const auto& a : argv_like) argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitYes;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (verify->parsed() && !opt.corpus && input_file.empty()) {
            err << "usage error: verify-reduction needs a file or --corpus\n";
            return kExitUsage;
        }
        if (!input_file.empty() && !fs::exists(input_file)) {
            err << "error: no such file: " << input_file << '\n';
            return kExitNoInput;
        }
        if (verify->parsed()) return cmd_verify_reduction(input_file, opt, out);
        if (markov->parsed()) return cmd_check_markov(input_file, opt, out);
        if (embed->parsed()) return cmd_check_embed(input_file, opt, out);
        if (extract->parsed()) return cmd_extract(input_file, opt, out);
        if (fit->parsed()) return cmd_fit(input_file, opt, out);
        if (reduce->parsed()) return cmd_reduce(input_file, opt, out);
        err << "usage error: unknown subcommand\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const InvalidClause& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const InvalidSnapshot& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const TooLarge& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace genfinder::cli

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "permpat/bench.hpp"
#include "permpat/distance.hpp"
#include "permpat/forge.hpp"
#include "permpat/oracle.hpp"
#include "permpat/partition.hpp"
#include "permpat/seq_io.hpp"
#include "permpat/template_search.hpp"
#include "permpat/testers.hpp"

using json = nlohmann::json;
using namespace permpat;

namespace {

json block_list(const std::vector<ConsecutiveBlock>& blocks) {
    json out = json::array();
    for (const auto& b : blocks) out.push_back({b.lo, b.hi});
    return out;
}

json signed_partition_json(const SignedPartition& P) {
    json signs = json::array();
    for (Sign s : P.signs()) signs.push_back(std::string(1, sign_char(s)));
    return {{"blocks", block_list(P.partition().blocks())}, {"signs", signs}};
}

std::string blocks_text(const std::vector<ConsecutiveBlock>& blocks) {
    std::string out;
    for (const auto& b : blocks) {
        if (!out.empty()) out += ' ';
        out += "[" + std::to_string(b.lo) + "," + std::to_string(b.hi) + "]";
    }
    return out;
}

int run_analyze(const std::string& perm, const std::string& format, int uspn_cap,
                int entangling_cap) {
    const Permutation pi = Permutation::parse(perm);
    const int k = pi.size();
    const bool json_out = format == "json-lines";
    if (json_out)
        std::cout << json{{"quantity", "k"}, {"value", k}} << "\n";
    else
        std::cout << "k: " << k << "\n";

    if (k >= 2) {
        const int gap = max_adjacent_gap(pi);
        if (json_out)
            std::cout << json{{"quantity", "m"}, {"value", gap}} << "\n";
        else
            std::cout << "m(pi): " << gap << "\n";
    } else if (!json_out) {
        std::cout << "m(pi): undefined for k = 1\n";
    }

    if (k <= entangling_cap) {
        const auto d = entangling_number(pi, entangling_cap);
        json record{{"quantity", "d"}, {"value", d.value}};
        if (d.witness) record["witness"] = block_list(d.witness->blocks);
        if (json_out)
            std::cout << record << "\n";
        else if (d.witness)
            std::cout << "d(pi): " << d.value
                      << "  entangling: " << blocks_text(d.witness->blocks) << "\n";
        else
            std::cout << "d(pi): 0 (monotone pattern, no entangling)\n";
    } else {
        if (json_out)
            std::cout << json{{"quantity", "d"},
                              {"error", "k exceeds cap " +
                                            std::to_string(entangling_cap)}}
                      << "\n";
        else
            std::cout << "d(pi): unavailable (k > " << entangling_cap << ")\n";
    }

    if (k <= uspn_cap) {
        const auto u = uspn(pi);
        if (json_out)
            std::cout << json{{"quantity", "u"},
                              {"value", u.value},
                              {"witness", signed_partition_json(u.witness)}}
                      << "\n";
        else {
            std::string signs;
            for (Sign s : u.witness.signs()) signs += sign_char(s);
            std::cout << "u(pi): " << u.value << "  partition: "
                      << blocks_text(u.witness.partition().blocks())
                      << "  signs: " << signs << "\n";
        }
    } else {
        if (json_out)
            std::cout << json{{"quantity", "u"},
                              {"error", "k exceeds cap " + std::to_string(uspn_cap)}}
                      << "\n";
        else
            std::cout << "u(pi): unavailable (k > " << uspn_cap << ")\n";
    }

    const bool adjacent = k >= 2 && std::abs(pi.position_of(1) - pi.position_of(k)) == 1;
    if (json_out)
        std::cout << json{{"quantity", "extremes_adjacent"}, {"value", adjacent}}
                  << "\n";
    else
        std::cout << "|pi^-1(1) - pi^-1(k)| == 1: " << (adjacent ? "yes" : "no")
                  << "\n";
    return 0;
}

int run_dist(const std::string& seq_file, const std::string& perm, bool exact,
             long long budget, std::size_t exact_threshold, const std::string& format) {
    const Sequence f = load_seq_v1(seq_file);
    const Permutation pi = Permutation::parse(perm);
    DistanceReport report = distance_bounds(f, pi, exact ? 0 : exact_threshold);
    std::optional<bool> budget_exceeded;
    if (exact) {
        const auto result = deletion_distance_exact(
            f, pi,
            budget >= 0 ? std::optional<std::size_t>(static_cast<std::size_t>(budget))
                        : std::nullopt);
        budget_exceeded = result.budget_exceeded;
        if (!result.budget_exceeded) report.exact = result.value;
    }
    if (format == "json-lines") {
        json record{{"lower", report.lower}, {"upper", report.upper}};
        if (report.exact)
            record["exact"] = *report.exact;
        else
            record["exact"] = nullptr;
        if (budget_exceeded) record["budget_exceeded"] = *budget_exceeded;
        std::cout << record << "\n";
    } else {
        std::cout << "lower: " << report.lower << "\n";
        std::cout << "upper: " << report.upper << "\n";
        if (report.exact)
            std::cout << "exact: " << *report.exact << "\n";
        else if (budget_exceeded && *budget_exceeded)
            std::cout << "exact: budget exceeded\n";
        else
            std::cout << "exact: not computed (n > " << exact_threshold << ")\n";
    }
    return 0;
}

void save_delta(const std::string& path, int delta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << delta << "\n";
}

int run_test(const std::string& seq_file, const std::string& perm, double eps,
             const std::string& tester, std::uint64_t seed, long long budget,
             const std::string& transcript_file, const std::string& format) {
    const Sequence f = load_seq_v1(seq_file);
    const Permutation pi = Permutation::parse(perm);
    QueryOracle oracle(f, AccessMode::NonAdaptive, 1,
                       budget >= 0
                           ? std::optional<std::size_t>(static_cast<std::size_t>(budget))
                           : std::nullopt);
    const Verdict verdict = tester == "interval"
                                ? interval_test(oracle, pi, eps, seed)
                                : sampler_test(oracle, pi, eps, seed);
    if (!transcript_file.empty()) {
        std::ofstream out(transcript_file);
        if (!out) throw std::runtime_error("cannot write " + transcript_file);
        out << "round,position,value\n";
        for (const auto& rec : oracle.transcript())
            out << rec.round << "," << rec.position << "," << format_value(rec.value)
                << "\n";
    }
    if (format == "json-lines") {
        json record{{"decision", verdict.reject ? "reject" : "accept"},
                    {"queries_used", verdict.queries_used},
                    {"rounds_used", verdict.rounds_used},
                    {"budget_limited", verdict.budget_limited},
                    {"sampler_fallback", verdict.used_sampler_fallback},
                    {"leading_constant", verdict.leading_constant}};
        if (verdict.interval_size) {
            record["interval_size"] = verdict.interval_size;
            record["inclusion_probability"] = verdict.inclusion_probability;
        }
        if (verdict.witness) record["witness"] = verdict.witness->indices;
        std::cout << record << "\n";
    } else {
        std::cout << (verdict.reject ? "reject" : "accept") << " (queries: "
                  << verdict.queries_used
                  << ", constant: " << verdict.leading_constant << ")\n";
        if (verdict.witness) {
            std::cout << "witness:";
            for (int p : verdict.witness->indices) std::cout << ' ' << p;
            std::cout << "\n";
        }
        if (verdict.budget_limited) std::cout << "note: budget limited the plan\n";
    }
    return verdict.reject ? 1 : 0;
}

int run_template_solve(const std::string& algo, int rounds, long long budget,
                       const std::string& s_file, const std::string& t_file,
                       long long m, std::uint64_t seed,
                       const std::string& expect_file) {
    TemplateSearchInstance inst;
    if (!s_file.empty() && !t_file.empty()) {
        inst.S = load_seq_v1(s_file);
        inst.T = load_seq_v1(t_file);
        if (inst.S.size() != 3 * inst.T.size())
            throw std::runtime_error("S must have exactly 3m entries");
        inst.delta = -1;  // unknown; solvers never read it
    } else if (m >= 1) {
        inst = forge_template_search(static_cast<int>(m), seed);
    } else {
        throw std::runtime_error("need either --s-file/--t-file or --m");
    }
    int answer = 0;
    std::size_t queries = 0;
    if (algo == "binary") {
        TemplateOracle oracle(inst, AccessMode::Adaptive);
        answer = template_binary_search(oracle);
        queries = oracle.queries_used();
    } else {
        if (rounds < 1) throw std::runtime_error("grid solver needs --rounds >= 1");
        if (budget < 1) throw std::runtime_error("grid solver needs --budget >= 1");
        TemplateOracle oracle(inst, AccessMode::Rounds, rounds,
                              static_cast<std::size_t>(budget));
        answer = template_r_round_solver(oracle, rounds,
                                         static_cast<std::size_t>(budget), seed);
        queries = oracle.queries_used();
    }
    std::cout << "offset: " << answer << " (queries: " << queries << ")\n";
    if (!expect_file.empty()) {
        std::ifstream in(expect_file);
        int expected = 0;
        if (!(in >> expected)) throw std::runtime_error("cannot read " + expect_file);
        std::cout << "expected: " << expected
                  << (expected == answer ? " [match]" : " [MISMATCH]") << "\n";
        return expected == answer ? 0 : 1;
    }
    return 0;
}

int run_bench(const std::string& config_file, bool gnuplot, bool timings) {
    std::ifstream in(config_file);
    if (!in) throw std::runtime_error("cannot open " + config_file);
    SweepConfig cfg = parse_sweep_config(in);
    if (timings) cfg.timings = true;
    const SweepResult result = run_sweep(cfg);
    const std::string csv = sweep_csv(result);
    const std::string summary = sweep_summary_jsonl(cfg, result);
    const std::string csv_path = cfg.out_dir + "/sweep.csv";
    const std::string summary_path = cfg.out_dir + "/summary.jsonl";
    {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        out << csv;
    }
    {
        std::ofstream out(summary_path);
        if (!out) throw std::runtime_error("cannot write " + summary_path);
        out << summary;
    }
    if (gnuplot) {
        std::ofstream out(cfg.out_dir + "/sweep.gp");
        out << gnuplot_script("sweep.csv");
    }
    std::cout << summary;
    std::cout << "wrote " << csv_path << " and " << summary_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permpat: forbidden order pattern testing toolkit"};
    app.require_subcommand(1);

    std::string perm, seq_file, format = "text", out_path, tester = "sampler";
    std::string s_file, t_file, algo = "binary", transcript_file, config_file;
    std::string expect_file;
    double eps = 0.1;
    std::uint64_t seed = 1;
    long long budget = -1, gen_n = 0, gen_m = 0;
    int rounds = 1, uspn_cap = 10, entangling_cap = 14;
    std::size_t exact_threshold = 30;
    bool exact = false, snap = false, gnuplot = false, timings = false;

    auto* analyze = app.add_subcommand("analyze", "pattern structure quantities");
    analyze->add_option("perm", perm, "pattern literal, e.g. 1,3,2")->required();
    analyze->add_option("--format", format)->check(CLI::IsMember({"text", "json-lines"}));
    analyze->add_option("--uspn-cap", uspn_cap);
    analyze->add_option("--entangling-cap", entangling_cap);

    auto* dist = app.add_subcommand("dist", "distance to pi-freeness");
    dist->add_option("seq", seq_file, "seq-v1 input file")->required();
    dist->add_option("perm", perm)->required();
    dist->add_flag("--exact", exact, "run the exact branch-and-bound");
    dist->add_option("--budget", budget, "cap for the exact search");
    dist->add_option("--exact-threshold", exact_threshold);
    dist->add_option("--format", format)->check(CLI::IsMember({"text", "json-lines"}));

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto* gen_far = gen->add_subcommand("far", "planted hard instance");
    gen_far->add_option("--perm", perm)->required();
    gen_far->add_option("--n", gen_n)->required();
    gen_far->add_option("--eps", eps)->required();
    gen_far->add_option("--seed", seed);
    gen_far->add_option("--out", out_path)->required();
    gen_far->add_flag("--snap", snap, "snap n and eps to the nearest conforming pair");
    auto* gen_free = gen->add_subcommand("free", "pi-free monotone control");
    gen_free->add_option("--perm", perm)->required();
    gen_free->add_option("--n", gen_n)->required();
    gen_free->add_option("--seed", seed);
    gen_free->add_option("--out", out_path)->required();
    auto* gen_template = gen->add_subcommand("template", "Template-Search instance");
    gen_template->add_option("--m", gen_m)->required();
    gen_template->add_option("--seed", seed);
    gen_template->add_option("--out", out_path, "prefix for .s.seq/.t.seq/.delta")
        ->required();
    auto* gen_reduction = gen->add_subcommand("reduction", "(f_yes, f_no) pair");
    gen_reduction->add_option("--m", gen_m)->required();
    gen_reduction->add_option("--seed", seed);
    gen_reduction->add_option("--out", out_path, "prefix for .yes.seq/.no.seq/.delta")
        ->required();

    auto* test = app.add_subcommand("test", "run a tester; exit 0 accept, 1 reject");
    test->add_option("seq", seq_file)->required();
    test->add_option("--perm", perm)->required();
    test->add_option("--eps", eps)->required();
    test->add_option("--tester", tester)->check(CLI::IsMember({"sampler", "interval"}));
    test->add_option("--seed", seed);
    test->add_option("--budget", budget);
    test->add_option("--emit-transcript", transcript_file);
    test->add_option("--format", format)->check(CLI::IsMember({"text", "json-lines"}));

    auto* tmpl = app.add_subcommand("template", "Template-Search solvers");
    auto* solve = tmpl->add_subcommand("solve", "recover the hidden offset");
    solve->add_option("--algo", algo)->check(CLI::IsMember({"binary", "grid"}));
    solve->add_option("--rounds", rounds);
    solve->add_option("--budget", budget);
    solve->add_option("--s-file", s_file);
    solve->add_option("--t-file", t_file);
    solve->add_option("--m", gen_m);
    solve->add_option("--seed", seed);
    solve->add_option("--expect-file", expect_file, "ground-truth sidecar to compare");

    auto* bench = app.add_subcommand("bench", "Monte Carlo budget sweeps");
    bench->add_option("--config", config_file)->required();
    bench->add_flag("--gnuplot", gnuplot);
    bench->add_flag("--timings", timings, "record wall times (breaks reproducibility)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return run_analyze(perm, format, uspn_cap, entangling_cap);
        if (*dist) return run_dist(seq_file, perm, exact, budget, exact_threshold, format);
        if (*gen) {
            if (*gen_far) {
                const Permutation pi = Permutation::parse(perm);
                std::size_t n = static_cast<std::size_t>(gen_n);
                double use_eps = eps;
                if (snap) {
                    const auto p = snap_far_params(pi, n, eps);
                    if (p.n != n || p.eps != eps)
                        std::cerr << "snapped to n = " << p.n << ", eps = " << p.eps
                                  << " (" << p.planted << " planted copies)\n";
                    n = p.n;
                    use_eps = p.eps;
                }
                const auto witness = uspn(pi).witness;
                save_seq_v1(out_path, forge_far_instance({pi, witness, n, use_eps, seed}));
                std::cout << "wrote " << out_path << "\n";
            } else if (*gen_free) {
                save_seq_v1(out_path,
                            forge_free_instance(Permutation::parse(perm),
                                                static_cast<std::size_t>(gen_n), seed));
                std::cout << "wrote " << out_path << "\n";
            } else if (*gen_template) {
                const auto inst =
                    forge_template_search(static_cast<int>(gen_m), seed);
                save_seq_v1(out_path + ".s.seq", inst.S);
                save_seq_v1(out_path + ".t.seq", inst.T);
                save_delta(out_path + ".delta", inst.delta);
                std::cout << "wrote " << out_path << ".{s.seq,t.seq,delta}\n";
            } else {
                const auto pair = forge_reduction_pair(
                    forge_template_search(static_cast<int>(gen_m), seed));
                save_seq_v1(out_path + ".yes.seq", pair.f_yes);
                save_seq_v1(out_path + ".no.seq", pair.f_no);
                save_delta(out_path + ".delta", pair.source.delta);
                std::cout << "wrote " << out_path << ".{yes.seq,no.seq,delta}\n";
            }
            return 0;
        }
        if (*test)
            return run_test(seq_file, perm, eps, tester, seed, budget, transcript_file,
                            format);
        if (*tmpl)
            return run_template_solve(algo, rounds, budget, s_file, t_file, gen_m, seed,
                                      expect_file);
        if (*bench) return run_bench(config_file, gnuplot, timings);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}

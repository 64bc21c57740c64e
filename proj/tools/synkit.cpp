// synkit -- command-line front end: generation, analysis, synthesis with
// certificates, oracle queries, and batch experiments.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "synkit/classes.hpp"
#include "synkit/codes.hpp"
#include "synkit/experiment.hpp"
#include "synkit/induced.hpp"
#include "synkit/oracle.hpp"
#include "synkit/synthesis.hpp"

namespace {

using namespace synkit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write '" + path + "'");
    out << text;
}

std::string with_metadata(const std::string& family, const Automaton& a,
                          const std::string& extra = {}) {
    std::string text = "# family=" + family + "\n";
    if (!extra.empty())
        text += "# " + extra + "\n";
    return text + format_automaton(a);
}

// -- synth ------------------------------------------------------------------------

struct MethodChoice {
    std::string name;
    std::size_t c = 0;
};

MethodChoice parse_method(const std::string& method) {
    MethodChoice choice;
    const auto colon = method.find(':');
    choice.name = method.substr(0, colon);
    if (colon != std::string::npos) {
        const std::string arg = method.substr(colon + 1);
        try {
            choice.c = static_cast<std::size_t>(std::stoul(arg));
        } catch (const std::exception&) {
            throw ValidationError("bad method parameter '" + arg + "'");
        }
    }
    return choice;
}

ResetCertificate synth_greedy_ext(const Automaton& a) {
    const std::size_t n = a.num_states();
    if (n == 1)
        return make_certificate(a, {}, "greedy-extension", 0, {});
    if (!is_strongly_connected(a))
        throw ValidationError("greedy extension needs a strongly connected automaton");
    const RatVec alpha =
        stationary_distribution(markov_matrix(a, LetterDistribution::uniform(a.num_letters())))
            .alpha;
    const WordSet reduced = reduce_alpha(a, n - 1, alpha);
    // letter-prefixed proper suffixes support a positive distribution fixing alpha
    std::vector<Word> expanded;
    std::set<Word> suffixes;
    for (const Word& u : reduced.words)
        for (std::size_t i = 1; i <= u.size(); ++i)
            suffixes.insert(Word(u.begin() + static_cast<std::ptrdiff_t>(i), u.end()));
    if (suffixes.empty())
        suffixes.insert(Word{});
    for (const Word& suf : suffixes)
        for (Letter l = 0; l < a.num_letters(); ++l) {
            Word w{l};
            w.insert(w.end(), suf.begin(), suf.end());
            expanded.push_back(std::move(w));
        }
    WordSet w1;
    w1.words.emplace_back();
    return greedy_extension(a, w1, WordSet::of(std::move(expanded)), alpha, Word{});
}

ResetCertificate dispatch_method(const Automaton& a, const MethodChoice& choice) {
    if (choice.name == "greedy-ext")
        return synth_greedy_ext(a);
    if (choice.name == "greedy-comp")
        return greedy_compression(a);
    if (choice.name == "decoder") {
        const auto d = as_decoder(a);
        if (!d)
            throw ValidationError("input is not decoder-shaped (root 0)");
        return decoder_reset(*d);
    }
    if (choice.name == "quasi-eulerian")
        return quasi_eulerian_reset(a, choice.c);
    if (choice.name == "quasi-one-cluster")
        return quasi_one_cluster_reset(a, choice.c);
    throw ValidationError("unknown method '" + choice.name + "'");
}

ResetCertificate synth_auto(const Automaton& a, std::string& method_out) {
    if (!is_synchronizing(a)) {
        const PairTable pt(a);
        const auto pair = pt.incompressible_pair();
        throw CriterionError("not synchronizing: pair {" + std::to_string(pair->first) + "," +
                             std::to_string(pair->second) + "} is incompressible");
    }
    // strongest certified bounds first; keep the smallest certified bound
    std::optional<ResetCertificate> best;
    std::string best_method;
    auto consider = [&](const std::string& name, auto&& make) {
        try {
            ResetCertificate cert = make();
            if (!best || cert.bound_value < best->bound_value) {
                best = std::move(cert);
                best_method = name;
            }
        } catch (const Error&) {
            // method not applicable; fall through
        }
    };
    if (as_decoder(a))
        consider("decoder", [&] {
            return decoder_reset(*as_decoder(a));
        });
    const std::size_t defect = min_quasi_one_cluster_defect(a);
    if (defect <= 2)
        consider("quasi-one-cluster:" + std::to_string(defect), [&] {
            return quasi_one_cluster_reset(a, defect);
        });
    for (std::size_t c = 0; c <= 2 && c < a.num_states(); ++c)
        consider("quasi-eulerian:" + std::to_string(c), [&] {
            return quasi_eulerian_reset(a, c);
        });
    if (!best) {
        best = greedy_compression(a);
        best_method = "greedy-comp";
    }
    method_out = best_method;
    return std::move(*best);
}

// -- commands ---------------------------------------------------------------------------

int cmd_gen(const std::string& family, std::size_t n, std::size_t k, std::uint64_t seed,
            const std::string& out_path, const std::string& labels_path) {
    std::string text;
    std::string meta;
    if (family == "cerny") {
        const Automaton a = gen_cerny(n);
        text = with_metadata(family, a);
        meta = "family=cerny\nn=" + std::to_string(n) + "\nk=2\n";
    } else if (family == "xnk") {
        const Automaton a = gen_xnk(n, k);
        text = with_metadata(family, a);
        meta = "family=xnk\nn=" + std::to_string(n) + "\nk=" + std::to_string(k) + "\n";
    } else if (family == "random-dfa") {
        const Automaton a = gen_random_dfa(n, k, seed);
        text = with_metadata(family, a, "seed=" + std::to_string(seed));
        meta = "family=random-dfa\nn=" + std::to_string(n) + "\nk=" + std::to_string(k) +
               "\nseed=" + std::to_string(seed) + "\n";
    } else if (family == "random-decoder") {
        const Decoder d = gen_random_decoder(n, seed);
        text = with_metadata(family, d.automaton, "seed=" + std::to_string(seed));
        meta = "family=random-decoder\nn=" + std::to_string(d.automaton.num_states()) +
               "\nk=2\nseed=" + std::to_string(seed) + "\nheight=" + std::to_string(d.height) +
               "\n";
        if (!labels_path.empty())
            write_output(format_labels(d), labels_path);
    } else {
        throw ValidationError("unknown family '" + family + "'");
    }
    write_output(text, out_path);
    if (!out_path.empty())
        std::cout << meta;
    return kExitOk;
}

int cmd_analyze(const std::string& path, bool pretty) {
    const Automaton a = load_automaton(path);
    const std::size_t n = a.num_states();
    const bool sync = is_synchronizing(a);
    const bool sc = is_strongly_connected(a);
    const SinkComponents sinks = sink_component(a);

    std::ostringstream out;
    if (pretty) {
        out << "states: " << n << ", letters: " << a.num_letters() << '\n';
        out << (sync ? "synchronizing" : "not synchronizing") << ", "
            << (sc ? "strongly connected" : "not strongly connected") << '\n';
    } else {
        out << "n=" << n << '\n' << "k=" << a.num_letters() << '\n';
        out << "synchronizing=" << (sync ? "true" : "false") << '\n';
        out << "strongly_connected=" << (sc ? "true" : "false") << '\n';
        out << "sink_components=" << sinks.components.size() << '\n';
        out << "sink_unique=" << (sinks.unique ? "true" : "false") << '\n';
        for (std::size_t i = 0; i < sinks.components.size(); ++i) {
            out << "sink" << i << '=';
            bool first = true;
            for (std::size_t q = sinks.components[i].find_first(); q != StateSet::npos;
                 q = sinks.components[i].find_next(q)) {
                if (!first)
                    out << ',';
                out << q;
                first = false;
            }
            out << '\n';
        }
    }

    std::size_t min_rank = n;
    for (Letter l = 0; l < a.num_letters(); ++l) {
        const std::size_t rank = rank_of_word(a, Word{l});
        min_rank = std::min(min_rank, rank);
        const ClusterStructure cs = letter_clusters(a, l);
        if (pretty) {
            out << "letter a" << l << ": rank " << rank << ", clusters " << cs.clusters.size()
                << ", largest cycle " << cs.largest_cluster().cycle.size() << ", height "
                << cs.height << '\n';
        } else {
            out << "letter" << l << "_rank=" << rank << '\n';
            out << "letter" << l << "_clusters=" << cs.clusters.size() << '\n';
            out << "letter" << l << "_largest_cycle=" << cs.largest_cluster().cycle.size() << '\n';
            out << "letter" << l << "_height=" << cs.height << '\n';
            out << "letter" << l << "_other_cycle_states=" << cs.other_cycle_states << '\n';
        }
    }

    // letter of rank r with r^3 <= 6n - 6 pins the quadratic conjecture bound
    const bool small_rank_letter = min_rank * min_rank * min_rank <= 6 * n - 6;
    std::optional<std::size_t> qe_c;
    for (std::size_t c = 0; c <= 2 && c < n; ++c) {
        if (detect_quasi_eulerian(a, c)) {
            qe_c = c;
            break;
        }
    }
    const std::size_t defect = min_quasi_one_cluster_defect(a);
    if (pretty) {
        out << "smallest letter rank: " << min_rank
            << (small_rank_letter ? " (within the cube-root regime)" : "") << '\n';
        out << "quasi-Eulerian defect (<=2): " << (qe_c ? std::to_string(*qe_c) : "none") << '\n';
        out << "quasi-one-cluster defect: " << defect << '\n';
    } else {
        out << "min_letter_rank=" << min_rank << '\n';
        out << "small_rank_letter_predicate=" << (small_rank_letter ? "true" : "false") << '\n';
        out << "quasi_eulerian_c=" << (qe_c ? std::to_string(*qe_c) : "none") << '\n';
        out << "quasi_one_cluster_defect=" << defect << '\n';
    }
    std::cout << out.str();
    return kExitOk;
}

int cmd_synth(const std::string& path, const std::string& method, bool pretty) {
    const Automaton a = load_automaton(path);
    ResetCertificate cert;
    std::string used = method;
    if (method == "auto") {
        cert = synth_auto(a, used);
    } else {
        cert = dispatch_method(a, parse_method(method));
    }
    if (rank_of_word(a, cert.word) != 1)
        throw InternalError("synthesized word failed re-verification");
    if (pretty) {
        std::cout << "method " << used << ": word " << word_human(cert.word, a.num_letters())
                  << " (length " << cert.word.size() << "), bound " << cert.bound_name
                  << " <= " << cert.bound_value << '\n';
    } else {
        std::cout << "method=" << used << '\n' << cert.serialize(a);
    }
    return kExitOk;
}

int cmd_oracle(const std::string& path) {
    const Automaton a = load_automaton(path);
    const OracleResult res = exact_reset_threshold(a);
    if (!res.synchronizing) {
        std::cout << "synchronizing=false\n";
        return kExitOk;
    }
    std::cout << "synchronizing=true\n";
    std::cout << "rt=" << res.threshold << '\n';
    std::cout << "witness=" << word_machine(res.witness) << '\n';
    return kExitOk;
}

int cmd_experiment(const std::string& kind, std::size_t n_min, std::size_t n_max, std::size_t k,
                   std::size_t samples, std::uint64_t seed, bool serial) {
    ExperimentConfig config;
    if (kind == "random-dfa-rt")
        config.kind = ExperimentKind::RandomDfaRt;
    else if (kind == "random-decoder-rt")
        config.kind = ExperimentKind::RandomDecoderRt;
    else
        throw ValidationError("unknown experiment '" + kind + "'");
    config.n_min = n_min;
    config.n_max = n_max;
    config.k = k;
    config.samples = samples;
    config.seed = seed;
    config.parallel = !serial;
    std::cout << format_table(run_experiment(config));
    return kExitOk;
}

int cmd_dot(const std::string& path) {
    std::cout << to_dot(load_automaton(path));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synchronizing automata toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // let --pretty appear after the subcommand too
    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable output");

    auto* gen = app.add_subcommand("gen", "generate an automaton family member");
    std::string family, out_path, labels_path;
    std::size_t gen_n = 0, gen_k = 2;
    std::uint64_t seed = 1;
    gen->add_option("family", family, "cerny | xnk | random-dfa | random-decoder")->required();
    gen->add_option("n", gen_n, "state count")->required();
    gen->add_option("k", gen_k, "alphabet size (xnk, random-dfa)");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("-o,--output", out_path, "output file (default stdout)");
    gen->add_option("--labels", labels_path, "write decoder state labels here");

    auto* analyze = app.add_subcommand("analyze", "structural report");
    std::string analyze_path;
    analyze->add_option("file", analyze_path)->required();

    auto* synth = app.add_subcommand("synth", "synthesize a certified reset word");
    std::string synth_path, method = "auto", method_class;
    synth->add_option("file", synth_path)->required();
    synth->add_option("--method", method,
                      "auto | greedy-ext | greedy-comp | decoder | quasi-eulerian:<c> | "
                      "quasi-one-cluster:<c>");
    synth->add_option("--class", method_class,
                      "shorthand for --method quasi-eulerian:<c> / quasi-one-cluster:<c>");

    auto* oracle = app.add_subcommand("oracle", "exact reset threshold by subset BFS");
    std::string oracle_path;
    oracle->add_option("file", oracle_path)->required();

    auto* experiment = app.add_subcommand("experiment", "batch statistics over random instances");
    std::string kind;
    std::size_t n_min = 4, n_max = 12, exp_k = 2, samples = 100;
    std::uint64_t exp_seed = 1;
    bool serial = false;
    experiment->add_option("kind", kind, "random-dfa-rt | random-decoder-rt")->required();
    experiment->add_option("--n-min", n_min);
    experiment->add_option("--n-max", n_max);
    experiment->add_option("--k", exp_k);
    experiment->add_option("--samples", samples);
    experiment->add_option("--seed", exp_seed);
    experiment->add_flag("--serial", serial, "disable the parallel work fan-out");

    auto* dot = app.add_subcommand("dot", "GraphViz export");
    std::string dot_path;
    dot->add_option("file", dot_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(family, gen_n, gen_k, seed, out_path, labels_path);
        if (analyze->parsed())
            return cmd_analyze(analyze_path, pretty);
        if (synth->parsed())
            return cmd_synth(synth_path, method_class.empty() ? method : method_class, pretty);
        if (oracle->parsed())
            return cmd_oracle(oracle_path);
        if (experiment->parsed())
            return cmd_experiment(kind, n_min, n_max, exp_k, samples, exp_seed, serial);
        if (dot->parsed())
            return cmd_dot(dot_path);
        return kExitUsage;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

// Command-line front-end: satisfiability, subsumption, classification,
// normalization, the domino encoder, model checking and the bounded
// model-enumeration oracle.
//
// Exit codes: 0 for a positive verdict (SAT / YES / witness found), 1 for a
// negative one (UNSAT / NO / no witness), 2 for any error (parse, fragment,
// resource limits, bad files).

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "alcq/alcq.hpp"

namespace {

std::string slurp_stdin() {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
}

alcq::Concept read_concept_arg(const std::string& arg) {
    return alcq::parse_concept(arg == "-" ? slurp_stdin() : arg);
}

std::ifstream open_or_fail(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw alcq::ValidationError("cannot open file: " + path);
    return f;
}

void write_model_file(const std::string& path, const alcq::Interpretation& model) {
    std::ofstream f(path);
    if (!f) throw alcq::ValidationError("cannot write file: " + path);
    alcq::write_interpretation(f, model);
}

struct SatFlags {
    std::string model_path;
    bool trace = false;
    bool deterministic = false;  // search is single-threaded and deterministic; reserved
    std::uint64_t limit_steps = 1'000'000;
    std::size_t limit_individuals = 100'000;

    alcq::SearchOptions options() const {
        alcq::SearchOptions opts;
        opts.limits.max_rule_applications = limit_steps;
        opts.limits.max_individuals = limit_individuals;
        opts.record_trace = trace;
        return opts;
    }
};

void add_sat_flags(CLI::App* cmd, SatFlags& f) {
    cmd->add_option("--model", f.model_path, "write the model to this file (interpretation format)");
    cmd->add_flag("--trace", f.trace, "print one line per rule application");
    cmd->add_flag("--deterministic", f.deterministic, "force deterministic search order");
    cmd->add_option("--limit-steps", f.limit_steps, "rule application / enumeration step budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--limit-individuals", f.limit_individuals, "individuals per branch cap")
        ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"satisfiability and subsumption for concepts with qualified number "
                 "restrictions on role chains"};
    app.require_subcommand(1);

    std::string expr, expr2, path;
    SatFlags flags;
    bool translate_flag = false;
    std::size_t max_domain = 4;

    CLI::App* sat = app.add_subcommand("sat", "decide concept satisfiability");
    sat->add_option("concept", expr, "concept text ('-' reads stdin)")->required();
    add_sat_flags(sat, flags);

    CLI::App* sub = app.add_subcommand("subsumes", "decide whether the first concept is subsumed by the second");
    sub->add_option("concept", expr, "subsumee concept ('-' reads stdin)")->required();
    sub->add_option("concept2", expr2, "subsumer concept")->required();
    add_sat_flags(sub, flags);

    CLI::App* cls = app.add_subcommand("classify", "compute the subsumption hierarchy of named concepts");
    cls->add_option("file", path, "file with one 'Name = concept' per line")->required();
    add_sat_flags(cls, flags);

    CLI::App* nnfc = app.add_subcommand("nnf", "print the negation normal form");
    nnfc->add_option("concept", expr, "concept text ('-' reads stdin)")->required();

    CLI::App* tr = app.add_subcommand("translate", "push inverses inwards and unfold compositions under some/all");
    tr->add_option("concept", expr, "concept text ('-' reads stdin)")->required();

    CLI::App* enc = app.add_subcommand("encode-domino", "encode a tiling system");
    enc->add_option("file", path, "tiling file (tiles:/h:/v: lines)")->required();
    enc->add_flag("--translate", translate_flag, "translate the encoded concept");
    enc->add_option("--model", flags.model_path,
                    "also write the 3x3 torus interpretation to this file");

    CLI::App* chk = app.add_subcommand("check-model", "evaluate a concept on an interpretation file");
    chk->add_option("file", path, "interpretation file")->required();
    chk->add_option("concept", expr, "concept text ('-' reads stdin)")->required();

    CLI::App* enu = app.add_subcommand("enumerate", "search for a model by bounded enumeration");
    enu->add_option("concept", expr, "concept text ('-' reads stdin)")->required();
    enu->add_option("--max-domain", max_domain, "largest domain size to try")
        ->check(CLI::PositiveNumber);
    enu->add_option("--limit-steps", flags.limit_steps, "enumeration step budget")
        ->check(CLI::PositiveNumber);
    enu->add_option("--model", flags.model_path, "write the witness to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sat->parsed()) {
            alcq::Verdict v = alcq::is_satisfiable(read_concept_arg(expr), flags.options());
            std::cout << (v.satisfiable ? "SAT" : "UNSAT") << "\n";
            for (const auto& entry : v.trace) std::cout << entry.to_line() << "\n";
            if (v.satisfiable && !flags.model_path.empty())
                write_model_file(flags.model_path, *v.model);
            return v.satisfiable ? 0 : 1;
        }
        if (sub->parsed()) {
            bool yes = alcq::subsumes(read_concept_arg(expr), alcq::parse_concept(expr2),
                                      flags.options());
            std::cout << (yes ? "YES" : "NO") << "\n";
            return yes ? 0 : 1;
        }
        if (cls->parsed()) {
            std::ifstream f = open_or_fail(path);
            std::vector<std::pair<std::string, alcq::Concept>> named;
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(f, line)) {
                ++lineno;
                if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
                auto eq = line.find('=');
                std::istringstream probe(line);
                std::string first;
                if (!(probe >> first)) continue;
                if (eq == std::string::npos)
                    throw alcq::ValidationError("classify input line " + std::to_string(lineno) +
                                                " must be 'Name = concept'");
                std::istringstream name_s(line.substr(0, eq));
                std::string name;
                name_s >> name;
                named.emplace_back(name, alcq::parse_concept(line.substr(eq + 1)));
            }
            alcq::ClassifyResult r = alcq::classify(named, flags.options());
            for (const auto& members : r.classes) {
                std::cout << "class";
                for (const auto& m : members) std::cout << " " << m;
                std::cout << "\n";
            }
            for (const auto& [lo, hi] : r.edges)
                std::cout << r.classes[lo].front() << " < " << r.classes[hi].front() << "\n";
            return 0;
        }
        if (nnfc->parsed()) {
            std::cout << alcq::print_concept(alcq::nnf(read_concept_arg(expr))) << "\n";
            return 0;
        }
        if (tr->parsed()) {
            std::cout << alcq::print_concept(alcq::translate_to_alcni(read_concept_arg(expr)))
                      << "\n";
            return 0;
        }
        if (enc->parsed()) {
            std::ifstream f = open_or_fail(path);
            alcq::TilingInput input = alcq::read_tiling(f);
            alcq::DominoEncoding encoding = alcq::encode(input.system);
            alcq::Concept out = translate_flag ? alcq::translate_to_alcni(encoding.e_d)
                                               : encoding.e_d;
            std::cout << alcq::print_concept(out) << "\n";
            if (!flags.model_path.empty()) {
                alcq::TorusTiling torus =
                    input.torus ? *input.torus
                                : alcq::TorusTiling::uniform(input.system.tiles.front());
                write_model_file(flags.model_path, alcq::make_torus_model(input.system, torus));
            }
            return 0;
        }
        if (chk->parsed()) {
            std::ifstream f = open_or_fail(path);
            alcq::Interpretation model = alcq::read_interpretation(f);
            alcq::Concept c = read_concept_arg(expr);
            for (std::size_t e : alcq::eval_concept(model, c))
                std::cout << model.domain.at(e) << "\n";
            return 0;
        }
        if (enu->parsed()) {
            alcq::OracleOptions opts;
            opts.step_budget = flags.limit_steps;
            auto witness = alcq::enumerate_model(read_concept_arg(expr), max_domain, opts);
            if (!witness) {
                std::cout << "NONE\n";
                return 1;
            }
            alcq::write_interpretation(std::cout, *witness);
            if (!flags.model_path.empty()) write_model_file(flags.model_path, *witness);
            return 0;
        }
    } catch (const alcq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hfpss/runner.hpp"

namespace {

using namespace hfpss;

// "Z", "Z2", "Z/8" summands followed by an action: "Z Z sign", "Z/2 trivial"
C2Module parse_module_spec(const std::string& spec) {
    std::istringstream is(spec);
    std::vector<std::string> tokens;
    for (std::string tok; is >> tok;) tokens.push_back(tok);
    if (tokens.size() < 2)
        throw std::invalid_argument("module spec needs summands and an action, e.g. \"Z sign\"");
    std::string action = tokens.back();
    tokens.pop_back();

    FgAbGroup g;
    std::vector<mpz_class> torsion;
    for (const auto& tok : tokens) {
        if (tok == "Z") {
            ++g.free_rank;
        } else if (tok == "Z2" || tok == "Z_2") {
            ++g.free_rank;
            g.pro2 = true;
        } else if (tok.rfind("Z/", 0) == 0) {
            torsion.emplace_back(tok.substr(2));
            if (torsion.back() < 2) throw std::invalid_argument("bad summand " + tok);
        } else {
            throw std::invalid_argument("bad summand \"" + tok + "\" (use Z, Z2, Z/n)");
        }
    }
    std::sort(torsion.begin(), torsion.end());
    g.torsion = torsion;
    for (int i = 0; i < g.num_generators(); ++i) g.generator_names.push_back("g" + std::to_string(i));
    g.check_invariants();
    int n = g.num_generators();

    if (action == "trivial" || action == "triv") return C2Module::trivial_action(std::move(g));
    if (action == "sign") return C2Module::sign_action(std::move(g));
    if (action == "swap") {
        if (n % 2) throw std::invalid_argument("swap action needs an even number of generators");
        IntMatrix s(n, n);
        for (int i = 0; i < n; i += 2) {
            // swap within consecutive pairs; invariant factors must match
            if (g.order_of_generator(i) != g.order_of_generator(i + 1))
                throw std::invalid_argument("swap action needs matching summand pairs");
            s.at(i, i + 1) = 1;
            s.at(i + 1, i) = 1;
        }
        return {std::move(g), std::move(s)};
    }
    throw std::invalid_argument("unknown action \"" + action + "\" (trivial, sign, swap)");
}

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int s = std::stoi(text);
        return {s, s};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

Scenario resolve_scenario(const std::string& arg) {
    if (arg.find('/') != std::string::npos ||
        (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json"))
        return load_scenario(arg);
    return builtin(arg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hfpss: C2 homotopy fixed point spectral sequences, exactly"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list built-in scenarios");

    std::string scenario_arg, out_path, format = "report";
    int page = 0;
    auto* run = app.add_subcommand("run", "run a scenario (built-in name or JSON file)");
    run->add_option("scenario", scenario_arg, "built-in name or path to a scenario JSON")
        ->required();
    run->add_option("--page", page, "page to chart (default: last computed)");
    run->add_option("--out", out_path, "output file (default: stdout)");
    run->add_option("--format", format, "report | chart-ascii | chart-svg")
        ->check(CLI::IsMember({"report", "chart-ascii", "chart-svg"}));

    std::string module_spec, range = "0..6", method = "periodic";
    auto* coh = app.add_subcommand("cohomology", "group cohomology of a C2-module");
    coh->add_option("--module", module_spec,
                    "summands and action, e.g. \"Z sign\", \"Z/4 trivial\", \"Z Z swap\"")
        ->required();
    coh->add_option("--range", range, "filtration range, e.g. 0..6");
    coh->add_option("--method", method, "periodic | bar")
        ->check(CLI::IsMember({"periodic", "bar"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (const auto& n : builtin_names()) std::cout << n << "\n";
            return 0;
        }
        if (*coh) {
            C2Module m = parse_module_spec(module_spec);
            auto [s0, s1] = parse_range(range);
            for (int s = s0; s <= s1; ++s) {
                FgAbGroup h = method == "bar" ? cohomology_bar(m, s) : cohomology_periodic(m, s);
                std::cout << "H^" << s << " = " << h.describe() << "\n";
            }
            return 0;
        }
        // run
        Scenario sc = resolve_scenario(scenario_arg);
        auto t0 = std::chrono::steady_clock::now();
        RunOutcome outcome = run_scenario(sc);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cerr << "[" << sc.name << "] computed in " << ms << " ms\n";

        std::string content;
        if (format == "report") {
            content = outcome.report.dump(2) + "\n";
        } else {
            ChartInput ci = chart_input(outcome, page);
            content = format == "chart-svg" ? render_chart_svg(ci) : render_chart_ascii(ci);
        }
        write_output(out_path, content);
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

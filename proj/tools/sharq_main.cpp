#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sharq/geodsl.hpp"
#include "sharq/json_io.hpp"
#include "sharq/svg_render.hpp"
#include "sharq/verifier.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in.good()) sharq::raise(sharq::Err::InvalidConfig, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out.good()) sharq::raise(sharq::Err::InvalidConfig, "cannot write '" + path + "'");
    out << content;
}

sharq::ConfigDocument load_config(const std::string& path) {
    sharq::json j;
    try {
        j = sharq::json::parse(read_input(path));
    } catch (const sharq::json::parse_error& e) {
        sharq::raise(sharq::Err::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
    return sharq::config_from_json(j);
}

sharq::QLPair pair_of(const sharq::ConfigDocument& doc) {
    return sharq::make_qlpair(doc.vertices, doc.g);
}

int cmd_generate(uint64_t seed, int bound, bool omega_mode, const std::string& out_path) {
    if (bound < 2) sharq::raise(sharq::Err::InvalidConfig, "coordinate bound must be at least 2");
    sharq::SplitMix64 rng(seed);
    sharq::QLPair ql = sharq::generate_qlpair(rng, bound, omega_mode);
    sharq::ConfigDocument doc{ql.quad().vertices(), ql.g(), sharq::json()};
    write_output(out_path, sharq::config_to_json(doc).dump(2) + "\n");
    return kExitPass;
}

int cmd_construct(const std::string& in_path, const std::string& selection,
                  const std::string& out_path) {
    sharq::ConfigDocument doc = load_config(in_path);
    sharq::QLPair ql = pair_of(doc);

    int i, j, k, s;
    if (std::sscanf(selection.c_str(), "%d,%d,%d,%d", &i, &j, &k, &s) != 4)
        sharq::raise(sharq::Err::InvalidConfig, "selection must be of the form i,j,k,s");
    sharq::IndexSelection sel = sharq::IndexSelection::make(i, j, k, s);

    sharq::ConstructionBundle bundle = sharq::construct_bundle(ql);
    doc.derived = sharq::derived_to_json(bundle, sel);
    write_output(out_path, sharq::config_to_json(doc).dump(2) + "\n");
    return kExitPass;
}

int cmd_verify(uint64_t seed, int trials, int bound, bool omega_mode, const std::string& check) {
    sharq::TrialConfig cfg{seed, trials, bound, omega_mode};
    cfg.validate();
    std::vector<sharq::CheckReport> reports;
    if (check.empty()) {
        reports = sharq::run_all(cfg);
    } else {
        reports.push_back(sharq::run_check(check, cfg));
    }
    bool pass = true;
    for (const sharq::CheckReport& r : reports) {
        std::cout << sharq::report_to_json(r).dump() << "\n";
        pass = pass && r.pass();
    }
    return pass ? kExitPass : kExitCheckFailed;
}

int cmd_run(const std::string& script_path) {
    std::string source = read_input(script_path);
    sharq::geodsl::Script script;
    try {
        script = sharq::geodsl::parse(source);
    } catch (const sharq::geodsl::ParseError& e) {
        std::cerr << script_path << ": " << e.diagnostic().str() << "\n";
        return kExitUsage;
    }
    sharq::geodsl::EvalResult result = sharq::geodsl::evaluate(script);
    std::cout << sharq::geodsl::format_diagnostics(result);
    if (result.error) {
        std::cerr << script_path << ": evaluation stopped: line " << result.error->pos.line
                  << ", column " << result.error->pos.col << ": " << result.error->message << "\n";
        return kExitUsage;
    }
    return result.all_passed() ? kExitPass : kExitCheckFailed;
}

int cmd_render(const std::string& in_path, const std::string& preset_name,
               const std::string& viewport_spec, int width, int height,
               const std::string& out_path) {
    sharq::ConfigDocument doc = load_config(in_path);
    sharq::ConstructionBundle bundle = sharq::construct_bundle(pair_of(doc));
    sharq::FigurePreset preset = sharq::parse_preset(preset_name);

    sharq::Viewport vp;
    if (viewport_spec.empty()) {
        vp = sharq::default_viewport(bundle, width, height);
    } else {
        std::vector<std::string> parts;
        std::stringstream ss(viewport_spec);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        if (parts.size() != 4)
            sharq::raise(sharq::Err::InvalidConfig, "viewport must be x_min,y_min,x_max,y_max");
        vp = sharq::Viewport{sharq::parse_rational(parts[0]), sharq::parse_rational(parts[1]),
                             sharq::parse_rational(parts[2]), sharq::parse_rational(parts[3]),
                             width, height};
        vp.validate();
    }

    write_output(out_path, sharq::render_svg(bundle, vp, preset));
    return kExitPass;
}

int cmd_cases() {
    for (const sharq::CaseDescriptor& c : sharq::enumerate_cases()) std::cout << c.label() << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact projective geometry toolkit for complete quadrangles"};
    app.require_subcommand(1);

    uint64_t seed = 42;
    int trials = 100;
    int bound = 10;
    bool omega_mode = false;
    std::string check, in_path = "-", out_path, selection = "1,2,3,4";
    std::string preset = "quadrangle", viewport_spec;
    int width = 800, height = 600;

    auto* generate = app.add_subcommand("generate", "emit a random valid configuration");
    generate->add_option("--seed", seed, "generator seed");
    generate->add_option("--bound", bound, "coordinate bound");
    generate->add_flag("--omega", omega_mode, "use the infinite line as g");
    generate->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* construct =
        app.add_subcommand("construct", "derive every construction of a configuration");
    construct->add_option("input", in_path, "config JSON path or - for stdin");
    construct->add_option("--selection", selection, "index selection i,j,k,s");
    construct->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* verify = app.add_subcommand("verify", "run the randomized theorem checks");
    verify->add_option("--seed", seed, "generator seed");
    verify->add_option("--trials", trials, "instances per check");
    verify->add_option("--bound", bound, "coordinate bound");
    verify->add_flag("--omega", omega_mode, "force g = omega for generated instances");
    verify->add_option("--check", check, "run a single named check");

    auto* run = app.add_subcommand("run", "evaluate a .geo construction script");
    run->add_option("script", in_path, "script path")->required();

    auto* render = app.add_subcommand("render", "draw a configuration as SVG");
    render->add_option("input", in_path, "config JSON path or - for stdin");
    render->add_option("--preset", preset, "figure preset: quadrangle|curves|ninepoint");
    render->add_option("--viewport", viewport_spec, "x_min,y_min,x_max,y_max (rationals)");
    render->add_option("--width", width, "pixel width");
    render->add_option("--height", height, "pixel height");
    render->add_option("-o,--output", out_path, "output path (default stdout)");

    auto* cases = app.add_subcommand("cases", "list the 48 problem variants");

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return cmd_generate(seed, bound, omega_mode, out_path);
        if (construct->parsed()) return cmd_construct(in_path, selection, out_path);
        if (verify->parsed()) return cmd_verify(seed, trials, bound, omega_mode, check);
        if (run->parsed()) return cmd_run(in_path);
        if (render->parsed())
            return cmd_render(in_path, preset, viewport_spec, width, height, out_path);
        if (cases->parsed()) return cmd_cases();
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    } catch (const sharq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

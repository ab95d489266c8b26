#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "algd/suites.hpp"

namespace fs = std::filesystem;
using namespace algd;

namespace {

/// A path names either one model file or a directory of *.model files.
std::vector<Model> load_gallery(const std::string& path) {
    std::vector<Model> gallery;
    fs::path p(path);
    if (fs::is_directory(p)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(p))
            if (e.path().extension() == ".model") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) gallery.push_back(load_model_file(f.string()));
    } else {
        gallery.push_back(load_model_file(path));
    }
    if (gallery.empty()) throw Error("no .model files found under " + path);
    return gallery;
}

int emit(const SuiteReport& rep, const std::string& format) {
    if (format == "json")
        std::cout << to_json(rep);
    else
        std::cout << to_text(rep);
    return rep.all_pass() ? 0 : 1;
}

struct FlowOptions {
    std::string path;
    std::string field;
    double t = 1.0;
    int steps = 64;
    std::string lift = "complete";
    std::string base;
    std::string fiber;
};

std::vector<double> parse_coords(const std::string& text, int expected, double fill) {
    std::vector<double> out;
    if (!text.empty()) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            out.push_back(std::stod(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    }
    if (static_cast<int>(out.size()) > expected)
        throw Error("too many coordinates (expected " + std::to_string(expected) + ")");
    out.resize(static_cast<std::size_t>(expected), fill);
    return out;
}

int cmd_flow(const FlowOptions& opt) {
    Model m = load_model_file(opt.path);
    if (!m.algebroid) throw Error("flow requires a model with algebroid data");
    auto it = m.sections.find(opt.field);
    if (it == m.sections.end())
        throw Error("no section named '" + opt.field + "' in " + opt.path);
    const LieAlgebroid& a = *m.algebroid;
    const int n = a.base_dim(), k = a.fiber_dim();

    TotalSpaceField field = opt.lift == "vertical"
                                ? vertical_lift(it->second)
                                : complete_lift(a, it->second).as_total();
    ChartVectorField flowfield = field.as_chart_field();

    TotalPoint start{parse_coords(opt.base, n, 0.0), parse_coords(opt.fiber, k, 1.0)};
    auto end = flow_rk4(flowfield, start.joined(), opt.t, opt.steps);

    std::cout << "endpoint base  (";
    for (int i = 0; i < n; ++i) std::cout << (i ? ", " : "") << end[static_cast<std::size_t>(i)];
    std::cout << ")\nendpoint fiber (";
    for (int i = 0; i < k; ++i)
        std::cout << (i ? ", " : "") << end[static_cast<std::size_t>(n + i)];
    std::cout << ")\n";

    // fiber map defects at the start base point: additivity (affine defect)
    // and image of the zero vector (linear offset)
    Rng rng(12345);
    double affine_defect = 0.0, zero_offset = 0.0;
    auto run = [&](const std::vector<double>& fib) {
        return flow_rk4(flowfield, TotalPoint{start.base, fib}.joined(), opt.t, opt.steps);
    };
    auto zero_img = run(std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int i = 0; i < k; ++i)
        zero_offset = std::max(zero_offset, std::abs(zero_img[static_cast<std::size_t>(n + i)]));
    for (int trial = 0; trial < 5; ++trial) {
        auto v = rng.box_point(k);
        auto w = rng.box_point(k);
        std::vector<double> sum(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            sum[static_cast<std::size_t>(i)] =
                v[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(i)];
        auto fv = run(v);
        auto fw = run(w);
        auto fs2 = run(sum);
        for (int i = 0; i < k; ++i) {
            auto ii = static_cast<std::size_t>(n + i);
            affine_defect = std::max(affine_defect,
                                     std::abs(fs2[ii] - fv[ii] - fw[ii] + zero_img[ii]));
        }
    }
    std::cout << "affine defect  " << affine_defect << "\n";
    std::cout << "zero offset    " << zero_offset << "\n";
    if (affine_defect < 1e-6 && zero_offset < 1e-6)
        std::cout << "verdict: fiberwise linear\n";
    else if (affine_defect < 1e-6)
        std::cout << "verdict: fiberwise affine (not linear)\n";
    else
        std::cout << "verdict: not fiberwise affine\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lifting calculus on Lie algebroids, their duals, and pair groupoids"};
    app.require_subcommand(1);

    std::string path, format = "text", suite_name;
    SuiteOptions opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--points", opt.points, "sample points per check")
            ->check(CLI::Range(1, 1000000));
        cmd->add_option("--seed", opt.seed, "generator seed");
        cmd->add_option("--tol", opt.tol_override, "override per-check tolerances")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "check algebroid axioms and bivector Jacobi residuals");
    validate_cmd->add_option("path", path, "model file or directory")->required();
    add_common(validate_cmd);

    CLI::App* suite_cmd = app.add_subcommand("suite", "run an identity battery");
    suite_cmd->add_option("name", suite_name, "lifts, dual, pair, poisson-pair, or all")
        ->required()
        ->check(CLI::IsMember({"lifts", "dual", "pair", "poisson-pair", "all"}));
    suite_cmd->add_option("path", path, "model file or directory")->required();
    add_common(suite_cmd);

    FlowOptions fopt;
    CLI::App* flow_cmd = app.add_subcommand(
        "flow", "integrate a lifted section and report the fiber-map defect");
    flow_cmd->add_option("path", fopt.path, "model file")->required();
    flow_cmd->add_option("field", fopt.field, "section name")->required();
    flow_cmd->add_option("--t", fopt.t, "integration time")->required();
    flow_cmd->add_option("--steps", fopt.steps, "step count")->check(CLI::PositiveNumber);
    flow_cmd->add_option("--lift", fopt.lift, "complete or vertical")
        ->check(CLI::IsMember({"complete", "vertical"}));
    flow_cmd->add_option("--base", fopt.base, "start base point, comma separated");
    flow_cmd->add_option("--fiber", fopt.fiber, "start fiber vector, comma separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit with 2
    }

    try {
        if (validate_cmd->parsed()) {
            return emit(run_validation(load_gallery(path), opt), format);
        }
        if (suite_cmd->parsed()) {
            return emit(run_suite(suite_name, load_gallery(path), opt), format);
        }
        if (flow_cmd->parsed()) return cmd_flow(fopt);
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

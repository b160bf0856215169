#include "sandlab/harness.hpp"
#include "sandlab/parallel.hpp"
#include "sandlab/walks.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace sandlab::harness {

namespace {

Vertex parse_site(const std::string& text, int d) {
    Vertex v;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        v.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (static_cast<int>(v.size()) != d)
        throw CLI::ValidationError("--site needs " + std::to_string(d) + " coordinates");
    return v;
}

void write_output(const std::string& out, const std::string& bytes) {
    if (out.empty() || out == "-") {
        std::cout << bytes;
        if (bytes.empty() || bytes.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + out);
    os << bytes;
}

electro::Backend parse_backend(const std::string& name) {
    if (name == "exact") return electro::Backend::Exact;
    if (name == "float") return electro::Backend::Float;
    throw CLI::ValidationError("--backend must be exact or float");
}

struct CommonArgs {
    std::vector<int> n{};
    int d = 2;
    std::string site = "1,1";
    std::string backend = "float";
    std::string out;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000000;
    int jobs = 0;
};

int first_n(const CommonArgs& a) {
    if (a.n.empty()) throw CLI::ValidationError("--n is required");
    return a.n.front();
}

}  // namespace

int cli(int argc, char** argv) {
    CLI::App app{"sandpile transience laboratory"};
    app.require_subcommand(1);
    CommonArgs args;

    auto add_common = [&](CLI::App* cmd, bool wants_site) {
        cmd->add_option("--n", args.n, "side length(s), comma separated")->delimiter(',');
        cmd->add_option("--d", args.d, "dimension");
        if (wants_site) cmd->add_option("--site", args.site, "1-based coordinates r,c[,..]");
        cmd->add_option("--backend", args.backend, "exact|float");
        cmd->add_option("--seed", args.seed, "RNG seed");
        cmd->add_option("--trials", args.trials, "Monte Carlo trials");
        cmd->add_option("--out", args.out, "output file (default stdout)");
        cmd->add_option("--jobs", args.jobs, "worker threads (0 = all cores)");
    };

    auto* simulate = app.add_subcommand("simulate", "drop grains at a site and stabilize");
    std::uint64_t grains = 1;
    simulate->add_option("--grains", grains, "grains to add");
    add_common(simulate, true);

    auto* drive = app.add_subcommand("drive", "drive a site to recurrence");
    add_common(drive, true);

    auto* tclx = app.add_subcommand("tcl-exact", "exhaustive transience class");
    std::uint64_t state_cap = 1ull << 20;
    tclx->add_option("--cap", state_cap, "state-space cap");
    add_common(tclx, false);

    auto* pots = app.add_subcommand("potentials", "vertex potentials for a source");
    add_common(pots, true);

    auto* resist = app.add_subcommand("resistance", "effective resistance to the sink");
    add_common(resist, true);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("--suite", suite, "sandpile-oracles|electro|walks|dimd")->required();
    add_common(verify, false);

    auto* fit = app.add_subcommand("fit", "log-log scaling fit");
    std::string quantity = "tcl";
    fit->add_option("--quantity", quantity, "tcl|corner-potential");
    add_common(fit, false);

    auto* render = app.add_subcommand("render", "write P3 frames while driving a corner");
    std::vector<std::uint64_t> checkpoints;
    render->add_option("--checkpoints", checkpoints, "grain counts, ascending")->delimiter(',');
    add_common(render, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) {
            const GridShape shape(first_n(args), args.d);
            const Vertex site = parse_site(args.site, args.d);
            sandpile::Config c(shape);
            auto [stable, odo] =
                grains > 0 ? sandpile::add_and_stabilize(c, site, grains)
                           : std::make_pair(c, sandpile::Odometer(shape));
            const GridIndex gi(shape);
            Json j;
            j["shape"] = Json{{"n", shape.n}, {"d", shape.d}};
            j["site"] = site;
            j["grains_added"] = grains;
            j["grains_remaining"] = stable.total_grains();
            j["grains_to_sink"] = odo.grains_to_sink(gi);
            j["total_topplings"] = odo.total();
            j["config"] = stable.grains;
            write_output(args.out, j.dump(2));
            return 0;
        }
        if (drive->parsed()) {
            const GridShape shape(first_n(args), args.d);
            const auto report =
                sandpile::drive_to_recurrence(shape, parse_site(args.site, args.d));
            write_output(args.out, report.to_json().dump(2));
            return 0;
        }
        if (tclx->parsed()) {
            const GridShape shape(first_n(args), args.d);
            Json j;
            j["shape"] = Json{{"n", shape.n}, {"d", shape.d}};
            j["tcl_exact"] = sandpile::tcl_exact(shape, state_cap);
            write_output(args.out, j.dump(2));
            return 0;
        }
        if (pots->parsed()) {
            const GridShape shape(first_n(args), args.d);
            const Vertex source = parse_site(args.site, args.d);
            const auto field = electro::potentials(shape, source, parse_backend(args.backend));
            Json j;
            j["shape"] = Json{{"n", shape.n}, {"d", shape.d}};
            j["source"] = source;
            j["backend"] = args.backend;
            if (field.backend == electro::Backend::Exact) {
                Json vals = Json::array();
                for (const auto& q : field.exact) vals.push_back(rational_string(q));
                j["values"] = std::move(vals);
            } else {
                j["values"] = field.values;
            }
            write_output(args.out, j.dump(2));
            return 0;
        }
        if (resist->parsed()) {
            const GridShape shape(first_n(args), args.d);
            const Vertex u = parse_site(args.site, args.d);
            const auto r = electro::effective_resistance(shape, u, parse_backend(args.backend));
            Json j;
            j["shape"] = Json{{"n", shape.n}, {"d", shape.d}};
            j["u"] = u;
            j["backend"] = args.backend;
            j["ohms"] = r.ohms;
            if (r.exact) j["exact"] = rational_string(*r.exact);
            write_output(args.out, j.dump(2));
            return 0;
        }
        if (verify->parsed()) {
            SuiteConfig cfg;
            cfg.suite = suite;
            cfg.n_grid = args.n.empty() ? std::vector<int>{8, 16, 32} : args.n;
            cfg.d = args.d;
            cfg.seed = args.seed;
            cfg.backend = parse_backend(args.backend);
            cfg.trials = args.trials;
            cfg.jobs = args.jobs;
            const Json report = run_suite(cfg);
            const bool csv = args.out.size() > 4 &&
                             args.out.substr(args.out.size() - 4) == ".csv";
            if (csv) {
                std::vector<LemmaReport> rows;
                for (const auto& r : report["reports"]) {
                    LemmaReport row;
                    row.lemma_id = r["lemma_id"].get<std::string>();
                    row.params = r["params"];
                    row.lhs = r["lhs"];
                    row.rhs = r["rhs"];
                    row.pass = r["pass"].get<bool>();
                    row.margin = r["margin"].get<double>();
                    rows.push_back(std::move(row));
                }
                write_output(args.out, reports_to_csv(rows));
            } else {
                write_output(args.out, report.dump(2));
            }
            return suite_passed(report) ? 0 : 1;
        }
        if (fit->parsed()) {
            if (args.n.size() < 2) throw CLI::ValidationError("fit needs --n with >= 2 sizes");
            FitResult result;
            if (quantity == "tcl") result = fit_drive_scaling(args.n, args.d, args.jobs);
            else if (quantity == "corner-potential")
                result = fit_corner_potential_scaling(args.n, args.d);
            else throw CLI::ValidationError("--quantity must be tcl or corner-potential");
            const bool csv =
                args.out.size() > 4 && args.out.substr(args.out.size() - 4) == ".csv";
            write_output(args.out, csv ? result.to_csv() : result.to_json().dump(2));
            return result.pass ? 0 : 1;
        }
        if (render->parsed()) {
            const GridShape shape(first_n(args), args.d);
            if (checkpoints.empty()) throw CLI::ValidationError("--checkpoints required");
            const auto files = sandpile::render_frames(
                shape, parse_site(args.site, args.d), checkpoints,
                args.out.empty() ? "frames" : args.out);
            Json j = Json::array();
            for (const auto& f : files) j.push_back(f.string());
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace sandlab::harness

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "centrolab/io.hpp"
#include "centrolab/kernels.hpp"
#include "lab_app.hpp"

#include "httplib.h"

using namespace centrolab;

namespace {

void print(const lab::Json& j) { std::cout << j.dump(2) << '\n'; }

std::optional<double> opt_c(const CLI::Option* o, double v) {
    return o->count() ? std::optional<double>(v) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"centrolab: extremal curves of B_a under the centroaffine normalization"};
    app.set_config("--config", "", "key=value configuration file; command-line flags win");
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (LAB_THREADS caps this)")->check(CLI::NonNegativeNumber);

    double a = 2.0, c = 0.0, period = 0.0, eps = 0.0, C = 0.0;
    std::string rot = "3/7", exact = "2", out = "gallery";
    int n = 1, K = 64, port = 8080;
    bool osculants = false, curves = false;
    std::string host = "127.0.0.1";
    std::vector<std::string> suites;

    auto* solve = app.add_subcommand("solve", "tuned closed extremal curve (or an orbit of given period) as JSON");
    solve->add_option("--a", a, "exponent")->required();
    auto* solve_rot = solve->add_option("--rot", rot, "rotation per profile period, j/q");
    auto* solve_period = solve->add_option("--period", period, "profile period instead of a rotation target");
    solve_rot->excludes(solve_period);
    auto* solve_c = solve->add_option("--c", c, "integration constant");

    auto* gallery = app.add_subcommand("gallery", "closed curve to JSON, CSV and SVG");
    gallery->add_option("--a", a, "exponent")->required();
    gallery->add_option("--rot", rot, "rotation per profile period, j/q")->required();
    auto* gallery_c = gallery->add_option("--c", c, "integration constant");
    gallery->add_option("--out", out, "output prefix");
    gallery->add_flag("--osculants", osculants, "overlay vertices and osculating conics");

    auto* spectrum = app.add_subcommand("spectrum", "degenerate exponent lookup");
    spectrum->add_option("--a", exact, "exponent (exact)")->required();

    auto* classify = app.add_subcommand("classify", "second-variation class of the circle");
    classify->add_option("--a", exact, "exponent (exact)")->required();
    classify->add_option("--K", K, "largest harmonic")->check(CLI::Range(3, 100000));

    auto* third = app.add_subcommand("third", "a = 1/3 profile and its conic check");
    third->add_option("--eps", eps, "eccentricity parameter")->required()->check(CLI::Range(0.0, 0.999999));
    third->add_option("--n", n, "frequency")->required()->check(CLI::PositiveNumber);
    third->add_option("--C", C, "phase offset");

    auto* symmetry = app.add_subcommand("symmetry", "exponent orbit under the six branches");
    auto* sym_a = symmetry->add_option("--a", exact, "exponent (exact or inf)");
    std::string table_q;
    auto* sym_table = symmetry->add_option("--table", table_q, "branch composition table at q");
    sym_a->excludes(sym_table);

    auto* zoo = app.add_subcommand("zoo", "four sign patterns in R^4");
    double zoo_eps = 0.02;
    zoo->add_option("--eps", zoo_eps, "push-off size")->check(CLI::PositiveNumber);
    zoo->add_flag("--curves", curves, "include sampled curves");

    auto* verify = app.add_subcommand("verify", "acceptance suites");
    verify->add_option("suites", suites, "suite names (default: all)");

    auto* serve = app.add_subcommand("serve", "JSON endpoints over HTTP");
    serve->add_option("--port", port, "port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "bind address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? lab::ok : lab::bad_input;
    }
    if (threads > 0) kernels::set_thread_count(threads);

    try {
        if (*solve) {
            if (solve_period->count())
                print(lab::cmd_solve_period(a, period, opt_c(solve_c, c)));
            else
                print(io::to_json(lab::solve_closed(a, parse_rational(rot), opt_c(solve_c, c))));
        } else if (*gallery) {
            const auto f = lab::cmd_gallery(a, parse_rational(rot), opt_c(gallery_c, c), out, osculants);
            print({{"json", f.json}, {"csv", f.csv}, {"svg", f.svg}});
        } else if (*spectrum) {
            print(lab::cmd_spectrum(parse_rational(exact)));
        } else if (*classify) {
            print(lab::cmd_classify(parse_rational(exact), K));
        } else if (*third) {
            print(lab::cmd_third(eps, n, C));
        } else if (*symmetry) {
            if (sym_table->count())
                print(lab::cmd_symmetry_table(parse_rational(table_q)));
            else if (sym_a->count())
                print(lab::cmd_symmetry_a(exact));
            else
                throw LabError(ErrorKind::invalid_input, "symmetry needs --a or --table");
        } else if (*zoo) {
            print(lab::cmd_zoo(zoo_eps, curves));
        } else if (*verify) {
            const auto report = lab::cmd_verify(suites);
            print(report);
            for (const auto& s : report["suites"])
                std::fprintf(stderr, "%s %s\n", s["passed"].get<bool>() ? "PASS" : "FAIL",
                             s["suite"].get<std::string>().c_str());
            return report["passed"].get<bool>() ? lab::ok : lab::verification_failed;
        } else if (*serve) {
            httplib::Server server;
            lab::install_routes(server);
            std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
            if (!server.listen(host, port)) {
                std::fprintf(stderr, "cannot bind %s:%d\n", host.c_str(), port);
                return lab::bad_input;
            }
        }
    } catch (const LabError& e) {
        std::fprintf(stderr, "error (%s): %s\n", to_string(e.kind()), e.what());
        return lab::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return lab::solver_failed;
    }
    return lab::ok;
}

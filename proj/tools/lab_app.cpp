#include "lab_app.hpp"

#include <fstream>
#include <numbers>

#include "centrolab/deformation.hpp"
#include "centrolab/exponent_symmetry.hpp"
#include "centrolab/io.hpp"
#include "centrolab/periodic_search.hpp"
#include "centrolab/special_third.hpp"
#include "centrolab/symplectic4d.hpp"
#include "centrolab/verify.hpp"

// after Eigen: resolv.h defines _res
#include "httplib.h"

namespace lab {

using namespace centrolab;

bool is_input_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input:
        case ErrorKind::not_closed:
        case ErrorKind::not_star_shaped:
        case ErrorKind::wrong_orientation:
        case ErrorKind::convexity_violation:
        case ErrorKind::normalization:
        case ErrorKind::pole:
        case ErrorKind::off_spectrum:
        case ErrorKind::branch_unavailable:
            return true;
        default:
            return false;
    }
}

int exit_code_for(ErrorKind kind) { return is_input_error(kind) ? bad_input : solver_failed; }

ClosedExtremalCurve solve_closed(double a, Rational rot, std::optional<double> c) {
    if (rot <= Rational(0) || rot >= Rational(1)) throw LabError(ErrorKind::invalid_input, "rot must lie in (0, 1)");
    RotationBox box;
    box.c = c;
    const auto orbit = rotation_tune(a, rot, box);
    return reconstruct(orbit, static_cast<int>(rot.denominator()));
}

Json cmd_solve_period(double a, double period, std::optional<double> c) {
    SearchBox box;
    box.c = c;
    return io::to_json(find_orbit_with_period(a, period, box), true);
}

Json cmd_spectrum(Rational a) { return io::spectrum_json(a); }

Json cmd_classify(Rational a, int K) {
    auto j = io::to_json(classify_circle(a, K));
    j["a"] = to_string(a);
    return j;
}

Json cmd_third(double eps, int n, double C) {
    const auto prof = third_profile(eps, n, C);
    auto j = io::to_json(rigidity_check_third(prof.G, prof.period));
    j.erase("points");
    return j;
}

Json cmd_symmetry_a(const std::string& a) {
    const ExtendedRational x = a == "inf" ? ExtendedRational::inf() : ExtendedRational::of(parse_rational(a));
    return {{"a", io::exponent_json(x)},
            {"q", io::exponent_json(q_from_a(x))},
            {"orbit_a", io::orbit_json(orbit_of_a(x))},
            {"orbit_q", io::orbit_json(orbit_of_q(q_from_a(x)))}};
}

Json cmd_symmetry_table(Rational q) {
    const auto t = branch_table(q);
    Json rows = Json::array();
    for (const auto& r : t) rows.push_back(r);
    return {{"q", to_string(q)}, {"table", rows}};
}

Json cmd_zoo(double eps, bool with_curves) {
    Json out = Json::array();
    for (const auto& z : sign_zoo(eps)) {
        Json j = io::to_json(z);
        if (!with_curves) j.erase("curve");
        out.push_back(j);
    }
    return out;
}

Json cmd_verify(const std::vector<std::string>& suites) {
    const auto& names = suites.empty() ? verify::suite_names() : suites;
    Json reports = Json::array();
    bool all = true;
    for (const auto& n : names) {
        const auto r = verify::run_suite(n);
        all = all && r.passed;
        reports.push_back(verify::to_json(r));
    }
    return {{"passed", all}, {"suites", reports}};
}

GalleryFiles cmd_gallery(double a, Rational rot, std::optional<double> c, const std::string& prefix,
                         bool osculants) {
    const auto curve = solve_closed(a, rot, c);
    GalleryFiles files{prefix + ".json", prefix + ".csv", prefix + ".svg"};
    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream f(path);
        if (!f) throw LabError(ErrorKind::invalid_input, "cannot write " + path);
        f << text;
    };
    write(files.json, io::to_json(curve).dump(1) + "\n");
    write(files.csv, io::to_csv(curve.curve));
    io::SvgOptions opt;
    if (osculants) {
        const auto rep = vertices_and_osculants(curve);
        const auto& pts = curve.curve.points();
        const double dt = curve.curve.period() / static_cast<double>(pts.size());
        for (const auto& v : rep.vertices) {
            const auto i = static_cast<std::size_t>(std::lround(v.t / dt)) % pts.size();
            opt.markers.push_back(pts[i]);
            // x^T K x = 1 traced by K^{-1/2} (cos, sin)
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(v.conic);
            if (es.eigenvalues().minCoeff() <= 0.0) continue;
            const Eigen::Matrix2d root = es.operatorInverseSqrt();
            std::vector<Vec2> ring;
            for (int k = 0; k < 128; ++k) {
                const double th = 2.0 * std::numbers::pi * k / 128.0;
                ring.push_back(root * Vec2(std::cos(th), std::sin(th)));
            }
            opt.overlays.push_back(std::move(ring));
        }
    }
    write(files.svg, io::to_svg(curve.curve.points(), opt));
    return files;
}

namespace {

void reply(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

// malformed input -> 400, library failure -> 422
void handle(httplib::Response& res, const std::string& hint, const std::function<Json()>& body) {
    try {
        reply(res, 200, body());
    } catch (const Json::exception& e) {
        reply(res, 400, {{"error", "malformed request"}, {"detail", e.what()}, {"schema", hint}});
    } catch (const LabError& e) {
        const bool malformed = e.kind() == ErrorKind::invalid_input;
        Json j{{"error", to_string(e.kind())}, {"detail", e.what()}};
        if (malformed) j["schema"] = hint;
        if (e.location()) j["location"] = *e.location();
        reply(res, malformed ? 400 : 422, j);
    } catch (const std::exception& e) {
        reply(res, 422, {{"error", "failure"}, {"detail", e.what()}});
    }
}

Rational query_rational(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) throw LabError(ErrorKind::invalid_input, std::string("missing query parameter ") + key);
    return parse_rational(req.get_param_value(key));
}

double number_field(const Json& j, const char* key) {
    if (!j.contains(key)) throw LabError(ErrorKind::invalid_input, std::string("missing field ") + key);
    const auto& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw LabError(ErrorKind::invalid_input, std::string("field ") + key + " must be a number");
}

Json parse_body(const httplib::Request& req) {
    auto j = Json::parse(req.body);
    if (!j.is_object()) throw LabError(ErrorKind::invalid_input, "body must be a JSON object");
    return j;
}

}  // namespace

void install_routes(httplib::Server& server) {
    server.Get("/spectrum", [](const httplib::Request& req, httplib::Response& res) {
        handle(res, "GET /spectrum?a=<rational>", [&] { return cmd_spectrum(query_rational(req, "a")); });
    });
    server.Get("/classify", [](const httplib::Request& req, httplib::Response& res) {
        handle(res, "GET /classify?a=<rational>", [&] { return cmd_classify(query_rational(req, "a"), 64); });
    });
    server.Post("/solve", [](const httplib::Request& req, httplib::Response& res) {
        handle(res, R"({"a": number, "rot": "j/q", "c": number (optional)})", [&] {
            const auto j = parse_body(req);
            const double a = number_field(j, "a");
            if (!j.contains("rot") || !j["rot"].is_string())
                throw LabError(ErrorKind::invalid_input, "rot must be a \"j/q\" string");
            const Rational rot = parse_rational(j["rot"].get<std::string>());
            std::optional<double> c;
            if (j.contains("c") && !j["c"].is_null()) c = number_field(j, "c");
            return io::to_json(solve_closed(a, rot, c));
        });
    });
    server.Post("/third", [](const httplib::Request& req, httplib::Response& res) {
        handle(res, R"({"eps": number in [0,1), "n": positive integer, "C": number})", [&] {
            const auto j = parse_body(req);
            const double eps = number_field(j, "eps");
            if (!j.contains("n") || !j["n"].is_number_integer())
                throw LabError(ErrorKind::invalid_input, "n must be an integer");
            const int n = j["n"].get<int>();
            if (n < 1 || !(eps >= 0.0 && eps < 1.0))
                throw LabError(ErrorKind::invalid_input, "need n >= 1 and 0 <= eps < 1");
            return cmd_third(eps, n, number_field(j, "C"));
        });
    });
    server.Get("/zoo", [](const httplib::Request&, httplib::Response& res) {
        handle(res, "GET /zoo", [] { return cmd_zoo(0.02, true); });
    });
}

}  // namespace lab

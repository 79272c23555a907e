#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "centrolab/error.hpp"
#include "centrolab/hill.hpp"
#include "centrolab/rational.hpp"

namespace httplib {
class Server;
}

namespace lab {

using Json = nlohmann::json;

enum ExitCode : int { ok = 0, verification_failed = 2, solver_failed = 3, bad_input = 4 };

/// Exit code for a library error: caller mistakes map to bad_input,
/// everything else to solver_failed.
int exit_code_for(centrolab::ErrorKind kind);
bool is_input_error(centrolab::ErrorKind kind);

/// rotation_tune + reconstruct; the covering is the denominator of rot.
centrolab::ClosedExtremalCurve solve_closed(double a, centrolab::Rational rot, std::optional<double> c);

Json cmd_solve_period(double a, double period, std::optional<double> c);
Json cmd_spectrum(centrolab::Rational a);
Json cmd_classify(centrolab::Rational a, int K);
Json cmd_third(double eps, int n, double C);
Json cmd_symmetry_a(const std::string& a);
Json cmd_symmetry_table(centrolab::Rational q);
Json cmd_zoo(double eps, bool with_curves);
/// Runs the named suites (all when empty); "passed" is the conjunction.
Json cmd_verify(const std::vector<std::string>& suites);

struct GalleryFiles {
    std::string json, csv, svg;
};
GalleryFiles cmd_gallery(double a, centrolab::Rational rot, std::optional<double> c, const std::string& prefix,
                         bool osculants);

/// Registers the JSON endpoints on a server.
void install_routes(httplib::Server& server);

}  // namespace lab

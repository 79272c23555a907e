#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "centrolab/curve.hpp"
#include "centrolab/deformation.hpp"
#include "centrolab/exponent_symmetry.hpp"
#include "centrolab/hill.hpp"
#include "centrolab/periodic_search.hpp"
#include "centrolab/special_third.hpp"
#include "centrolab/symplectic4d.hpp"

namespace centrolab::io {

using Json = nlohmann::json;

// {"period": T, "samples": [[t, x, y], ...]}, closing sample included.
Json to_json(const CentroaffineCurve& c);
CentroaffineCurve curve_from_json(const Json& j, Differentiation method = Differentiation::finite_difference);

std::string to_csv(const CentroaffineCurve& c);
CentroaffineCurve curve_from_csv(const std::string& text, Differentiation method = Differentiation::finite_difference);

Json to_json(const ProfileOrbit& o, bool with_samples = false);
/// Curve JSON plus covering, "j/q" rotation number and vertex parameters.
Json to_json(const ClosedExtremalCurve& c);
Json to_json(const VertexReport& r);
Json to_json(const Monodromy& m);

Json spectrum_json(Rational a);
Json to_json(const Classification& c);
Json to_json(const DeformationReport& r);

Json to_json(const ThirdRigidity& r);
Json to_json(const ExactThreeTerm& eq);
Json exponent_json(const ExtendedRational& x);  // "inf" or "p/q"
Json orbit_json(const std::vector<ExtendedRational>& orbit);

Json to_json(const Curve4D& c);
Json to_json(const SignCertificate& s);
Json to_json(const ZooEntry& z);

struct SvgOptions {
    std::vector<Vec2> markers;
    std::vector<std::vector<Vec2>> overlays;  // e.g. osculating conics
    double size = 600.0;
};
/// Closed polyline autoscaled to its bounding box with 5% margin.
std::string to_svg(const std::vector<Vec2>& points, const SvgOptions& opt = {});

}  // namespace centrolab::io

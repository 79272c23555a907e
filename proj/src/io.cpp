#include "centrolab/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "centrolab/error.hpp"

namespace centrolab::io {

namespace {

std::vector<PlanarSample> parse_samples(const Json& arr) {
    std::vector<PlanarSample> out;
    for (const auto& s : arr) {
        if (!s.is_array() || s.size() != 3) throw LabError(ErrorKind::invalid_input, "sample must be [t, x, y]");
        out.push_back({s[0].get<double>(), s[1].get<double>(), s[2].get<double>()});
    }
    return out;
}

Json vec2(const Vec2& v) { return Json::array({v.x(), v.y()}); }

}  // namespace

Json to_json(const CentroaffineCurve& c) {
    Json samples = Json::array();
    for (const auto& s : c.samples()) samples.push_back({s.t, s.x, s.y});
    return {{"period", c.period()}, {"samples", std::move(samples)}};
}

CentroaffineCurve curve_from_json(const Json& j, Differentiation method) {
    if (!j.is_object() || !j.contains("period") || !j.contains("samples") || !j["samples"].is_array())
        throw LabError(ErrorKind::invalid_input, "expected {\"period\": number, \"samples\": [[t,x,y],...]}");
    try {
        return CentroaffineCurve(parse_samples(j["samples"]), j["period"].get<double>(), std::nullopt, method);
    } catch (const Json::exception& e) {
        throw LabError(ErrorKind::invalid_input, e.what());
    }
}

std::string to_csv(const CentroaffineCurve& c) {
    std::ostringstream os;
    os << std::setprecision(17) << "t,x,y\n";
    for (const auto& s : c.samples()) os << s.t << ',' << s.x << ',' << s.y << '\n';
    return os.str();
}

CentroaffineCurve curve_from_csv(const std::string& text, Differentiation method) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,x,y", 0) != 0)
        throw LabError(ErrorKind::invalid_input, "CSV header must be t,x,y");
    std::vector<PlanarSample> samples;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        PlanarSample s{};
        if (!(ls >> s.t >> s.x >> s.y)) throw LabError(ErrorKind::invalid_input, "bad CSV row: " + line);
        samples.push_back(s);
    }
    if (samples.size() < 2) throw LabError(ErrorKind::invalid_input, "CSV has too few rows");
    const double period = samples.back().t - samples.front().t;
    return CentroaffineCurve(std::move(samples), period, std::nullopt, method);
}

Json to_json(const ProfileOrbit& o, bool with_samples) {
    Json j{{"a", o.exponent.a}, {"b", o.exponent.b}, {"c", o.c},          {"d", o.d},
           {"energy", o.energy}, {"m", o.m},         {"M", o.M},          {"period", o.period},
           {"residual", o.residual}, {"closure_defect", o.closure_defect}, {"constant", o.is_constant()}};
    if (with_samples) j["F"] = o.F;
    return j;
}

Json to_json(const ClosedExtremalCurve& c) {
    Json j = to_json(c.curve);
    j["covering"] = c.covering;
    j["winding"] = c.winding;
    j["rotation_number"] = to_string(c.rotation_number);
    j["vertices"] = c.vertices;
    j["scale"] = c.scale;
    j["closure_defect"] = c.closure_defect;
    j["wronskian_defect"] = c.wronskian_defect;
    j["residual"] = c.residual;
    j["orbit"] = to_json(c.orbit);
    return j;
}

Json to_json(const VertexReport& r) {
    Json vs = Json::array();
    for (const auto& v : r.vertices)
        vs.push_back({{"t", v.t},
                      {"p", v.p},
                      {"kind", v.is_max ? "max" : "min"},
                      {"conic", {v.conic(0, 0), v.conic(0, 1), v.conic(1, 1)}},
                      {"semi_major", v.semi_major},
                      {"semi_minor", v.semi_minor}});
    return {{"constant_profile", r.constant_profile}, {"vertices", vs}, {"distinct_values", r.distinct_values}};
}

Json to_json(const Monodromy& m) {
    Json j{{"matrix", {{m.matrix(0, 0), m.matrix(0, 1)}, {m.matrix(1, 0), m.matrix(1, 1)}}},
           {"trace", m.trace},
           {"determinant", m.determinant},
           {"type", to_string(m.type)},
           {"total_rotation", m.total_rotation},
           {"winding_fraction", m.winding_fraction()}};
    j["rotation_angle"] = m.rotation_angle ? Json(*m.rotation_angle) : Json(nullptr);
    return j;
}

Json spectrum_json(Rational a) {
    Json j{{"a", to_string(a)}};
    const auto hit = spectrum_hit(a);
    j["hit"] = hit.has_value();
    if (hit) {
        j["k"] = hit->k;
        j["n"] = hit->n;
    }
    return j;
}

Json to_json(const Classification& c) {
    Json j{{"classification", to_string(c.kind)}, {"kernel", c.kernel}};
    if (c.kind == CircleClass::degenerate && !c.kernel.empty())
        j["banner"] = "degenerate: k=" + std::to_string(c.kernel.front());
    return j;
}

Json to_json(const DeformationReport& r) {
    Json coeffs = Json::object();
    for (const auto& [k, h] : r.hessian_coeffs) coeffs[std::to_string(k)] = to_string(h);
    return {{"a", to_string(r.a)},
            {"n", r.n},
            {"spectrum_hits", r.spectrum_hits},
            {"hessian_coeffs", coeffs},
            {"classification", to_json(r.classification)}};
}

Json to_json(const ThirdRigidity& r) {
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(vec2(p));
    return {{"conic", r.conic},       {"deviation", r.deviation},
            {"residual", r.residual}, {"closure_defect", r.closure_defect},
            {"center", vec2(r.center)}, {"radius", r.radius},
            {"mu", r.mu},             {"eps", r.eps},
            {"n", r.n},               {"winding", r.winding},
            {"C", r.C},               {"c", r.c},
            {"d", r.d},               {"points", pts}};
}

Json to_json(const ExactThreeTerm& eq) {
    return {{"u", to_string(eq.u)}, {"v", to_string(eq.v)}, {"w", to_string(eq.w)}, {"q", to_string(eq.q)}};
}

Json exponent_json(const ExtendedRational& x) { return x.infinite ? Json("inf") : Json(to_string(x.value)); }

Json orbit_json(const std::vector<ExtendedRational>& orbit) {
    Json j = Json::array();
    for (const auto& x : orbit) j.push_back(exponent_json(x));
    return j;
}

Json to_json(const Curve4D& c) {
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back({p(0), p(1), p(2), p(3)});
    return {{"period", c.period}, {"points", pts}};
}

Json to_json(const SignCertificate& s) {
    return {{"pattern", s.pattern()},         {"sign_star", to_string(s.sign_star)},
            {"sign_conv", to_string(s.sign_conv)}, {"margin_star", s.margin_star},
            {"margin_conv", s.margin_conv},   {"floor", s.floor},
            {"refined_agrees", s.refined_agrees}};
}

Json to_json(const ZooEntry& z) {
    return {{"label", z.label}, {"certificate", to_json(z.certificate)}, {"curve", to_json(z.curve)}};
}

std::string to_svg(const std::vector<Vec2>& points, const SvgOptions& opt) {
    if (points.empty()) throw LabError(ErrorKind::invalid_input, "nothing to draw");
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
    for (const auto& p : points) {
        x0 = std::min(x0, p.x());
        x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y());
        y1 = std::max(y1, p.y());
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    const double margin = 0.05 * span;
    const double box = span + 2.0 * margin;
    const double stroke = 0.005 * box;
    auto poly = [&](const std::vector<Vec2>& pts, const char* colour, double width) {
        std::ostringstream os;
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << width << "\" points=\"";
        for (const auto& p : pts) os << p.x() << ',' << -p.y() << ' ';
        os << pts.front().x() << ',' << -pts.front().y() << "\"/>\n";
        return os.str();
    };
    std::ostringstream os;
    os << std::setprecision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size << "\" height=\"" << opt.size
       << "\" viewBox=\"" << x0 - margin - 0.5 * (span - (x1 - x0)) << ' ' << -y1 - margin - 0.5 * (span - (y1 - y0))
       << ' ' << box << ' ' << box << "\">\n";
    for (const auto& o : opt.overlays)
        if (!o.empty()) os << poly(o, "#bbbbbb", 0.5 * stroke);
    os << poly(points, "#1f3a93", stroke);
    for (const auto& m : opt.markers)
        os << "<circle cx=\"" << m.x() << "\" cy=\"" << -m.y() << "\" r=\"" << 2.0 * stroke
           << "\" fill=\"#c0392b\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace centrolab::io

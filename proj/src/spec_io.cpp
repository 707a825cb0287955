#include "blaschke/spec_io.hpp"

#include <fstream>
#include <ostream>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SpecError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SpecError(path + ": missing field \"" + key + "\"");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SpecError(path + ": expected a number");
    return j.get<double>();
}

Polynomial coefficient_list(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw SpecError(path + ": expected a non-empty coefficient array");
    std::vector<cplx> c;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        c.push_back(j[k].is_number() ? cplx(j[k].get<double>(), 0.0) : parse_complex(j[k], p));
    }
    return Polynomial(std::move(c));
}

json coefficient_json(const Polynomial& p) {
    json a = json::array();
    for (cplx c : p.coeffs()) a.push_back(complex_json(c));
    if (a.empty()) a.push_back(0.0);
    return a;
}

}  // namespace

cplx parse_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SpecError(path + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_json(cplx z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

MapExpr parse_function_spec(const json& j, const std::string& path) {
    const json& type = field(j, "type", path);
    if (!type.is_string()) throw SpecError(path + ".type: expected a string");
    const std::string t = type.get<std::string>();
    if (t == "blaschke") {
        const cplx lambda = j.contains("lambda") ? parse_complex(j["lambda"], path + ".lambda") : cplx(1.0);
        const json& zj = field(j, "zeros", path);
        if (!zj.is_array()) throw SpecError(path + ".zeros: expected an array");
        std::vector<cplx> zeros;
        for (std::size_t k = 0; k < zj.size(); ++k)
            zeros.push_back(parse_complex(zj[k], path + ".zeros[" + std::to_string(k) + "]"));
        return MapExpr::blaschke(BlaschkeProduct(lambda, std::move(zeros)));
    }
    if (t == "automorphism") {
        const double theta = j.contains("theta") ? number(j["theta"], path + ".theta") : 0.0;
        const cplx a = j.contains("a") ? parse_complex(j["a"], path + ".a") : cplx(0.0);
        return MapExpr::automorphism(DiskAutomorphism(theta, a));
    }
    if (t == "rational") {
        return MapExpr::rational(RationalMap(coefficient_list(field(j, "num", path), path + ".num"),
                                             coefficient_list(field(j, "den", path), path + ".den")));
    }
    if (t == "compose") {
        MapExpr outer = parse_function_spec(field(j, "outer", path), path + ".outer");
        MapExpr inner = parse_function_spec(field(j, "inner", path), path + ".inner");
        return MapExpr::compose(std::move(outer), std::move(inner));
    }
    throw SpecError(path + ".type: unknown function type \"" + t + "\"");
}

MapExpr parse_function_spec_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw SpecError("cannot open function spec " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SpecError(file.string() + ": " + e.what());
    }
    return parse_function_spec(j);
}

json to_json(const MapExpr& e) {
    switch (e.kind()) {
        case MapExpr::Kind::Blaschke: {
            const auto* b = e.as_blaschke();
            json zeros = json::array();
            for (cplx a : b->zeros()) zeros.push_back(complex_json(a));
            return {{"type", "blaschke"}, {"lambda", complex_json(b->lambda())}, {"zeros", zeros}};
        }
        case MapExpr::Kind::Automorphism: {
            const auto* t = e.as_automorphism();
            return {{"type", "automorphism"}, {"theta", t->theta()}, {"a", complex_json(t->a())}};
        }
        case MapExpr::Kind::Rational: {
            const auto* r = e.as_rational();
            return {{"type", "rational"}, {"num", coefficient_json(r->num())}, {"den", coefficient_json(r->den())}};
        }
        case MapExpr::Kind::Compose:
            return {{"type", "compose"}, {"outer", to_json(e.outer())}, {"inner", to_json(e.inner())}};
    }
    return {};
}

json to_json(const Region& r) {
    json j;
    switch (r.kind) {
        case RegionKind::Stolz: j = {{"kind", "stolz"}, {"xi", complex_json(r.xi)}, {"m", r.m}}; break;
        case RegionKind::Horocycle: j = {{"kind", "horocycle"}, {"xi", complex_json(r.xi)}, {"M", r.M}}; break;
        case RegionKind::End: j = {{"kind", "end"}, {"xi", complex_json(r.xi)}, {"m", r.m}, {"M", r.M}}; break;
    }
    return j;
}

Region parse_region(const json& j, const std::string& path) {
    const json& kind = field(j, "kind", path);
    if (!kind.is_string()) throw SpecError(path + ".kind: expected a string");
    const std::string k = kind.get<std::string>();
    const BoundaryPoint xi(parse_complex(field(j, "xi", path), path + ".xi"));
    if (k == "stolz") return Region::stolz(xi, number(field(j, "m", path), path + ".m"));
    if (k == "horocycle") return Region::horocycle(xi, number(field(j, "M", path), path + ".M"));
    if (k == "end")
        return Region::end(xi, number(field(j, "m", path), path + ".m"), number(field(j, "M", path), path + ".M"));
    throw SpecError(path + ".kind: unknown region kind \"" + k + "\"");
}

json to_json(const NontangentialSequence& s) {
    json pts = json::array();
    for (cplx z : s.z) pts.push_back(complex_json(z));
    return {{"xi", complex_json(s.xi)}, {"m", s.m}, {"angle", s.angle}, {"t", s.t}, {"points", pts}};
}

void write_curve_csv(std::ostream& os, const Curve& c) {
    os << "index,re,im\n";
    os.precision(17);
    for (std::size_t k = 0; k < c.samples.size(); ++k)
        os << k << "," << c.samples[k].real() << "," << c.samples[k].imag() << "\n";
}

}  // namespace blaschke

#include "mlfrac/problem_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace mlfrac {

namespace {

using nlohmann::json;

Complex complex_from(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InvalidArgumentError(std::string(what) +
                               ": expected number or [re, im] pair");
}

std::vector<Complex> complex_list(const json& j, const char* what) {
    if (!j.is_array())
        throw InvalidArgumentError(std::string(what) + ": expected array");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(complex_from(e, what));
    return out;
}

json complex_to(const Complex& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

CauchyProblem problem_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgumentError("problem: expected object");
    if (!j.contains("nu") || !j["nu"].is_number())
        throw InvalidArgumentError("problem: missing numeric 'nu'");
    if (!j.contains("lambda"))
        throw InvalidArgumentError("problem: missing 'lambda'");
    if (!j.contains("init_conds"))
        throw InvalidArgumentError("problem: missing 'init_conds'");

    double nu = j["nu"].get<double>();
    std::vector<Complex> lambda = complex_list(j["lambda"], "lambda");
    std::vector<Complex> conds = complex_list(j["init_conds"], "init_conds");

    std::optional<RootSpectrum> spectrum;
    if (j.contains("roots")) {
        RootSpectrum spec;
        spec.roots = complex_list(j["roots"], "roots");
        if (j.contains("mults")) {
            if (!j["mults"].is_array())
                throw InvalidArgumentError("mults: expected array");
            for (const auto& m : j["mults"]) spec.mults.push_back(m.get<int>());
        } else {
            spec.mults.assign(spec.roots.size(), 1);
        }
        spectrum = std::move(spec);
    }

    std::optional<Forcing> forcing;
    if (j.contains("forcing") && !j["forcing"].is_null()) {
        const json& f = j["forcing"];
        std::string kind = f.value("kind", "");
        if (kind == "constant") {
            if (!f.contains("value"))
                throw InvalidArgumentError("forcing: constant needs 'value'");
            forcing = Forcing::make_constant(complex_from(f["value"], "forcing value"));
        } else if (kind == "table") {
            if (!f.contains("times") || !f.contains("values"))
                throw InvalidArgumentError("forcing: table needs 'times' and 'values'");
            std::vector<double> times;
            for (const auto& t : f["times"]) times.push_back(t.get<double>());
            forcing = Forcing::make_table(std::move(times),
                                          complex_list(f["values"], "forcing values"));
        } else {
            throw InvalidArgumentError("forcing: kind must be 'constant' or 'table'");
        }
    }

    return CauchyProblem(nu, CharPolynomial(std::move(lambda)), std::move(conds),
                         std::move(forcing), std::move(spectrum));
}

nlohmann::json problem_to_json(const CauchyProblem& p) {
    json j;
    j["nu"] = p.nu;
    json lam = json::array();
    for (const Complex& c : p.poly.coeffs) lam.push_back(complex_to(c));
    j["lambda"] = lam;
    json roots = json::array();
    for (const Complex& r : p.spectrum.roots) roots.push_back(complex_to(r));
    j["roots"] = roots;
    j["mults"] = p.spectrum.mults;
    json conds = json::array();
    for (const Complex& c : p.init_conds) conds.push_back(complex_to(c));
    j["init_conds"] = conds;
    if (p.forcing) {
        json f;
        if (p.forcing->kind == Forcing::Kind::Constant) {
            f["kind"] = "constant";
            f["value"] = complex_to(p.forcing->constant);
        } else if (p.forcing->kind == Forcing::Kind::Table) {
            f["kind"] = "table";
            f["times"] = p.forcing->times;
            json vals = json::array();
            for (const Complex& v : p.forcing->values) vals.push_back(complex_to(v));
            f["values"] = vals;
        }
        j["forcing"] = f;
    }
    return j;
}

CauchyProblem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open problem file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidArgumentError(std::string("problem file is not valid JSON: ") +
                                   e.what());
    }
    return problem_from_json(j);
}

MotionSpec motion_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgumentError("motion: expected object");
    for (const char* key : {"velocities", "rate", "initial_dist", "switch_matrix"})
        if (!j.contains(key))
            throw InvalidArgumentError(std::string("motion: missing '") + key + "'");
    MotionSpec spec;
    for (const auto& v : j["velocities"])
        spec.velocities.push_back(v.get<std::vector<double>>());
    spec.rate = j["rate"].get<double>();
    spec.initial_dist = j["initial_dist"].get<std::vector<double>>();
    for (const auto& row : j["switch_matrix"])
        spec.switch_matrix.push_back(row.get<std::vector<double>>());
    spec.validate();
    return spec;
}

MotionSpec load_motion_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open motion file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgumentError(std::string("motion file is not valid JSON: ") +
                                   e.what());
    }
    return motion_from_json(j);
}

}  // namespace mlfrac

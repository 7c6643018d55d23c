#include "floqlab/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "floqlab/custom_model.hpp"
#include "floqlab/errors.hpp"

namespace floqlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("run config: field '" + field + "' " + what);
}

std::string joined(const std::string& context, const std::string& key) {
    return context.empty() ? key : context + "." + key;
}

double as_real(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "must be a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) fail(field, "must be an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& field) {
    if (!j.is_string()) fail(field, "must be a string");
    return j.get<std::string>();
}

const json* maybe(const json& j, const char* key) {
    if (!j.contains(key)) return nullptr;
    return &j.at(key);
}

void check_keys(const json& j, const std::string& context,
                std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(joined(context, it.key()), "is not a recognized field");
    }
}

GridSpec parse_grid(const json& j, const std::string& context, GridSpec grid) {
    if (!j.is_object()) fail(context, "must be an object");
    check_keys(j, context, {"start", "stop", "count"});
    if (const json* v = maybe(j, "start")) grid.start = as_real(*v, context + ".start");
    if (const json* v = maybe(j, "stop")) grid.stop = as_real(*v, context + ".stop");
    if (const json* v = maybe(j, "count")) grid.count = as_int(*v, context + ".count");
    return grid;
}

const std::set<std::string>& known_outputs() {
    static const std::set<std::string> names = {"quasienergies", "susceptibility", "dipoles",
                                                "symmetry_report", "dark_scan"};
    return names;
}

} // namespace

std::vector<double> GridSpec::points() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < count; ++i)
        out.push_back(start + i * (stop - start) / (count - 1));
    return out;
}

void RunConfig::validate() const {
    static const std::map<std::string, std::set<std::string>> allowed_params = {
        {"benzene", {"e0", "j0", "d0"}},
        {"dimer", {"delta", "j0", "r"}},
        {"tls", {"h_x"}},
        {"custom", {}},
    };
    const auto it = allowed_params.find(model.name);
    if (it == allowed_params.end())
        fail("model.name", "must be one of benzene, dimer, tls, custom");
    for (const auto& [key, value] : model.params) {
        if (!it->second.count(key))
            fail("model.params." + key, "is not a parameter of model '" + model.name + "'");
        if (!std::isfinite(value))
            fail("model.params." + key, "must be finite");
    }
    if (model.name == "custom" && model.path.empty())
        fail("model.path", "is required for a custom model");
    if (model.name != "custom" && !model.path.empty())
        fail("model.path", "is only meaningful for a custom model");

    solver.validate();

    if (!(response.gamma > 0.0))
        fail("response.gamma", "must be positive");
    if (!std::isfinite(response.lambda))
        fail("response.lambda", "must be finite");
    if (response.m_cutoff < 0)
        fail("response.m_cutoff", "must be non-negative");
    if (response.dipole_harmonics < 0)
        fail("response.dipole_harmonics", "must be non-negative");
    if (2 * response.dipole_harmonics >= solver.time_samples)
        fail("response.dipole_harmonics",
             "must stay below half of solver.time_samples to be resolvable");
    if (response.bands.empty())
        fail("response.bands", "must list at least one band");
    for (const int band : response.bands)
        if (std::abs(band) + response.m_cutoff > response.dipole_harmonics)
            fail("response.bands",
                 "band " + std::to_string(band) +
                     " plus m_cutoff exceeds dipole_harmonics; raise dipole_harmonics");

    const PopulationSpec& pops = response.populations;
    if (pops.source == PopulationSpec::Source::FloquetGibbs) {
        if (!(pops.beta >= 0.0))
            fail("response.populations.beta", "must be non-negative");
    } else {
        if (pops.values.empty())
            fail("response.populations.values", "must list one population per state");
        double sum = 0.0;
        for (const double p : pops.values) {
            if (!(p >= 0.0)) fail("response.populations.values", "must be non-negative");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            fail("response.populations.values", "must sum to 1");
    }

    for (const GridSpec* grid : {&drive, &probe}) {
        const std::string name = grid == &drive ? "sweep.drive" : "sweep.probe";
        if (grid->count < 1) fail(name + ".count", "must be at least 1");
        if (!(grid->stop >= grid->start)) fail(name + ".stop", "must be >= start");
        if (!std::isfinite(grid->start) || !std::isfinite(grid->stop))
            fail(name, "bounds must be finite");
    }

    for (const std::string& artifact : outputs)
        if (!known_outputs().count(artifact))
            fail("outputs", "lists unknown artifact '" + artifact + "'");
}

bool RunConfig::allows(const std::string& artifact) const {
    if (outputs.empty()) return true;
    for (const std::string& name : outputs)
        if (name == artifact) return true;
    return false;
}

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("run config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("run config: document root must be an object");
    check_keys(doc, "", {"model", "solver", "response", "sweep", "outputs"});

    RunConfig cfg;
    if (const json* m = maybe(doc, "model")) {
        if (!m->is_object()) fail("model", "must be an object");
        check_keys(*m, "model", {"name", "path", "params"});
        if (const json* v = maybe(*m, "name")) cfg.model.name = as_string(*v, "model.name");
        if (const json* v = maybe(*m, "path")) cfg.model.path = as_string(*v, "model.path");
        if (const json* v = maybe(*m, "params")) {
            if (!v->is_object()) fail("model.params", "must be an object of numbers");
            for (auto it = v->begin(); it != v->end(); ++it)
                cfg.model.params[it.key()] =
                    as_real(it.value(), "model.params." + it.key());
        }
    }
    if (const json* s = maybe(doc, "solver")) {
        if (!s->is_object()) fail("solver", "must be an object");
        check_keys(*s, "solver",
                   {"time_steps", "time_samples", "harmonic_cutoff", "unitarity_tol"});
        if (const json* v = maybe(*s, "time_steps"))
            cfg.solver.time_steps = as_int(*v, "solver.time_steps");
        if (const json* v = maybe(*s, "time_samples"))
            cfg.solver.time_samples = as_int(*v, "solver.time_samples");
        if (const json* v = maybe(*s, "harmonic_cutoff"))
            cfg.solver.harmonic_cutoff = as_int(*v, "solver.harmonic_cutoff");
        if (const json* v = maybe(*s, "unitarity_tol"))
            cfg.solver.unitarity_tol = as_real(*v, "solver.unitarity_tol");
    }
    if (const json* r = maybe(doc, "response")) {
        if (!r->is_object()) fail("response", "must be an object");
        check_keys(*r, "response",
                   {"gamma", "lambda", "m_cutoff", "dipole_harmonics", "bands", "populations"});
        if (const json* v = maybe(*r, "gamma"))
            cfg.response.gamma = as_real(*v, "response.gamma");
        if (const json* v = maybe(*r, "lambda"))
            cfg.response.lambda = as_real(*v, "response.lambda");
        if (const json* v = maybe(*r, "m_cutoff"))
            cfg.response.m_cutoff = as_int(*v, "response.m_cutoff");
        if (const json* v = maybe(*r, "dipole_harmonics"))
            cfg.response.dipole_harmonics = as_int(*v, "response.dipole_harmonics");
        if (const json* v = maybe(*r, "bands")) {
            if (!v->is_array()) fail("response.bands", "must be a list of integers");
            cfg.response.bands.clear();
            for (std::size_t i = 0; i < v->size(); ++i)
                cfg.response.bands.push_back(
                    as_int(v->at(i), "response.bands[" + std::to_string(i) + "]"));
        }
        if (const json* v = maybe(*r, "populations")) {
            if (!v->is_object()) fail("response.populations", "must be an object");
            check_keys(*v, "response.populations", {"type", "beta", "values"});
            if (const json* t = maybe(*v, "type")) {
                const std::string type = as_string(*t, "response.populations.type");
                if (type == "floquet_gibbs")
                    cfg.response.populations.source = PopulationSpec::Source::FloquetGibbs;
                else if (type == "explicit")
                    cfg.response.populations.source = PopulationSpec::Source::Explicit;
                else
                    fail("response.populations.type", "must be floquet_gibbs or explicit");
            }
            if (const json* b = maybe(*v, "beta"))
                cfg.response.populations.beta = as_real(*b, "response.populations.beta");
            if (const json* vals = maybe(*v, "values")) {
                if (!vals->is_array())
                    fail("response.populations.values", "must be a list of numbers");
                cfg.response.populations.values.clear();
                for (std::size_t i = 0; i < vals->size(); ++i)
                    cfg.response.populations.values.push_back(as_real(
                        vals->at(i), "response.populations.values[" + std::to_string(i) + "]"));
            }
        }
    }
    if (const json* s = maybe(doc, "sweep")) {
        if (!s->is_object()) fail("sweep", "must be an object");
        check_keys(*s, "sweep", {"drive", "probe"});
        if (const json* v = maybe(*s, "drive"))
            cfg.drive = parse_grid(*v, "sweep.drive", cfg.drive);
        if (const json* v = maybe(*s, "probe"))
            cfg.probe = parse_grid(*v, "sweep.probe", cfg.probe);
    }
    if (const json* o = maybe(doc, "outputs")) {
        if (!o->is_array()) fail("outputs", "must be a list of artifact names");
        for (std::size_t i = 0; i < o->size(); ++i)
            cfg.outputs.push_back(as_string(o->at(i), "outputs[" + std::to_string(i) + "]"));
    }

    cfg.validate();
    return cfg;
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("run config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

std::string serialize_run_config(const RunConfig& cfg) {
    ordered_json doc;
    doc["model"]["name"] = cfg.model.name;
    doc["model"]["path"] = cfg.model.path;
    doc["model"]["params"] = cfg.model.params;
    doc["solver"] = {{"time_steps", cfg.solver.time_steps},
                     {"time_samples", cfg.solver.time_samples},
                     {"harmonic_cutoff", cfg.solver.harmonic_cutoff},
                     {"unitarity_tol", cfg.solver.unitarity_tol}};
    doc["response"]["gamma"] = cfg.response.gamma;
    doc["response"]["lambda"] = cfg.response.lambda;
    doc["response"]["m_cutoff"] = cfg.response.m_cutoff;
    doc["response"]["dipole_harmonics"] = cfg.response.dipole_harmonics;
    doc["response"]["bands"] = cfg.response.bands;
    doc["response"]["populations"]["type"] =
        cfg.response.populations.source == PopulationSpec::Source::FloquetGibbs
            ? "floquet_gibbs"
            : "explicit";
    doc["response"]["populations"]["beta"] = cfg.response.populations.beta;
    doc["response"]["populations"]["values"] = cfg.response.populations.values;
    doc["sweep"]["drive"] = {{"start", cfg.drive.start},
                             {"stop", cfg.drive.stop},
                             {"count", cfg.drive.count}};
    doc["sweep"]["probe"] = {{"start", cfg.probe.start},
                             {"stop", cfg.probe.stop},
                             {"count", cfg.probe.count}};
    doc["outputs"] = cfg.outputs;
    return doc.dump(2) + "\n";
}

ModelBundle build_model(const ModelSpec& spec, double f_over_omega) {
    const auto param = [&](const char* key, double fallback) {
        const auto it = spec.params.find(key);
        return it == spec.params.end() ? fallback : it->second;
    };
    // All builtin spectra are reported in units of the drive frequency, so
    // the models are built at omega = 1 and parameters are read in those
    // units.
    const double omega = 1.0;
    if (spec.name == "benzene")
        return build_benzene(param("e0", 0.45), param("j0", 0.05), f_over_omega, omega,
                             param("d0", 1.0));
    if (spec.name == "dimer")
        return build_dimer(param("delta", 0.2), param("j0", 0.05), param("r", 2.0),
                           f_over_omega, omega);
    if (spec.name == "tls")
        return build_tls(param("h_x", 0.05), f_over_omega, omega);
    if (spec.name == "custom") {
        ModelBundle bundle = load_custom_model_file(spec.path);
        for (auto& [k, component] : bundle.hamiltonian.fourier)
            if (k != 0) component *= f_over_omega;
        return bundle;
    }
    throw ConfigError("run config: model name '" + spec.name +
                      "' is not one of benzene, dimer, tls, custom");
}

} // namespace floqlab

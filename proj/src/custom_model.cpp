#include "floqlab/custom_model.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "floqlab/errors.hpp"
#include "floqlab/symmetry_spec.hpp"

namespace floqlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("custom model: field '" + field + "' " + what);
}

const json& require(const json& j, const char* key, const std::string& context) {
    const std::string field = context.empty() ? key : context + "." + key;
    if (!j.is_object() || !j.contains(key)) fail(field, "is missing");
    return j.at(key);
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

Eigen::MatrixXd as_real_matrix(const json& j, int dim, const std::string& field) {
    const std::string shape = std::to_string(dim) + "x" + std::to_string(dim);
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        fail(field, "must be a " + shape + " array of numbers");
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = j.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            fail(field, "must be a " + shape + " array of numbers");
        for (int c = 0; c < dim; ++c) {
            const json& cell = row.at(c);
            if (!cell.is_number()) fail(field, "must be a " + shape + " array of numbers");
            m(r, c) = cell.get<double>();
        }
    }
    return m;
}

// Reads the {"re": ..., "im": ...} pair stored directly on `holder`.
CMatrix as_complex_matrix(const json& holder, int dim, const std::string& context) {
    const Eigen::MatrixXd re = as_real_matrix(require(holder, "re", context), dim, context + ".re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(dim, dim);
    if (holder.is_object() && holder.contains("im"))
        im = as_real_matrix(holder.at("im"), dim, context + ".im");
    return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

} // namespace

ModelBundle load_custom_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("custom model: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("custom model: document root must be an object");

    ModelBundle bundle;
    const int dim = as_int(require(doc, "dim", ""), "dim");
    if (dim <= 0) fail("dim", "must be positive");
    const double omega = as_real(require(doc, "omega", ""), "omega");
    if (!(omega > 0.0)) fail("omega", "must be positive");
    bundle.hamiltonian.dim = dim;
    bundle.hamiltonian.omega = omega;

    const json& fourier = require(doc, "fourier", "");
    if (!fourier.is_array() || fourier.empty())
        fail("fourier", "must be a non-empty list of components");
    std::map<int, CMatrix> components;
    {
        std::map<int, CMatrix> given;
        for (std::size_t i = 0; i < fourier.size(); ++i) {
            const std::string context = "fourier[" + std::to_string(i) + "]";
            const json& entry = fourier.at(i);
            if (!entry.is_object()) fail(context, "must be an object");
            const int k = as_int(require(entry, "k", context), context + ".k");
            if (given.count(k)) fail(context + ".k", "lists harmonic " + std::to_string(k) + " twice");
            given.emplace(k, as_complex_matrix(entry, dim, context));
        }
        components = given;
        for (const auto& [k, m] : given) {
            if (!components.count(-k)) {
                components.emplace(-k, m.adjoint());
            } else if (k > 0) {
                if (max_abs_diff(components.at(-k), m.adjoint().eval()) > 1e-12)
                    throw ConfigError("custom model: fourier components for k = " +
                                      std::to_string(k) + " and k = " + std::to_string(-k) +
                                      " are not adjoints of each other");
            }
        }
    }
    bundle.hamiltonian.fourier = std::move(components);
    bundle.hamiltonian.validate();

    const json& probe = require(doc, "probe", "");
    if (!probe.is_object()) fail("probe", "must be an object");
    bundle.probe.matrix = as_complex_matrix(probe, dim, "probe");
    bundle.probe.coupling =
        probe.contains("coupling") ? as_real(probe.at("coupling"), "probe.coupling") : 1.0;
    if (bundle.probe.coupling < 0.0) fail("probe.coupling", "must be non-negative");
    if (hermiticity_residual(bundle.probe.matrix) > 1e-12)
        fail("probe", "matrix must be Hermitian");

    if (doc.contains("symmetries")) {
        const json& syms = doc.at("symmetries");
        if (!syms.is_array()) fail("symmetries", "must be a list");
        const double tau = bundle.hamiltonian.period();
        for (std::size_t i = 0; i < syms.size(); ++i) {
            const std::string context = "symmetries[" + std::to_string(i) + "]";
            const json& entry = syms.at(i);
            if (!entry.is_object()) fail(context, "must be an object");
            SymmetrySpec s;
            try {
                s.kind = symmetry_kind_from_string(as_string(require(entry, "kind", context),
                                                             context + ".kind"));
            } catch (const ConfigError&) {
                fail(context + ".kind", "must be one of RS, PHS, CS, TRS");
            }
            s.op = as_complex_matrix(require(entry, "operator", context), dim,
                                     context + ".operator");
            s.t_shift = as_real(require(entry, "t_shift_over_tau", context),
                                context + ".t_shift_over_tau") * tau;
            if (entry.contains("n_fold"))
                s.n_fold = as_int(entry.at("n_fold"), context + ".n_fold");
            if (entry.contains("alpha_v"))
                s.alpha_v = as_int(entry.at("alpha_v"), context + ".alpha_v");
            if (s.alpha_v != 1 && s.alpha_v != -1)
                fail(context + ".alpha_v", "must be +1 or -1");
            if (s.kind == SymmetryKind::RS && s.n_fold < 1)
                fail(context + ".n_fold", "must be a positive integer");
            bundle.symmetries.push_back(std::move(s));
        }
    }

    if (doc.contains("labels")) {
        const json& labels = doc.at("labels");
        if (!labels.is_array() || static_cast<int>(labels.size()) != dim)
            fail("labels", "must list one label per basis state");
        for (std::size_t i = 0; i < labels.size(); ++i)
            bundle.basis_labels.push_back(
                as_string(labels.at(i), "labels[" + std::to_string(i) + "]"));
    } else {
        for (int i = 0; i < dim; ++i) bundle.basis_labels.push_back(std::to_string(i));
    }
    return bundle;
}

ModelBundle load_custom_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("custom model: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_custom_model(buffer.str());
}

} // namespace floqlab

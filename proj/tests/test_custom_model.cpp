#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>

#include "floqlab/custom_model.hpp"
#include "floqlab/errors.hpp"
#include "floqlab/model.hpp"

using namespace floqlab;

namespace {

// A hand-written document equivalent to build_tls(0.05, 1.2, 1.0).
const char* kTlsDoc = R"({
    "dim": 2,
    "omega": 1.0,
    "fourier": [
        {"k": 0, "re": [[0.0, 0.025], [0.025, 0.0]]},
        {"k": 1, "re": [[0.3, 0.0], [0.0, -0.3]]}
    ],
    "probe": {"re": [[0.0, 1.0], [1.0, 0.0]]},
    "symmetries": [
        {"kind": "rs", "operator": {"re": [[0.0, 1.0], [1.0, 0.0]]},
         "t_shift_over_tau": 0.5, "n_fold": 2, "alpha_v": 1},
        {"kind": "phs", "operator": {"re": [[1.0, 0.0], [0.0, -1.0]]},
         "t_shift_over_tau": 0.5, "alpha_v": -1}
    ],
    "labels": ["up", "down"]
})";

void expect_error_mentioning(const std::string& doc, const std::string& needle) {
    try {
        load_custom_model(doc);
        FAIL("expected ConfigError mentioning '" << needle << "'");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CAPTURE(what);
        CHECK(what.find(needle) != std::string::npos);
    }
}

} // namespace

TEST_CASE("a full document reproduces the built-in two-level model") {
    ModelBundle custom = load_custom_model(kTlsDoc);
    ModelBundle builtin = build_tls(0.05, 1.2, 1.0);

    CHECK(custom.hamiltonian.dim == 2);
    CHECK(custom.hamiltonian.omega == 1.0);
    REQUIRE(custom.hamiltonian.fourier.size() == 3);
    for (int k : {-1, 0, 1})
        CHECK(max_abs_diff(custom.hamiltonian.component(k),
                           builtin.hamiltonian.component(k)) == 0.0);
    CHECK(max_abs_diff(custom.probe.matrix, builtin.probe.matrix) == 0.0);
    CHECK(custom.probe.coupling == 1.0);

    REQUIRE(custom.symmetries.size() == 2);
    CHECK(custom.symmetries[0].kind == SymmetryKind::RS);
    CHECK(custom.symmetries[0].n_fold == 2);
    CHECK(custom.symmetries[0].t_shift ==
          doctest::Approx(builtin.symmetries[0].t_shift).epsilon(1e-15));
    CHECK(custom.symmetries[1].kind == SymmetryKind::PHS);
    CHECK(custom.symmetries[1].alpha_v == -1);
    CHECK(custom.basis_labels == std::vector<std::string>{"up", "down"});
}

TEST_CASE("a missing negative component is filled in as the adjoint") {
    ModelBundle m = load_custom_model(R"({
        "dim": 2,
        "omega": 2.0,
        "fourier": [
            {"k": 0, "re": [[0.1, 0.0], [0.0, -0.1]]},
            {"k": 2, "re": [[0.0, 0.5], [0.0, 0.0]], "im": [[0.0, 0.25], [0.0, 0.0]]}
        ],
        "probe": {"re": [[0.0, 1.0], [1.0, 0.0]]}
    })");
    const CMatrix minus = m.hamiltonian.component(-2);
    const CMatrix plus = m.hamiltonian.component(2);
    CHECK(max_abs_diff(minus, plus.adjoint()) == 0.0);
    CHECK(minus(1, 0) == Complex{0.5, -0.25});
}

TEST_CASE("explicitly inconsistent paired components are rejected") {
    expect_error_mentioning(R"({
        "dim": 1,
        "omega": 1.0,
        "fourier": [
            {"k": 0, "re": [[0.0]]},
            {"k": 1, "re": [[0.5]]},
            {"k": -1, "re": [[0.4]]}
        ],
        "probe": {"re": [[1.0]]}
    })", "adjoint");
}

TEST_CASE("field errors name the offending field") {
    expect_error_mentioning(R"({"omega": 1.0, "fourier": [], "probe": {}})", "dim");
    expect_error_mentioning(R"({"dim": 2, "fourier": [], "probe": {}})", "omega");
    expect_error_mentioning(R"({"dim": 2, "omega": 1.0, "probe": {}})", "fourier");
    expect_error_mentioning(R"({"dim": 2, "omega": 1.0, "fourier": [],
        "probe": {"re": [[0.0, 1.0], [1.0, 0.0]]}})", "fourier");

    // Wrong matrix shape.
    expect_error_mentioning(R"({
        "dim": 2, "omega": 1.0,
        "fourier": [{"k": 0, "re": [[0.0, 1.0]]}],
        "probe": {"re": [[0.0, 1.0], [1.0, 0.0]]}
    })", "fourier[0]");

    // Duplicate harmonic index.
    expect_error_mentioning(R"({
        "dim": 1, "omega": 1.0,
        "fourier": [{"k": 0, "re": [[0.0]]}, {"k": 0, "re": [[1.0]]}],
        "probe": {"re": [[1.0]]}
    })", "fourier");

    // Probe must be hermitian.
    expect_error_mentioning(R"({
        "dim": 2, "omega": 1.0,
        "fourier": [{"k": 0, "re": [[0.0, 0.0], [0.0, 0.0]]}],
        "probe": {"re": [[0.0, 1.0], [0.0, 0.0]]}
    })", "probe");

    // Unknown symmetry kind.
    expect_error_mentioning(R"({
        "dim": 1, "omega": 1.0,
        "fourier": [{"k": 0, "re": [[0.0]]}],
        "probe": {"re": [[1.0]]},
        "symmetries": [{"kind": "mirror", "operator": {"re": [[1.0]]},
                        "t_shift_over_tau": 0.0}]
    })", "kind");

    // Label list of the wrong length.
    expect_error_mentioning(R"({
        "dim": 2, "omega": 1.0,
        "fourier": [{"k": 0, "re": [[0.0, 0.0], [0.0, 0.0]]}],
        "probe": {"re": [[0.0, 1.0], [1.0, 0.0]]},
        "labels": ["only-one"]
    })", "labels");

    // alpha_v outside {-1, +1}.
    expect_error_mentioning(R"({
        "dim": 1, "omega": 1.0,
        "fourier": [{"k": 0, "re": [[0.0]]}],
        "probe": {"re": [[1.0]]},
        "symmetries": [{"kind": "trs", "operator": {"re": [[1.0]]},
                        "t_shift_over_tau": 0.0, "alpha_v": 2}]
    })", "alpha_v");
}

TEST_CASE("labels default to column indices") {
    ModelBundle m = load_custom_model(R"({
        "dim": 3, "omega": 1.0,
        "fourier": [{"k": 0, "re": [[0,0,0],[0,0,0],[0,0,0]]}],
        "probe": {"re": [[0,1,0],[1,0,1],[0,1,0]], "coupling": 0.5}
    })");
    CHECK(m.basis_labels == std::vector<std::string>{"0", "1", "2"});
    CHECK(m.probe.coupling == 0.5);
    CHECK(m.symmetries.empty());
}

TEST_CASE("broken json and missing files fail loudly") {
    CHECK_THROWS_AS(load_custom_model("{ not json"), ConfigError);
    CHECK_THROWS_AS(load_custom_model_file("/nonexistent/model.json"), ConfigError);

    const std::string path = "/tmp/floqlab_custom_model_test.json";
    {
        std::ofstream out(path);
        out << kTlsDoc;
    }
    ModelBundle m = load_custom_model_file(path);
    CHECK(m.hamiltonian.dim == 2);
}

#pragma once

#include <string>

#include "floqlab/model.hpp"

namespace floqlab {

/// Build a model bundle from a JSON document. Expected shape:
///
///   {
///     "dim": 2,
///     "omega": 1.0,
///     "fourier": [ {"k": 0, "re": [[..]], "im": [[..]]}, ... ],
///     "probe": {"re": [[..]], "im": [[..]], "coupling": 1.0},
///     "symmetries": [ {"kind": "RS", "operator": {"re": [[..]], "im": [[..]]},
///                      "t_shift_over_tau": 0.5, "n_fold": 2, "alpha_v": 1}, ... ],
///     "labels": ["up", "down"]
///   }
///
/// "im" blocks default to zero when omitted; "symmetries" and "labels" are
/// optional. When only one of the +-k component pair is listed the other is
/// filled in as its adjoint; when both are listed they must be consistent.
ModelBundle load_custom_model(const std::string& json_text);

/// Same, reading the document from a file.
ModelBundle load_custom_model_file(const std::string& path);

} // namespace floqlab

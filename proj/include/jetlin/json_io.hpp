#pragma once

#include <json.hpp>

#include "jetlin/isotropy.hpp"
#include "jetlin/obstruction.hpp"

namespace jetlin {

using json = nlohmann::ordered_json;

/// Exact values as "p/q" strings, doubles as numbers.
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json to_json(const Point& p);
Point point_from_json(const json& j);

/// {"order": k, "base": [x1, x2], "coords": [{"i": 0, "sigma": [r1, r2], "value": "p/q"}, ...]}
json to_json(const JetPoint& theta);
/// Missing coordinates default to 0.
JetPoint jet_from_json(const json& j);

json to_json(const Section& s);
/// {"u0": "<expr>", ...} in x1, x2 (x, y accepted); missing entries are 0.
Section section_from_json(const json& j);

/// Same layout as a jet, with i in {1, 2}.
json to_json(const VectorFieldJet& X);
VectorFieldJet field_from_json(const json& j);
json to_json(const PointTransform& f);
json to_json(const Subspace& g);
json to_json(const Matrix& m);
json to_json(const SpencerComplex& c);
json to_json(const ObstructionValue& v);
json to_json(const ZeroVerdict& v);
/// {"F1", "F2", "verdict", "witness", "method", "samples", "epsilon", ...}
json to_json(const Verdict& v);

}  // namespace jetlin

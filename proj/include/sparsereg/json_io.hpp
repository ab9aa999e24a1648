#pragma once

#include <json.hpp>

#include "sparsereg/augment.hpp"
#include "sparsereg/gamma.hpp"
#include "sparsereg/lasso.hpp"
#include "sparsereg/matrix.hpp"
#include "sparsereg/verify.hpp"

namespace sparsereg {

// JSON views of the report types. Keys are emitted in sorted order and
// doubles in shortest round-trip form, so identical values serialize to
// identical bytes. SuiteReport's runtime is deliberately not serialized.

nlohmann::json to_json(const IndexSet& set);
nlohmann::json to_json(const Eigen::VectorXd& v);
nlohmann::json to_json(const LassoFit& fit);
nlohmann::json to_json(const DirectionCertificate& cert);
nlohmann::json to_json(const GammaEstimate& estimate);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const AugmentedFit& fit);
nlohmann::json to_json(const SuiteReport& report);

}  // namespace sparsereg

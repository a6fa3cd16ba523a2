#pragma once

#include <json.hpp>

#include "dgk/barcobar.hpp"

namespace dgk {

using nlohmann::json;

/* rationals and residues travel as strings ("p/q", "a") */
json scalar_json(const Scalar& s);
json svec_json(const SVec& v);
json matrix_json(const SparseMatrix& m);
json verdict_json(const std::string& property, const Verdict& v);
json validation_json(const ValidationReport& rep);
json cohomology_json(const GradedAlgebra& g, const CohomologyAlgebra& h);
json resolution_json(const SemifreeResolution& r);
json tor_json(const TorTable& t);
json ext_json(const ExtAlgebra& e);
json filtered_graded_json(const FilteredGraded& g);
json bar_json(const BarCoalgebra& bar);
json roundtrip_json(const RoundtripReport& r);
json pipeline_json(const LocalPipelineReport& r);
json adjunction_json(const AdjunctionReport& r);

/* local algebra loader: either a presentation file (flattened) or a direct
   structure-constant table {"field", "basis", "table"} */
FinAlgebra fin_algebra_from_json_text(const std::string& text,
                                      std::optional<Field> field_override);

} // namespace dgk

// JSON views of the report types. Key order is fixed (ordered_json) so that
// identical inputs serialize to byte-identical documents.
#pragma once

#include <json.hpp>

#include "spherelab/arithmetic.hpp"
#include "spherelab/averaging.hpp"
#include "spherelab/multipliers.hpp"

namespace spherelab {

using Json = nlohmann::ordered_json;

inline Json to_json(const arithmetic::GaussBoundReport& r) {
    return Json{{"type", "gauss-bound"},
                {"n", r.n},
                {"qmax", r.qmax},
                {"samplesPerPair", r.samplesPerPair},
                {"seed", r.seed},
                {"maxNormalized", r.maxNormalized},
                {"argQ", r.argQ},
                {"argA", r.argA},
                {"argAvec", r.argAvec}};
}

inline Json to_json(const arithmetic::ZeroCountReport& r) {
    return Json{{"type", "zero-count"},
                {"Q", r.Q},
                {"n", r.n},
                {"count", r.count.str()},
                {"normalizedNum", r.num.str()},
                {"normalizedDen", r.den.str()},
                {"normalized", r.normalized()}};
}

inline Json to_json(const multipliers::DecompositionReport& r) {
    Json samples = Json::array();
    for (const auto& [xi, res] : r.samples)
        samples.push_back(Json{{"xi", xi.xi}, {"residual", res}});
    return Json{{"type", "decomposition"},
                {"l", r.l},
                {"j", r.j},
                {"seed", r.seed},
                {"maxResidual", r.maxResidual},
                {"samples", samples}};
}

inline Json to_json(const multipliers::DecayFitReport& r) {
    Json pairs = Json::array();
    for (const auto& e : r.pairs)
        pairs.push_back(Json{{"lambda", e.lambda},
                             {"truncation", e.truncation},
                             {"supResidual", e.supResidual},
                             {"excluded", e.excluded}});
    return Json{{"type", "decay-fit"},
                {"fittedDelta", r.fittedDelta},
                {"anyExcluded", r.anyExcluded},
                {"pairs", pairs}};
}

inline Json to_json(const averaging::OpNormReport& r) {
    Json per = Json::array();
    for (const auto& [idx, ratio] : r.perFunction)
        per.push_back(Json{{"item", idx}, {"ratio", ratio}});
    return Json{{"type", "op-norm"},
                {"p", r.p},
                {"n", r.n},
                {"seed", r.seed},
                {"lambdas", r.lambdas},
                {"maxRatio", r.maxRatio},
                {"perFunction", per}};
}

}  // namespace spherelab

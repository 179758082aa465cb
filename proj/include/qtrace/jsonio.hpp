#pragma once

#include "qtrace/mutation.hpp"
#include "qtrace/network.hpp"
#include "qtrace/torus.hpp"

#include <json.hpp>

#include <string>

namespace qtrace {

using json = nlohmann::json;

/// ScalarLaurent <-> list of [u-exponent, decimal-integer-string] pairs.
json laurent_to_json(const Laurent& c);
Laurent laurent_from_json(const json& j);

/// Torus element <-> {"terms": [{"exponents": {vertex: int, ...}, "coeff": ...}]}
json element_to_json(const TorusElement& e);
TorusElement element_from_json(const json& j, std::shared_ptr<const Seed> seed);

/// Seed -> {"vertices": [...], "mutable": [...], "twoQ": row-major ints}
json seed_to_json(const Seed& s);

/// Surface -> {"faces": [...], "edges": [...], "gluing": [...]}
json surface_to_json(const TriSurface& s);

json report_to_json(const VerificationReport& rep);

/// Gamma_lambda with weight labels 1 and 1/2.
std::string lattice_dot(const Lattice& lat);

/// Network with alpha/beta/gamma port labels (from the trace context when
/// given: sources a1.., sinks b1.., internal crossings g1..).
std::string network_dot(const Network& net, const TraceContext* ctx = nullptr);

}  // namespace qtrace

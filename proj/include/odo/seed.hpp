#pragma once

#include "odo/ontology.hpp"

namespace odo {

/// The bundled orbital-debris schema: debris types, spacecraft, sensors,
/// orbits and their Keplerian parameters, tracking/mitigation processes,
/// collision and explosion events, and the relations connecting them.
const Schema& seed_schema();

} // namespace odo

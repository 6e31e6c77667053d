#include "odo/seed.hpp"

namespace odo {

namespace {

void cat(Schema& s, const char* id, std::initializer_list<const char*> parents,
         const char* definition = "") {
    CategoryDef def;
    def.id = id;
    def.nl_definition = definition;
    for (const char* p : parents) def.parents.insert(p);
    s = add_category(s, std::move(def));
}

struct RelSpec {
    const char* id;
    int arity;
    const char* domain;
    RangeSpec range;
    bool transitive = false;
    bool symmetric = false;
    bool functional = false;
    const char* inverse = nullptr;
};

void rel(Schema& s, const RelSpec& spec) {
    RelationDef def;
    def.id = spec.id;
    def.arity = spec.arity;
    def.domain = spec.domain;
    def.range = spec.range;
    def.transitive = spec.transitive;
    def.symmetric = spec.symmetric;
    def.functional = spec.functional;
    if (spec.inverse) def.inverse_of = spec.inverse;
    s = add_relation(s, std::move(def));
}

Schema build_seed() {
    Schema s;

    // upper level
    cat(s, "Entity", {});
    cat(s, "Physical Object", {"Entity"},
        "A spatio-temporally localized object with material properties.");
    cat(s, "Process", {"Entity"}, "An occurrence that unfolds over time.");
    cat(s, "Event", {"Entity"}, "An occurrence treated as happening at a time.");
    cat(s, "Information Object", {"Entity"},
        "A data-bearing artifact such as a record, format instance, or measurement.");

    // astronomy
    cat(s, "Celestial Body", {"Physical Object"}, "A naturally occurring body in space.");
    cat(s, "Planet", {"Celestial Body"}, "A planetary body orbiting a star.");

    // spacecraft and sensors
    cat(s, "Spacecraft", {"Physical Object"}, "A human-made vehicle designed to operate in space.");
    cat(s, "Satellite", {"Spacecraft"}, "A spacecraft placed into orbit around a body.");
    cat(s, "Communications Satellite", {"Satellite"},
        "A satellite whose mission is relaying communications.");
    cat(s, "Ground-based Sensor", {"Physical Object"},
        "A ground installation (radar or optical) observing the orbital environment.");

    // debris taxonomy
    cat(s, "Debris", {"Physical Object"}, "A human-made object that is no longer usable.");
    cat(s, "Space Debris", {"Debris"}, "Unusable human-made objects in space.");
    cat(s, "Orbital Debris", {"Space Debris"},
        "Unusable human-made objects in orbit around Earth.");
    cat(s, "Non-functional Spacecraft", {"Orbital Debris", "Spacecraft"},
        "A spacecraft that has ceased to operate but remains in orbit.");
    cat(s, "Rocket Body", {"Orbital Debris"},
        "A spent launch-vehicle stage or casing left in orbit.");
    cat(s, "Mission-related Debris", {"Orbital Debris"},
        "Objects dispensed, separated, or released as part of a planned mission.");
    cat(s, "Fragmentation Debris", {"Orbital Debris"},
        "Debris produced by satellite breakup, collision, or anomalous events.");
    cat(s, "Orbital Debris Fragment", {"Fragmentation Debris"},
        "An individual fragment of a larger parent object.");

    // orbits and their descriptions
    cat(s, "Orbit", {"Entity"}, "The recurring path of an object around a body.");
    cat(s, "Keplerian Orbital Parameter", {"Information Object"},
        "One of the classical parameters characterizing an orbit at an epoch.");
    cat(s, "Inclination", {"Keplerian Orbital Parameter"},
        "Angle between the orbital plane and the reference plane.");
    cat(s, "Eccentricity", {"Keplerian Orbital Parameter"},
        "Shape parameter of the orbit; 0 is circular.");
    cat(s, "Right Ascension of the Ascending Node", {"Keplerian Orbital Parameter"},
        "Angle from the vernal equinox to the ascending node.");
    cat(s, "Argument of Perigee", {"Keplerian Orbital Parameter"},
        "Angle from the ascending node to perigee.");
    cat(s, "Mean Anomaly", {"Keplerian Orbital Parameter"},
        "Angular position of the object averaged over the orbit.");
    cat(s, "Mean Motion", {"Keplerian Orbital Parameter"},
        "Number of revolutions completed per day.");
    cat(s, "Two-line Element Set", {"Information Object"},
        "A two-line fixed-width record encoding the orbital parameters of a space object at an epoch.");
    cat(s, "Ephemeris", {"Information Object"},
        "A table of positions of a space object over time.");
    cat(s, "State Vector", {"Information Object"},
        "Position and velocity of a space object at an instant.");

    // processes and events
    cat(s, "Orbiting Process", {"Process"}, "The ongoing motion of an object along its orbit.");
    cat(s, "Orbital Decay Process", {"Process"},
        "The gradual lowering of an orbit through drag and other perturbations.");
    cat(s, "Debris Tracking Process", {"Process"},
        "Observation and cataloging of debris objects by a sensor network.");
    cat(s, "Orbital Debris Mitigation Process", {"Process"},
        "Measures taken to limit the creation or impact of orbital debris.");
    cat(s, "Satellite Collision Event", {"Event"}, "A collision between orbiting objects.");
    cat(s, "Explosion Event", {"Event"}, "A breakup of an orbiting object by explosion.");

    rel(s, {"has_cause", 2, "Physical Object", RangeSpec::cat("Event")});
    rel(s, {"has_formation_event", 2, "Physical Object", RangeSpec::cat("Event")});
    rel(s, {"was_formed_by", 2, "Physical Object", RangeSpec::cat("Event")});
    rel(s, {"has_debris_source", 2, "Physical Object", RangeSpec::cat("Physical Object")});
    rel(s, {"orbits", 2, "Physical Object", RangeSpec::cat("Planet")});
    rel(s, {"has_orbit", 2, "Physical Object", RangeSpec::cat("Orbit"), false, false, true});
    rel(s, {"is_described_by", 2, "Orbit", RangeSpec::cat("Two-line Element Set")});
    rel(s, {"has_ephemerides", 2, "Physical Object", RangeSpec::cat("Ephemeris")});
    rel(s, {"has_cross_section", 2, "Physical Object", RangeSpec::quantity()});
    rel(s, {"has_shape", 2, "Physical Object", RangeSpec::text()});
    rel(s, {"has_diameter", 3, "Physical Object", RangeSpec::quantity(), false, false, true});
    rel(s, {"has_altitude", 2, "Physical Object", RangeSpec::quantity()});
    rel(s, {"has_label", 2, "Entity", RangeSpec::text()});
    rel(s, {"has_name", 2, "Entity", RangeSpec::text()});
    rel(s, {"has_international_designator", 2, "Physical Object", RangeSpec::text(), false, false,
            true});
    rel(s, {"has_catalog_number", 2, "Physical Object", RangeSpec::text()});
    rel(s, {"participates_in", 2, "Physical Object", RangeSpec::cat("Process")});
    rel(s, {"part_of", 2, "Physical Object", RangeSpec::cat("Physical Object"), true});
    rel(s, {"has_part", 2, "Physical Object", RangeSpec::cat("Physical Object"), true, false,
            false, "part_of"});
    rel(s, {"has_orbital_parameter", 3, "Orbit", RangeSpec::cat("Keplerian Orbital Parameter")});
    rel(s, {"has_value", 2, "Entity", RangeSpec::quantity()});

    return s;
}

} // namespace

const Schema& seed_schema() {
    static const Schema seed = build_seed();
    return seed;
}

} // namespace odo

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "odo/error.hpp"
#include "odo/ontology.hpp"
#include "odo/schema_io.hpp"
#include "odo/seed.hpp"
#include "oracles.hpp"

using namespace odo;

namespace {

Schema tiny_base() {
    Schema s;
    s = add_category(s, {"Debris", "", {}, true});
    s = add_category(s, {"Space Debris", "debris in space", {"Debris"}, false});
    return s;
}

std::set<std::string> lines_of(const std::string& text) {
    std::set<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.insert(line);
    return lines;
}

} // namespace

TEST_CASE("add_category builds the subsumption chain") {
    Schema s = tiny_base();
    s = add_category(s, {"Orbital Debris", "", {"Space Debris"}, true});
    CHECK(is_subclass_of(s, "Orbital Debris", "Space Debris"));
    CHECK(is_subclass_of(s, "Orbital Debris", "Debris"));
    CHECK_FALSE(is_subclass_of(s, "Debris", "Orbital Debris"));
}

TEST_CASE("add_category accepts roots and rejects duplicates and dangling parents") {
    Schema s;
    s = add_category(s, {"Entity", "", {}, true});
    CHECK(s.has_category("Entity"));
    CHECK_THROWS_AS(add_category(s, {"Entity", "", {}, true}), Error);
    try {
        add_category(s, {"Entity", "", {}, true});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateTerm);
    }
    try {
        add_category(s, {"X", "", {"Nope"}, true});
        FAIL("expected UnknownParent");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownParent);
    }
}

TEST_CASE("term names must obey the exchange grammar") {
    Schema s;
    CHECK_THROWS_AS(add_category(s, {"", "", {}, true}), Error);
    CHECK_THROWS_AS(add_category(s, {" padded ", "", {}, true}), Error);
    CHECK_THROWS_AS(add_category(s, {"a,b", "", {}, true}), Error);
    CHECK_THROWS_AS(add_category(s, {"a(b)", "", {}, true}), Error);
    s = add_category(s, {"Orbital Debris Fragment", "", {}, true}); // spaces are fine
    CHECK(s.has_category("Orbital Debris Fragment"));
}

TEST_CASE("add_relation resolves domain, range and inverse") {
    Schema s;
    s = add_category(s, {"Physical Object", "", {}, true});
    s = add_category(s, {"Planet", "", {"Physical Object"}, false});
    s = add_relation(s, {"orbits", 2, "Physical Object", RangeSpec::cat("Planet")});
    CHECK(s.has_relation("orbits"));

    try {
        add_relation(s, {"has_ephemerides", 2, "Foo", RangeSpec::text()});
        FAIL("expected UnknownDomain");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownDomain);
    }
    try {
        add_relation(s, {"points_at", 2, "Planet", RangeSpec::cat("Foo")});
        FAIL("expected UnknownRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownRange);
    }
    CHECK_THROWS_AS(add_relation(s, {"orbits", 2, "Planet", RangeSpec::cat("Planet")}), Error);

    // ternary relation: the third slot is a time reference
    s = add_relation(s, {"has_altitude", 3, "Physical Object", RangeSpec::quantity()});
    CHECK(s.relation("has_altitude")->arity == 3);
}

TEST_CASE("inverse declarations are recorded symmetrically and checked") {
    Schema s;
    s = add_category(s, {"Physical Object", "", {}, true});
    s = add_relation(s, {"part_of", 2, "Physical Object", RangeSpec::cat("Physical Object"), true});
    RelationDef has_part{"has_part", 2, "Physical Object", RangeSpec::cat("Physical Object"),
                         true, false, false, "part_of"};
    s = add_relation(s, has_part);
    CHECK(s.relation("part_of")->inverse_of == "has_part");

    // a relation whose inverse's domain does not equal this range
    Schema t;
    t = add_category(t, {"A", "", {}, true});
    t = add_category(t, {"B", "", {}, true});
    t = add_relation(t, {"r", 2, "A", RangeSpec::cat("B")});
    try {
        add_relation(t, {"q", 2, "A", RangeSpec::cat("B"), false, false, false, "r"});
        FAIL("expected InverseMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InverseMismatch);
    }
}

TEST_CASE("is_subclass_of is reflexive and rejects unknown terms") {
    Schema s = tiny_base();
    CHECK(is_subclass_of(s, "Debris", "Debris"));
    CHECK_THROWS_AS(is_subclass_of(s, "Debris", "Nope"), Error);
    CHECK_THROWS_AS(ancestors(s, "Nope"), Error);
}

TEST_CASE("ancestors includes the term itself; root maps to itself") {
    const Schema& seed = seed_schema();
    auto up = ancestors(seed, "Orbital Debris");
    CHECK(up.count("Orbital Debris"));
    CHECK(up.count("Space Debris"));
    CHECK(up.count("Debris"));
    CHECK(ancestors(seed, "Entity") == std::set<std::string>{"Entity"});
}

TEST_CASE("check_schema flags cycles naming the members") {
    Schema s;
    s.categories["A"] = {"A", "", {"B"}, true};
    s.categories["B"] = {"B", "", {"A"}, true};
    auto defects = check_schema(s);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].rule == "CycleDetected");
    CHECK(defects[0].detail.find("A") != std::string::npos);
    CHECK(defects[0].detail.find("B") != std::string::npos);
}

TEST_CASE("check_schema flags inverse and primitive-flag mismatches") {
    Schema s;
    s.categories["A"] = {"A", "", {}, true};
    s.categories["B"] = {"B", "", {}, true};
    s.relations["r"] = {"r", 2, "A", RangeSpec::cat("B"), false, false, false, "q"};
    s.relations["q"] = {"q", 2, "A", RangeSpec::cat("B"), false, false, false, "r"};
    auto defects = check_schema(s);
    REQUIRE(!defects.empty());
    CHECK(defects[0].rule == "InverseMismatch");

    Schema t;
    t.categories["A"] = {"A", "definition text", {}, true}; // primitive with a definition
    auto flag_defects = check_schema(t);
    REQUIRE(flag_defects.size() == 1);
    CHECK(flag_defects[0].rule == "PrimitiveFlagMismatch");
}

TEST_CASE("check_schema flags transitive relations with incompatible ranges") {
    Schema s;
    s.categories["Widget"] = {"Widget", "", {}, true};
    s.categories["Crate"] = {"Crate", "", {}, true}; // unrelated to Widget
    s.relations["stored_in"] = {"stored_in", 2, "Widget", RangeSpec::cat("Crate"), true};
    auto defects = check_schema(s);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].rule == "TransitiveRangeMismatch");

    s.relations["count_of"] = {"count_of", 2, "Widget", RangeSpec::quantity(), true};
    defects = check_schema(s);
    CHECK(defects.size() == 2); // quantity range cannot chain either
}

TEST_CASE("check_schema flags dangling references") {
    Schema s;
    s.categories["A"] = {"A", "", {"Ghost"}, true};
    s.relations["r"] = {"r", 2, "Missing", RangeSpec::cat("AlsoMissing")};
    auto defects = check_schema(s);
    std::set<std::string> rules;
    for (const auto& d : defects) rules.insert(d.rule);
    CHECK(rules.count("UnknownParent"));
    CHECK(rules.count("UnknownDomain"));
    CHECK(rules.count("UnknownRange"));
}

TEST_CASE("check_schema is insertion-order independent") {
    Schema a, b;
    a.categories["X"] = {"X", "", {"Y"}, true};
    a.categories["Y"] = {"Y", "", {"X"}, true};
    a.relations["r"] = {"r", 2, "X", RangeSpec::cat("Gone")};
    b.relations["r"] = {"r", 2, "X", RangeSpec::cat("Gone")};
    b.categories["Y"] = {"Y", "", {"X"}, true};
    b.categories["X"] = {"X", "", {"Y"}, true};
    CHECK(check_schema(a) == check_schema(b));
}

TEST_CASE("seed schema carries the required vocabulary and passes the checker") {
    const Schema& seed = seed_schema();
    for (const char* name :
         {"Debris", "Space Debris", "Orbital Debris", "Orbital Debris Fragment",
          "Non-functional Spacecraft", "Rocket Body", "Mission-related Debris",
          "Fragmentation Debris", "Spacecraft", "Satellite", "Communications Satellite",
          "Ground-based Sensor", "Planet", "Orbit", "Orbiting Process", "Satellite Collision Event",
          "Explosion Event", "Orbital Decay Process", "Debris Tracking Process",
          "Orbital Debris Mitigation Process", "Two-line Element Set", "Ephemeris", "Inclination",
          "Eccentricity", "Right Ascension of the Ascending Node", "Argument of Perigee",
          "Mean Anomaly", "Mean Motion", "State Vector"})
        CHECK_MESSAGE(seed.has_category(name), name);
    for (const char* name :
         {"has_cause", "has_formation_event", "has_debris_source", "orbits", "has_orbit",
          "is_described_by", "has_ephemerides", "has_cross_section", "has_shape", "has_diameter",
          "has_altitude", "has_label", "has_name", "has_international_designator",
          "participates_in", "part_of", "has_orbital_parameter"})
        CHECK_MESSAGE(seed.has_relation(name), name);

    CHECK(is_subclass_of(seed, "Fragmentation Debris", "Orbital Debris"));
    CHECK(seed.relation("part_of")->transitive);
    CHECK(check_schema(seed).empty());
}

TEST_CASE("adding a term never mutates prior content") {
    Schema before = tiny_base();
    Schema after = add_category(before, {"Rocket Body", "spent stage", {"Debris"}, false});
    auto old_lines = lines_of(schema_to_string(before));
    auto new_lines = lines_of(schema_to_string(after));
    for (const auto& line : old_lines) CHECK(new_lines.count(line));
    std::set<std::string> added;
    for (const auto& line : new_lines)
        if (!old_lines.count(line)) added.insert(line);
    REQUIRE(added.size() == 1);
    CHECK(added.begin()->find("Rocket Body") != std::string::npos);
}

TEST_CASE("schema file round-trip preserves the seed exactly") {
    const Schema& seed = seed_schema();
    std::string text = schema_to_string(seed);
    std::istringstream in(text);
    Schema loaded = parse_schema(in);
    CHECK(schemas_identical(seed, loaded));
    CHECK(schema_to_string(loaded) == text);
}

TEST_CASE("the bundled seed file matches the built-in schema") {
    Schema from_file = load_schema_file(ODO_SEED_FILE);
    CHECK(schemas_identical(seed_schema(), from_file));
}

TEST_CASE("schema parser handles comments, forward references and errors") {
    std::istringstream in("# comment line\n"
                          "category: Satellite is_a: Spacecraft\n"
                          "category: Spacecraft def: \"a vehicle for space\" # trailing\n"
                          "relation: has_orbit arity: 2 domain: Spacecraft range: Orbit\n"
                          "category: Orbit\n");
    Schema s = parse_schema(in);
    CHECK(check_schema(s).empty());
    CHECK(s.category("Spacecraft")->nl_definition == "a vehicle for space");
    CHECK(is_subclass_of(s, "Satellite", "Spacecraft"));

    std::istringstream bad("category Satellite\n");
    CHECK_THROWS_AS(parse_schema(bad), Error);
    std::istringstream dup("category: A\ncategory: A\n");
    CHECK_THROWS_AS(parse_schema(dup), Error);
}

TEST_CASE("subsumption agrees with the closure oracle on random DAGs") {
    std::mt19937 rng(4711);
    for (int round = 0; round < 60; ++round) {
        Schema schema = oracles::random_dag_schema(rng, 60);
        oracles::ClosureOracle oracle(schema);
        for (const auto& [a, ignored_a] : schema.categories) {
            (void)ignored_a;
            CHECK(ancestors(schema, a) == oracle.ancestors_of(a));
            for (const auto& [b, ignored_b] : schema.categories) {
                (void)ignored_b;
                CHECK(is_subclass_of(schema, a, b) == oracle.subclass(a, b));
            }
        }
        CHECK(check_schema(schema).empty());
    }
}

TEST_CASE("subsumption is a partial order on valid schemas") {
    std::mt19937 rng(999);
    Schema schema = oracles::random_dag_schema(rng, 40);
    std::vector<std::string> terms;
    for (const auto& [id, def] : schema.categories) {
        (void)def;
        terms.push_back(id);
    }
    for (const auto& a : terms) {
        CHECK(is_subclass_of(schema, a, a)); // reflexive
        for (const auto& b : terms) {
            if (a != b && is_subclass_of(schema, a, b))
                CHECK_FALSE(is_subclass_of(schema, b, a)); // antisymmetric
            for (const auto& c : terms)
                if (is_subclass_of(schema, a, b) && is_subclass_of(schema, b, c))
                    CHECK(is_subclass_of(schema, a, c)); // transitive
        }
    }
}

// Acceptance suite: eight scenario- and property-level criteria, one
// pass/fail line each. Exit status is the number of failed criteria.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "odo/error.hpp"
#include "odo/federation.hpp"
#include "odo/kb_io.hpp"
#include "odo/reason.hpp"
#include "odo/seed.hpp"
#include "odo/tle.hpp"
#include "oracles.hpp"

using namespace odo;

namespace {

struct Checker {
    bool ok = true;
    std::string first_failure;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

KnowledgeBase scenario_kb(bool with_orbit = true) {
    KnowledgeBase kb(seed_schema());
    std::vector<std::string> facts = {
        "is_an_instance_of (1993-036BLP, Orbital Debris Fragment)",
        "is_an_instance_of (coll-IC, Satellite Collision Event)",
        "has_cause (1993-036BLP, coll-IC)",
        "has_formation_event (1993-036BLP, coll-IC)",
        "orbits (1993-036BLP, Earth)",
        "has_altitude (1993-036BLP, 934 km)",
        "has_label (1993-036BLP, \"1993-036BLP\")",
        "has_international_designator (1993-036BLP, \"1993-036BLP\")",
    };
    if (with_orbit) facts.push_back("has_orbit (1993-036BLP, O1)");
    facts.push_back("is_described_by (O1, TLE-1)");
    for (const auto& fact : facts) assert_fact_line(kb, fact);
    return kb;
}

std::vector<std::pair<std::string, std::string>> corpus_lines() {
    std::ifstream in(std::string(ODO_TEST_DATA_DIR) + "/corpus.tle");
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line, line1;
    while (std::getline(in, line)) {
        if (line.rfind("1 ", 0) == 0)
            line1 = line;
        else if (line.rfind("2 ", 0) == 0)
            pairs.push_back({line1, line});
    }
    return pairs;
}

// --- criterion 1: scenario fidelity -----------------------------------------

bool criterion_scenario(Checker& check) {
    KnowledgeBase kb = scenario_kb();

    auto rows = kb.query({.subject = std::string("1993-036BLP"), .predicate = {}, .object = {}, .at = {}});
    std::set<std::string> keys;
    for (const Assertion* a : rows) keys.insert(a->identity_key());

    // everything asserted about the fragment itself
    KnowledgeBase expected_kb(seed_schema());
    const char* expected[] = {
        "is_an_instance_of (1993-036BLP, Orbital Debris Fragment)",
        "has_label (1993-036BLP, \"1993-036BLP\")",
        "has_international_designator (1993-036BLP, \"1993-036BLP\")",
        "orbits (1993-036BLP, Earth)",
        "has_formation_event (1993-036BLP, coll-IC)",
        "has_cause (1993-036BLP, coll-IC)",
        "has_altitude (1993-036BLP, 934 km)",
        "has_orbit (1993-036BLP, O1)",
    };
    std::set<std::string> expected_keys;
    for (const char* fact : expected) {
        assert_fact_line(expected_kb, fact);
        expected_keys.insert(expected_kb.assertions().back().identity_key());
    }
    check.require(keys == expected_keys, "query(1993-036BLP, ?, ?) row set");
    check.require(rows.size() == 8, "query row count");

    check.require(kb.instances_of("Debris", InstanceMode::Inferred).count("1993-036BLP") == 1,
                  "instances_of(Debris, inferred) contains the fragment");
    check.require(validate(kb).empty(), "validate() returns zero violations");
    return check.ok;
}

// --- criterion 2: axiom A1 and the skolem repair -----------------------------

bool criterion_a1(Checker& check) {
    KnowledgeBase kb = scenario_kb(/*with_orbit=*/false);
    auto violations = validate(kb);
    check.require(violations.size() == 1, "exactly one violation");
    if (!violations.empty()) {
        check.require(violations[0].axiom == "A1-debris-has-orbit", "violation is A1");
        check.require(violations[0].subject == "1993-036BLP", "violation names the fragment");
    }

    KnowledgeBase repaired = materialize_existentials(kb);
    check.require(validate(repaired).empty(), "re-validation after the repair is clean");
    check.require(repaired.has_individual("1993-036BLP#orbit"), "skolem orbit id");

    // deterministic across runs: rebuild from scratch and compare
    KnowledgeBase again = materialize_existentials(scenario_kb(false));
    check.require(again.has_individual("1993-036BLP#orbit"), "skolem id reproducible");
    check.require(again.same_fact_set(repaired), "repair reproducible");
    return check.ok;
}

// --- criterion 3: taxonomy oracle --------------------------------------------

bool criterion_taxonomy(Checker& check) {
    std::mt19937 rng(20090210);
    for (int round = 0; round < 200 && check.ok; ++round) {
        Schema schema = oracles::random_dag_schema(rng, 60);
        oracles::ClosureOracle oracle(schema);
        std::vector<std::string> terms;
        for (const auto& [id, def] : schema.categories) {
            (void)def;
            terms.push_back(id);
        }
        for (const auto& a : terms) {
            check.require(is_subclass_of(schema, a, a), "reflexivity");
            for (const auto& b : terms) {
                bool lib = is_subclass_of(schema, a, b);
                check.require(lib == oracle.subclass(a, b), "closure agreement");
                if (a != b && lib)
                    check.require(!is_subclass_of(schema, b, a), "antisymmetry");
            }
            if (!check.ok) break;
        }
        // transitivity on the verified relation, via the oracle's dense matrix
        const std::size_t n = oracle.names.size();
        for (std::size_t i = 0; i < n && check.ok; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!oracle.reach[i][j]) continue;
                for (std::size_t k = 0; k < n; ++k)
                    if (oracle.reach[j][k] && !oracle.reach[i][k]) {
                        check.require(false, "transitivity");
                        break;
                    }
            }

        // inferred instance sets against the same oracle
        KnowledgeBase kb(schema);
        std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
        for (int i = 0; i < 12; ++i)
            kb.assert_instance("x" + std::to_string(i % 5), terms[pick(rng)]);
        for (const auto& category : terms) {
            std::set<std::string> expected;
            for (const auto& down : oracle.descendants_of(category))
                for (const auto& x : kb.instances_of(down, InstanceMode::Direct))
                    expected.insert(x);
            check.require(kb.instances_of(category, InstanceMode::Inferred) == expected,
                          "instances_of(inferred) agreement");
        }
    }
    return check.ok;
}

// --- criterion 4: TLE round-trip ---------------------------------------------

bool criterion_tle(Checker& check) {
    auto pairs = corpus_lines();
    check.require(pairs.size() >= 100, "corpus holds at least 100 pairs");
    for (const auto& [line1, line2] : pairs) {
        check.require(checksum(line1) == line1[68] - '0', "line 1 checksum matches column 69");
        check.require(checksum(line2) == line2[68] - '0', "line 2 checksum matches column 69");
        TLERecord rec = parse_tle(line1, line2);
        auto [out1, out2] = serialize_tle(rec);
        check.require(out1 == line1 && out2 == line2, "byte-identical round trip");
        if (!check.ok) break;
    }

    // exhaustive single-character digit mutations over the whole corpus
    for (std::size_t p = 0; p < pairs.size() && check.ok; ++p) {
        for (int which = 0; which < 2; ++which) {
            const std::string& target = which == 0 ? pairs[p].first : pairs[p].second;
            for (std::size_t pos = 0; pos < 69; ++pos) {
                if (!std::isdigit(static_cast<unsigned char>(target[pos]))) continue;
                for (char digit = '0'; digit <= '9'; ++digit) {
                    if (digit == target[pos]) continue;
                    std::string mutated = target;
                    mutated[pos] = digit;
                    bool detected = false;
                    try {
                        if (which == 0)
                            parse_tle(mutated, pairs[p].second);
                        else
                            parse_tle(pairs[p].first, mutated);
                    } catch (const Error&) {
                        detected = true;
                    }
                    check.require(detected, "digit mutation detected");
                    if (!check.ok) return false;
                }
            }
        }
    }

    // implied-decimal rules, exact
    const std::string l1 = "1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927";
    const std::string l2 = "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537";
    TLERecord rec = parse_tle(l1, l2);
    check.require(rec.eccentricity == 0.0006703, "eccentricity implied decimal");
    TLERecord bstar_case = rec;
    bstar_case.bstar = 0.34060e-4;
    auto [b1, b2] = serialize_tle(bstar_case);
    check.require(b1.substr(53, 8) == " 34060-4", "bstar implied-exponent serialization");
    check.require(parse_tle(b1, b2).bstar == 0.3406e-4, "bstar implied decimal");
    return check.ok;
}

// --- criterion 5: derived elements -------------------------------------------

bool criterion_elements(Checker& check) {
    TLERecord rec;
    rec.catalog_number = 25544;
    rec.intl_designator = "98067A";
    rec.epoch_year = 9;
    rec.epoch_day = 41.0;
    rec.eccentricity = 0.0;
    rec.inclination = 86.4;
    rec.mean_motion = oracles::mean_motion_from_sma(7312.137);
    OrbitalElements el = to_elements(rec);
    check.require(std::fabs(el.perigee_altitude - 934.0) < 1e-6, "perigee altitude 934 km");
    check.require(std::fabs(el.apogee_altitude - 934.0) < 1e-6, "apogee altitude 934 km");
    double oracle_mm = oracles::mean_motion_from_sma(el.semi_major_axis);
    check.require(std::fabs(oracle_mm - el.mean_motion) / el.mean_motion < 1e-9,
                  "mean motion agrees with the independent oracle");
    return check.ok;
}

// --- criterion 6: annotation pipeline ----------------------------------------

bool criterion_annotation(Checker& check) {
    auto pairs = corpus_lines();
    for (std::size_t i = 0; i < 25; ++i) {
        KnowledgeBase kb(seed_schema());
        TLERecord rec = parse_tle(pairs[i].first, pairs[i].second);
        std::string orbit = annotate_tle(kb, rec, "object-" + std::to_string(i));
        auto violations = validate(kb);
        check.require(violations.empty(), "no violations after ingest");

        auto parameter_rows = kb.query({.subject = orbit,
                                        .predicate = std::string("has_orbital_parameter"),
                                        .object = {}, .at = {}});
        check.require(parameter_rows.size() == 6, "exactly six parameter facts");
        const std::string epoch = epoch_to_iso(full_epoch_year(rec.epoch_year), rec.epoch_day);
        for (const Assertion* row : parameter_rows)
            check.require(row->at && row->at->text == epoch, "parameter facts carry the epoch");
        if (!check.ok) break;
    }
    return check.ok;
}

// --- criterion 7: merge algebra ----------------------------------------------

bool criterion_merge(Checker& check) {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> object_pick(0, 9), designator_pick(0, 4), coin(0, 1);

    for (int round = 0; round < 12 && check.ok; ++round) {
        std::vector<Catalog> catalogs;
        std::set<std::string> nodes;
        std::map<std::string, std::vector<std::string>> by_key;
        for (int c = 0; c < 3; ++c) {
            Catalog catalog{"src" + std::to_string(c), KnowledgeBase(seed_schema())};
            for (int i = 0; i < 8; ++i) {
                std::string id = "s" + std::to_string(c) + "-o" + std::to_string(object_pick(rng));
                std::string designator = "1993-03" + std::to_string(designator_pick(rng)) + "BLP";
                catalog.kb.assert_relation("has_international_designator", id,
                                           Value::make_text(designator), std::nullopt,
                                           catalog.source_id);
                if (coin(rng))
                    catalog.kb.assert_relation("has_altitude", id,
                                               Value::make_quantity(700 + 10 * object_pick(rng), "km"),
                                               std::nullopt, catalog.source_id);
                if (nodes.insert(id).second) by_key[designator].push_back(id);
                else if (std::find(by_key[designator].begin(), by_key[designator].end(), id) ==
                         by_key[designator].end())
                    by_key[designator].push_back(id);
            }
            catalogs.push_back(std::move(catalog));
        }
        MergePolicy keep_all;

        // clusters equal the union-find oracle (as id sets; ids are global here)
        std::vector<std::pair<std::string, std::string>> matches;
        for (const auto& [key, ids] : by_key)
            for (std::size_t i = 1; i < ids.size(); ++i) matches.push_back({ids[0], ids[i]});
        auto expected_components = oracles::components(nodes, matches);
        std::set<std::set<std::string>> expected_set(expected_components.begin(),
                                                     expected_components.end());
        std::set<std::set<std::string>> actual_set;
        for (const auto& cluster : resolve_identity(catalogs, keep_all)) {
            std::set<std::string> ids;
            for (const auto& member : cluster.members) ids.insert(member.individual);
            actual_set.insert(ids);
        }
        check.require(actual_set == expected_set, "identity clusters match union-find oracle");

        Catalog abc = merge_hub(catalogs, keep_all);
        Catalog cba = merge_hub({catalogs[2], catalogs[1], catalogs[0]}, keep_all);
        Catalog bac = merge_hub({catalogs[1], catalogs[0], catalogs[2]}, keep_all);
        check.require(abc.kb.same_fact_set(cba.kb) && abc.kb.same_fact_set(bac.kb),
                      "merge fact set invariant under permutation");

        Catalog ab = merge_hub({catalogs[0], catalogs[1]}, keep_all);
        Catalog ab_c = merge_hub({ab, catalogs[2]}, keep_all);
        Catalog bc = merge_hub({catalogs[1], catalogs[2]}, keep_all);
        Catalog a_bc = merge_hub({catalogs[0], bc}, keep_all);
        check.require(ab_c.kb.same_fact_set(a_bc.kb) && ab_c.kb.same_fact_set(abc.kb),
                      "keep_all merge associative");
        check.require(merge_hub({abc, abc}, keep_all).kb.same_fact_set(abc.kb),
                      "keep_all merge idempotent");

        // pairwise peer syncs converge to the hub result
        auto [p1, p2] = sync_peer(catalogs[0], catalogs[1], keep_all);
        auto [p3, p4] = sync_peer(p1, catalogs[2], keep_all);
        auto [p5, p6] = sync_peer(p2, p4, keep_all);
        check.require(p5.kb.same_fact_set(abc.kb) && p6.kb.same_fact_set(abc.kb),
                      "pairwise syncs converge to the hub");
        (void)p3;

        // provenance counts: distinct sources per fact
        std::map<std::string, std::set<std::string>> source_sets;
        for (std::size_t c = 0; c < catalogs.size(); ++c) {
            std::map<std::string, std::string> canonical;
            for (const auto& cluster : resolve_identity(catalogs, keep_all))
                for (const auto& member : cluster.members)
                    if (member.source_id == catalogs[c].source_id)
                        canonical[member.individual] = cluster.canonical;
            for (const Assertion& fact : catalogs[c].kb.assertions()) {
                Assertion rewritten = fact;
                rewritten.subject = canonical.at(fact.subject);
                if (!fact.instantiation && fact.object.kind == ValueKind::Symbol)
                    rewritten.object = Value::make_symbol(canonical.at(fact.object.symbol));
                source_sets[rewritten.identity_key()].insert(catalogs[c].source_id);
            }
        }
        for (const Assertion& fact : abc.kb.assertions()) {
            std::set<std::string> sources;
            for (const Provenance& p : fact.provenance) sources.insert(p.source);
            check.require(sources == source_sets.at(fact.identity_key()),
                          "provenance equals source multiplicity");
        }
    }
    return check.ok;
}

// --- criterion 8: exchange-format round-trip ----------------------------------

bool criterion_exchange(Checker& check) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> pick(0, 9), coin(0, 1);
    for (int round = 0; round < 20 && check.ok; ++round) {
        KnowledgeBase kb(seed_schema());
        for (int i = 0; i < 30; ++i) {
            std::string id = "obj-" + std::to_string(pick(rng));
            switch (pick(rng) % 5) {
            case 0: kb.assert_instance(id, coin(rng) ? "Rocket Body" : "Satellite"); break;
            case 1:
                kb.assert_relation("has_label", id,
                                   Value::make_text("label \"x\" #" + std::to_string(pick(rng))));
                break;
            case 2:
                // full-precision magnitudes must survive the round trip exactly
                kb.assert_relation("has_altitude", id,
                                   Value::make_quantity(700.0 + pick(rng) / 7.0, "km"));
                break;
            case 3: {
                std::string param = id + "-p" + std::to_string(pick(rng));
                kb.assert_instance(param, "Inclination");
                kb.assert_relation("has_orbital_parameter", id + "#orbit",
                                   Value::make_symbol(param),
                                   TimeRef{"20" + std::to_string(10 + pick(rng)) +
                                           "-01-01T00:00:00Z"});
                break;
            }
            case 4:
                kb.assert_relation("has_diameter", id, Value::make_quantity(pick(rng) + 0.5, "cm"),
                                   TimeRef{"epoch-" + std::to_string(pick(rng))});
                break;
            }
        }
        std::ostringstream out;
        export_facts(kb, out);
        KnowledgeBase reloaded(seed_schema());
        std::istringstream in(out.str());
        import_facts(reloaded, in, "reload");
        check.require(reloaded.same_fact_set(kb), "logical fact set equal after round trip");

        bool has_ternary = false;
        for (const Assertion& a : kb.assertions())
            if (a.at && !a.instantiation) has_ternary = true;
        check.require(has_ternary, "fixture includes ternary time-indexed facts");
    }
    return check.ok;
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<bool(Checker&)> body;
    };
    const Criterion criteria[] = {
        {1, "scenario fidelity (fragment fact rows, inferred membership, clean validation)",
         criterion_scenario},
        {2, "axiom A1 violation and deterministic skolem repair", criterion_a1},
        {3, "taxonomy agrees with the brute-force closure oracle (200 random schemas)",
         criterion_taxonomy},
        {4, "TLE corpus round-trip, checksums, mutation detection, implied decimals",
         criterion_tle},
        {5, "derived orbital elements at the 934 km circular case", criterion_elements},
        {6, "annotation pipeline yields six epoch-indexed parameters and clean validation",
         criterion_annotation},
        {7, "merge algebra: permutation, associativity, idempotence, sync convergence, provenance",
         criterion_merge},
        {8, "exchange-format round-trip preserves the logical fact set", criterion_exchange},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Checker check;
        bool ok = false;
        std::string error;
        try {
            ok = criterion.body(check);
        } catch (const std::exception& e) {
            error = e.what();
            ok = false;
        }
        if (ok) {
            std::printf("PASS criterion %d: %s\n", criterion.number, criterion.title);
        } else {
            ++failures;
            std::printf("FAIL criterion %d: %s (%s)\n", criterion.number, criterion.title,
                        !error.empty() ? error.c_str() : check.first_failure.c_str());
        }
    }
    return failures;
}

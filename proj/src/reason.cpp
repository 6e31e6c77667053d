#include "odo/reason.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "odo/error.hpp"

namespace odo {

namespace {

constexpr const char* kA1 = "A1-debris-has-orbit";
constexpr const char* kA2 = "A2-orbit-has-parameters";
constexpr const char* kA3 = "A3-domain-range";
constexpr const char* kA4 = "A4-functional-uniqueness";

constexpr const char* kOrbitalDebris = "Orbital Debris";
constexpr const char* kOrbit = "Orbit";
constexpr const char* kHasOrbit = "has_orbit";
constexpr const char* kDescribedBy = "is_described_by";
constexpr const char* kHasParameter = "has_orbital_parameter";
constexpr const char* kTleSet = "Two-line Element Set";

constexpr const char* kParameterCategories[] = {
    "Inclination",
    "Eccentricity",
    "Right Ascension of the Ascending Node",
    "Argument of Perigee",
    "Mean Anomaly",
    "Mean Motion",
};

std::string at_label(const std::optional<TimeRef>& at) { return at ? at->text : "untimed"; }

/// Subjects failing A1, in sorted order. Shared by validate and the repair.
std::vector<std::string> a1_subjects(const KnowledgeBase& kb) {
    std::vector<std::string> failing;
    if (!kb.schema().has_category(kOrbitalDebris)) return failing;
    std::set<std::string> with_orbit;
    for (const Assertion& a : kb.assertions())
        if (!a.instantiation && a.predicate == kHasOrbit) with_orbit.insert(a.subject);
    for (const std::string& subject : kb.instances_of(kOrbitalDebris, InstanceMode::Inferred)) {
        if (kb.is_skolem(subject)) continue;
        if (!with_orbit.count(subject)) failing.push_back(subject);
    }
    return failing;
}

} // namespace

const char* size_class_name(SizeClass size) {
    switch (size) {
    case SizeClass::Small: return "Small";
    case SizeClass::Medium: return "Medium";
    case SizeClass::Large: return "Large";
    }
    return "?";
}

KnowledgeBase materialize_types(const KnowledgeBase& kb) {
    KnowledgeBase out = kb;
    struct Row {
        std::string subject;
        std::string category;
        std::optional<TimeRef> at;
    };
    std::vector<Row> rows;
    for (const Assertion& a : kb.assertions())
        if (a.instantiation) rows.push_back({a.subject, a.object.symbol, a.at});
    for (const Row& row : rows)
        for (const std::string& ancestor : ancestors(kb.schema(), row.category))
            if (ancestor != row.category)
                out.assert_instance(row.subject, ancestor, row.at, "inferred");
    return out;
}

KnowledgeBase close_transitive(const KnowledgeBase& kb) {
    KnowledgeBase out = kb;
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t before = out.assertions().size();
        for (const auto& [name, def] : out.schema().relations) {
            if (!def.transitive && !def.symmetric) continue;
            // bucket individual-valued facts by time reference
            std::map<std::string, std::vector<std::pair<std::string, std::string>>> buckets;
            std::map<std::string, std::optional<TimeRef>> bucket_at;
            for (const Assertion& a : out.assertions()) {
                if (a.instantiation || a.predicate != name) continue;
                if (a.object.kind != ValueKind::Symbol) continue;
                std::string key = a.at ? Value::make_time(a.at->text).identity_key() : "-";
                buckets[key].push_back({a.subject, a.object.symbol});
                bucket_at.emplace(key, a.at);
            }
            for (auto& [key, edges] : buckets) {
                const std::optional<TimeRef>& at = bucket_at[key];
                if (def.symmetric)
                    for (const auto& [from, to] : std::vector(edges))
                        out.assert_relation(name, to, Value::make_symbol(from), at, "inferred");
                if (def.transitive) {
                    std::map<std::string, std::set<std::string>> succ;
                    for (const auto& [from, to] : edges) succ[from].insert(to);
                    // reachability by repeated expansion; graphs are small
                    bool expanding = true;
                    while (expanding) {
                        expanding = false;
                        for (auto& [from, tos] : succ) {
                            std::set<std::string> add;
                            for (const auto& mid : tos) {
                                auto it = succ.find(mid);
                                if (it == succ.end()) continue;
                                for (const auto& to : it->second)
                                    if (!tos.count(to)) add.insert(to);
                            }
                            if (!add.empty()) {
                                tos.insert(add.begin(), add.end());
                                expanding = true;
                            }
                        }
                    }
                    for (const auto& [from, tos] : succ)
                        for (const auto& to : tos)
                            out.assert_relation(name, from, Value::make_symbol(to), at, "inferred");
                }
            }
        }
        grew = out.assertions().size() != before;
    }
    return out;
}

std::vector<AxiomViolation> validate(const KnowledgeBase& kb) {
    std::vector<AxiomViolation> violations;
    const Schema& schema = kb.schema();

    // A1: orbital debris is in orbit
    for (const std::string& subject : a1_subjects(kb))
        violations.push_back({kA1, subject, "missing has_orbit fact for an Orbital Debris instance"});

    // A2: an orbit carries its six parameters or a TLE description
    if (schema.has_category(kOrbit)) {
        std::map<std::string, std::set<std::string>> parameter_cover; // orbit -> categories
        std::map<std::string, bool> described;
        for (const Assertion& a : kb.assertions()) {
            if (a.instantiation) continue;
            if (a.predicate == kHasParameter && a.object.kind == ValueKind::Symbol) {
                std::set<std::string> types = kb.types_of(a.object.symbol, InstanceMode::Inferred);
                for (const char* category : kParameterCategories)
                    if (types.count(category)) parameter_cover[a.subject].insert(category);
            }
            if (a.predicate == kDescribedBy && a.object.kind == ValueKind::Symbol) {
                std::set<std::string> types = kb.types_of(a.object.symbol, InstanceMode::Inferred);
                // an untyped description target gets the benefit of the doubt
                bool ok = types.empty() || !schema.has_category(kTleSet) || types.count(kTleSet);
                if (ok) described[a.subject] = true;
            }
        }
        for (const std::string& orbit : kb.instances_of(kOrbit, InstanceMode::Inferred)) {
            if (kb.is_skolem(orbit)) continue;
            if (described.count(orbit)) continue;
            std::set<std::string> missing;
            for (const char* category : kParameterCategories)
                if (schema.has_category(category) && !parameter_cover[orbit].count(category))
                    missing.insert(category);
            if (missing.empty()) continue;
            std::string detail = "no Two-line Element Set description and missing parameters {";
            bool first = true;
            for (const auto& m : missing) {
                if (!first) detail += ", ";
                detail += m;
                first = false;
            }
            detail += "}";
            violations.push_back({kA2, orbit, detail});
        }
    }

    // A3: strict domain/range audit; only provable mismatches count
    for (const Assertion& a : kb.assertions()) {
        if (a.instantiation) continue;
        const RelationDef* def = schema.relation(a.predicate);
        if (!def) continue; // audit() reports dangling predicates
        std::set<std::string> subject_types = kb.types_of(a.subject, InstanceMode::Inferred);
        if (!subject_types.empty() && !subject_types.count(def->domain))
            violations.push_back({kA3, a.subject,
                                  a.predicate + ": subject is typed but not under domain '" +
                                      def->domain + "'"});
        if (def->range.kind == RangeKind::Category && a.object.kind == ValueKind::Symbol) {
            std::set<std::string> object_types = kb.types_of(a.object.symbol, InstanceMode::Inferred);
            if (!object_types.empty() && !object_types.count(def->range.category))
                violations.push_back({kA3, a.subject,
                                      a.predicate + ": object '" + a.object.symbol +
                                          "' is typed but not under range '" +
                                          def->range.category + "'"});
        }
    }

    // A4: functional relations hold one object per subject per time
    {
        std::map<std::string, std::vector<const Assertion*>> groups;
        for (const Assertion& a : kb.assertions()) {
            if (a.instantiation) continue;
            const RelationDef* def = schema.relation(a.predicate);
            if (!def || !def->functional) continue;
            std::string key = a.predicate + '\x1f' + a.subject + '\x1f' +
                              (a.at ? Value::make_time(a.at->text).identity_key() : "-");
            groups[key].push_back(&a);
        }
        for (const auto& [key, facts] : groups) {
            (void)key;
            if (facts.size() < 2) continue;
            std::string detail = facts.front()->predicate + " has " +
                                 std::to_string(facts.size()) + " objects at " +
                                 at_label(facts.front()->at) + ": ";
            std::set<std::string> rendered;
            for (const Assertion* a : facts) rendered.insert(a->object.render());
            bool first = true;
            for (const auto& r : rendered) {
                if (!first) detail += ", ";
                detail += r;
                first = false;
            }
            violations.push_back({kA4, facts.front()->subject, detail});
        }
    }

    std::sort(violations.begin(), violations.end());
    violations.erase(std::unique(violations.begin(), violations.end()), violations.end());
    return violations;
}

KnowledgeBase materialize_existentials(const KnowledgeBase& kb) {
    KnowledgeBase out = kb;
    if (!out.schema().has_relation(kHasOrbit)) return out;
    const bool strict = out.strict_mode();
    out.set_strict_mode(false);
    for (const std::string& subject : a1_subjects(kb)) {
        const std::string orbit = subject + "#orbit";
        out.ensure_individual(orbit);
        out.mark_skolem(orbit);
        if (out.schema().has_category(kOrbit)) out.assert_instance(orbit, kOrbit, std::nullopt, "skolem");
        out.assert_relation(kHasOrbit, subject, Value::make_symbol(orbit), std::nullopt, "skolem");
    }
    out.set_strict_mode(strict);
    return out;
}

std::optional<SizeClass> classify_size(const KnowledgeBase& kb, const std::string& subject) {
    if (!kb.has_individual(subject))
        throw Error(ErrorCode::UnknownIndividual, "no individual '" + subject + "'");
    const Assertion* best = nullptr;
    std::uint64_t best_seq = 0;
    for (const Assertion& a : kb.assertions()) {
        if (a.instantiation || a.predicate != "has_diameter" || a.subject != subject) continue;
        if (a.object.kind != ValueKind::QuantityVal) continue;
        if (unit_family(a.object.quantity.unit) != UnitFamily::Length) continue;
        std::uint64_t seq = a.provenance.front().sequence;
        if (!best) {
            best = &a;
            best_seq = seq;
            continue;
        }
        bool later;
        if (a.at && best->at)
            later = best->at->before(*a.at) || (*a.at == *best->at && seq > best_seq);
        else if (a.at.has_value() != best->at.has_value())
            later = a.at.has_value(); // untimed facts count as earliest
        else
            later = seq > best_seq;
        if (later) {
            best = &a;
            best_seq = seq;
        }
    }
    if (!best) return std::nullopt;
    double meters = normalized_magnitude(best->object.quantity.magnitude, best->object.quantity.unit);
    double cm = meters * 100.0;
    if (cm < 1.0) return SizeClass::Small;
    if (cm <= 10.0) return SizeClass::Medium;
    return SizeClass::Large;
}

void write_violations_tsv(const std::vector<AxiomViolation>& violations, std::ostream& out) {
    for (const AxiomViolation& v : violations)
        out << v.axiom << '\t' << v.subject << '\t' << v.detail << '\n';
}

} // namespace odo

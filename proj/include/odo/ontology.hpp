#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace odo {

// Names of the structural relations. They exist in every schema, are not
// user-redefinable, and do not appear in Schema::relations.
inline constexpr const char* kInstanceOf = "is_an_instance_of";
inline constexpr const char* kIsA = "Is a";

/// Term names are bare case-sensitive strings, unique per kind. Commas,
/// parentheses, quotes-at-start and control characters are reserved by the
/// exchange grammar.
bool is_valid_term_id(const std::string& name);
void require_valid_term_id(const std::string& name);

struct CategoryDef {
    std::string id;
    std::string nl_definition; // empty iff primitive
    std::set<std::string> parents;
    bool primitive = false;
};

enum class RangeKind { Category, Quantity, Text, Time };

struct RangeSpec {
    RangeKind kind = RangeKind::Category;
    std::string category; // set iff kind == Category

    static RangeSpec cat(std::string name) { return {RangeKind::Category, std::move(name)}; }
    static RangeSpec quantity() { return {RangeKind::Quantity, {}}; }
    static RangeSpec text() { return {RangeKind::Text, {}}; }
    static RangeSpec time() { return {RangeKind::Time, {}}; }

    bool operator==(const RangeSpec&) const = default;
};

struct RelationDef {
    std::string id;
    int arity = 2; // 3 adds a trailing time slot
    std::string domain;
    RangeSpec range;
    bool transitive = false;
    bool symmetric = false;
    bool functional = false;
    std::optional<std::string> inverse_of;
};

struct Schema {
    std::map<std::string, CategoryDef> categories;
    std::map<std::string, RelationDef> relations;

    bool has_category(const std::string& id) const { return categories.count(id) > 0; }
    bool has_relation(const std::string& id) const { return relations.count(id) > 0; }
    const CategoryDef* category(const std::string& id) const;
    const RelationDef* relation(const std::string& id) const;
};

bool is_builtin_relation(const std::string& name);

struct SchemaDefect {
    std::string rule; // e.g. "CycleDetected", "InverseMismatch"
    std::string term;
    std::string detail;

    auto operator<=>(const SchemaDefect&) const = default;
};

// Schema values are immutable after construction; mutators return new values.
Schema add_category(const Schema& schema, CategoryDef def);
Schema add_relation(const Schema& schema, RelationDef def);

/// Reflexive-transitive reachability over parent edges.
bool is_subclass_of(const Schema& schema, const std::string& sub, const std::string& super);

/// All superclasses of c, including c itself.
std::set<std::string> ancestors(const Schema& schema, const std::string& c);

/// Strict descendants plus c itself.
std::set<std::string> descendants(const Schema& schema, const std::string& c);

/// Full consistency audit. Defects are data, not failures; the list is
/// deterministic and independent of insertion order.
std::vector<SchemaDefect> check_schema(const Schema& schema);

bool schemas_identical(const Schema& a, const Schema& b);

} // namespace odo

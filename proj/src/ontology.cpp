#include "odo/ontology.hpp"

#include <algorithm>
#include <deque>

#include "odo/error.hpp"

namespace odo {

bool is_valid_term_id(const std::string& name) {
    if (name.empty()) return false;
    if (name.front() == ' ' || name.back() == ' ') return false;
    if (name.front() == '"') return false;
    for (char c : name) {
        if (c == ',' || c == '(' || c == ')') return false;
        if (static_cast<unsigned char>(c) < 0x20) return false; // tabs, newlines
    }
    return true;
}

void require_valid_term_id(const std::string& name) {
    if (!is_valid_term_id(name))
        throw Error(ErrorCode::InvalidTerm, "'" + name + "' is not a legal term name");
}

const CategoryDef* Schema::category(const std::string& id) const {
    auto it = categories.find(id);
    return it == categories.end() ? nullptr : &it->second;
}

const RelationDef* Schema::relation(const std::string& id) const {
    auto it = relations.find(id);
    return it == relations.end() ? nullptr : &it->second;
}

bool is_builtin_relation(const std::string& name) {
    return name == kInstanceOf || name == kIsA;
}

Schema add_category(const Schema& schema, CategoryDef def) {
    require_valid_term_id(def.id);
    if (schema.has_category(def.id) || is_builtin_relation(def.id))
        throw Error(ErrorCode::DuplicateTerm, "category '" + def.id + "' already defined");
    for (const auto& parent : def.parents)
        if (!schema.has_category(parent))
            throw Error(ErrorCode::UnknownParent,
                        "category '" + def.id + "' names unknown parent '" + parent + "'");
    def.primitive = def.nl_definition.empty();
    Schema next = schema;
    next.categories.emplace(def.id, std::move(def));
    return next;
}

Schema add_relation(const Schema& schema, RelationDef def) {
    require_valid_term_id(def.id);
    if (schema.has_relation(def.id) || is_builtin_relation(def.id))
        throw Error(ErrorCode::DuplicateTerm, "relation '" + def.id + "' already defined");
    if (def.arity != 2 && def.arity != 3)
        throw Error(ErrorCode::InvalidTerm, "relation '" + def.id + "' arity must be 2 or 3");
    if (!schema.has_category(def.domain))
        throw Error(ErrorCode::UnknownDomain,
                    "relation '" + def.id + "' names unknown domain '" + def.domain + "'");
    if (def.range.kind == RangeKind::Category && !schema.has_category(def.range.category))
        throw Error(ErrorCode::UnknownRange,
                    "relation '" + def.id + "' names unknown range '" + def.range.category + "'");

    Schema next = schema;
    if (def.inverse_of) {
        const RelationDef* other = schema.relation(*def.inverse_of);
        if (other) {
            bool swapped = other->range.kind == RangeKind::Category &&
                           def.range.kind == RangeKind::Category &&
                           other->range.category == def.domain &&
                           other->domain == def.range.category;
            if (!swapped)
                throw Error(ErrorCode::InverseMismatch,
                            "relation '" + def.id + "' and '" + *def.inverse_of +
                                "' do not have swapped domain/range");
            next.relations[*def.inverse_of].inverse_of = def.id; // record symmetrically
        }
        // a forward reference is tolerated here; check_schema flags it if it
        // never resolves
    }
    next.relations.emplace(def.id, std::move(def));
    return next;
}

namespace {

std::set<std::string> reach_parents(const Schema& schema, const std::string& start) {
    std::set<std::string> seen{start};
    std::deque<std::string> frontier{start};
    while (!frontier.empty()) {
        std::string cur = frontier.front();
        frontier.pop_front();
        const CategoryDef* def = schema.category(cur);
        if (!def) continue;
        for (const auto& parent : def->parents)
            if (seen.insert(parent).second) frontier.push_back(parent);
    }
    return seen;
}

} // namespace

bool is_subclass_of(const Schema& schema, const std::string& sub, const std::string& super) {
    if (!schema.has_category(sub))
        throw Error(ErrorCode::UnknownTerm, "unknown category '" + sub + "'");
    if (!schema.has_category(super))
        throw Error(ErrorCode::UnknownTerm, "unknown category '" + super + "'");
    if (sub == super) return true;
    return reach_parents(schema, sub).count(super) > 0;
}

std::set<std::string> ancestors(const Schema& schema, const std::string& c) {
    if (!schema.has_category(c)) throw Error(ErrorCode::UnknownTerm, "unknown category '" + c + "'");
    return reach_parents(schema, c);
}

std::set<std::string> descendants(const Schema& schema, const std::string& c) {
    if (!schema.has_category(c)) throw Error(ErrorCode::UnknownTerm, "unknown category '" + c + "'");
    std::set<std::string> result{c};
    // child edges are not indexed; schema sizes stay small enough to scan
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [id, def] : schema.categories) {
            if (result.count(id)) continue;
            for (const auto& parent : def.parents) {
                if (result.count(parent)) {
                    result.insert(id);
                    grew = true;
                    break;
                }
            }
        }
    }
    return result;
}

namespace {

// Tarjan-free cycle finder: repeatedly strip nodes with no unresolved parent;
// whatever remains participates in (or depends on) a cycle. For reporting we
// then walk each residual strongly connected set.
std::vector<std::set<std::string>> find_cycles(const Schema& schema) {
    std::map<std::string, std::set<std::string>> parents;
    for (const auto& [id, def] : schema.categories) {
        auto& slot = parents[id];
        for (const auto& p : def.parents)
            if (schema.has_category(p)) slot.insert(p);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = parents.begin(); it != parents.end();) {
            if (it->second.empty()) {
                const std::string gone = it->first;
                it = parents.erase(it);
                for (auto& [id, ps] : parents) ps.erase(gone);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    // group residual nodes into mutually reachable sets
    std::vector<std::set<std::string>> cycles;
    std::set<std::string> assigned;
    for (const auto& [id, ps] : parents) {
        (void)ps;
        if (assigned.count(id)) continue;
        std::set<std::string> reach{id};
        std::deque<std::string> frontier{id};
        while (!frontier.empty()) {
            std::string cur = frontier.front();
            frontier.pop_front();
            auto it = parents.find(cur);
            if (it == parents.end()) continue;
            for (const auto& p : it->second)
                if (reach.insert(p).second) frontier.push_back(p);
        }
        std::set<std::string> component;
        for (const auto& node : reach) {
            if (node == id) {
                component.insert(node);
                continue;
            }
            auto it = parents.find(node);
            if (it == parents.end()) continue;
            std::set<std::string> back{node};
            std::deque<std::string> bf{node};
            bool reaches_id = false;
            while (!bf.empty() && !reaches_id) {
                std::string cur = bf.front();
                bf.pop_front();
                auto pit = parents.find(cur);
                if (pit == parents.end()) continue;
                for (const auto& p : pit->second) {
                    if (p == id) reaches_id = true;
                    if (back.insert(p).second) bf.push_back(p);
                }
            }
            if (reaches_id) component.insert(node);
        }
        if (component.size() > 1 || parents.at(id).count(id)) {
            cycles.push_back(component);
            for (const auto& node : component) assigned.insert(node);
        }
    }
    return cycles;
}

std::string join(const std::set<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

} // namespace

std::vector<SchemaDefect> check_schema(const Schema& schema) {
    std::vector<SchemaDefect> defects;
    auto add = [&](std::string rule, std::string term, std::string detail) {
        defects.push_back({std::move(rule), std::move(term), std::move(detail)});
    };

    for (const auto& [id, def] : schema.categories) {
        if (!is_valid_term_id(id)) add("InvalidTermId", id, "illegal category name");
        if (is_builtin_relation(id)) add("ReservedName", id, "name is reserved");
        for (const auto& parent : def.parents)
            if (!schema.has_category(parent))
                add("UnknownParent", id, "parent '" + parent + "' is not a category");
        if (def.primitive != def.nl_definition.empty())
            add("PrimitiveFlagMismatch", id,
                def.primitive ? "flagged primitive but carries a definition"
                              : "no definition text and not flagged primitive");
    }

    auto cycles = find_cycles(schema);
    for (const auto& cycle : cycles)
        add("CycleDetected", *cycle.begin(), "Is-a cycle through {" + join(cycle) + "}");

    bool acyclic = cycles.empty();
    for (const auto& [id, def] : schema.relations) {
        if (!is_valid_term_id(id)) add("InvalidTermId", id, "illegal relation name");
        if (is_builtin_relation(id)) add("ReservedName", id, "name is reserved");
        if (def.arity != 2 && def.arity != 3)
            add("ArityOutOfRange", id, "arity must be 2 or 3");
        if (!schema.has_category(def.domain))
            add("UnknownDomain", id, "domain '" + def.domain + "' is not a category");
        if (def.range.kind == RangeKind::Category && !schema.has_category(def.range.category))
            add("UnknownRange", id, "range '" + def.range.category + "' is not a category");
        if (def.inverse_of) {
            const RelationDef* other = schema.relation(*def.inverse_of);
            if (!other) {
                add("UnknownInverse", id, "inverse '" + *def.inverse_of + "' is not a relation");
            } else {
                bool swapped = other->range.kind == RangeKind::Category &&
                               def.range.kind == RangeKind::Category &&
                               other->range.category == def.domain &&
                               other->domain == def.range.category;
                if (!swapped)
                    add("InverseMismatch", id,
                        "inverse '" + *def.inverse_of + "' does not swap domain and range");
                else if (other->inverse_of != id)
                    add("InverseMismatch", *def.inverse_of,
                        "inverse link to '" + id + "' is not recorded symmetrically");
            }
        }
        if (def.transitive) {
            if (def.range.kind != RangeKind::Category) {
                add("TransitiveRangeMismatch", id, "transitive relation needs a category range");
            } else if (acyclic && schema.has_category(def.domain) &&
                       schema.has_category(def.range.category)) {
                bool comparable = is_subclass_of(schema, def.range.category, def.domain) ||
                                  is_subclass_of(schema, def.domain, def.range.category);
                if (!comparable)
                    add("TransitiveRangeMismatch", id,
                        "domain '" + def.domain + "' and range '" + def.range.category +
                            "' are not subsumption-compatible");
            }
        }
    }

    std::sort(defects.begin(), defects.end());
    defects.erase(std::unique(defects.begin(), defects.end()), defects.end());
    return defects;
}

bool schemas_identical(const Schema& a, const Schema& b) {
    if (a.categories.size() != b.categories.size() || a.relations.size() != b.relations.size())
        return false;
    for (const auto& [id, def] : a.categories) {
        const CategoryDef* other = b.category(id);
        if (!other || other->nl_definition != def.nl_definition || other->parents != def.parents ||
            other->primitive != def.primitive)
            return false;
    }
    for (const auto& [id, def] : a.relations) {
        const RelationDef* other = b.relation(id);
        if (!other || other->arity != def.arity || other->domain != def.domain ||
            !(other->range == def.range) || other->transitive != def.transitive ||
            other->symmetric != def.symmetric || other->functional != def.functional ||
            other->inverse_of != def.inverse_of)
            return false;
    }
    return true;
}

} // namespace odo

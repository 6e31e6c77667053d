#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "odo/ontology.hpp"
#include "odo/value.hpp"

namespace odo {

struct Individual {
    std::string id;
    std::vector<std::string> labels; // accumulated from has_label facts
};

struct Provenance {
    std::string source;
    std::uint64_t sequence = 0;
};

/// One stored fact: an instantiation or a relation tuple, optionally
/// time-indexed. Equality of facts ignores provenance.
struct Assertion {
    bool instantiation = false;
    std::string predicate; // kInstanceOf when instantiation
    std::string subject;
    Value object; // the category name (as symbol) when instantiation
    std::optional<TimeRef> at;
    std::vector<Provenance> provenance;

    std::string identity_key() const;
};

enum class InstanceMode { Direct, Inferred };

struct QueryPattern {
    std::optional<std::string> subject;
    std::optional<std::string> predicate;
    std::optional<Value> object;
    std::optional<TimeRef> at;
};

/// Assertion store over a fixed schema. Facts collapse as a set (provenance
/// accumulates); queries see ingest order. Single writer, snapshot readers.
class KnowledgeBase {
public:
    KnowledgeBase() = default;
    explicit KnowledgeBase(Schema schema) : schema_(std::move(schema)) {}

    const Schema& schema() const { return schema_; }
    bool strict_mode() const { return strict_; }
    void set_strict_mode(bool strict) { strict_ = strict; }

    void assert_instance(const std::string& subject, const std::string& category,
                         const std::optional<TimeRef>& at = std::nullopt,
                         const std::string& source = "local");
    void assert_relation(const std::string& predicate, const std::string& subject,
                         const Value& object, const std::optional<TimeRef>& at = std::nullopt,
                         const std::string& source = "local");

    /// Attach ontology semantics to a raw data element; the individual is
    /// named "data:<external_key>".
    std::string annotate(const std::string& external_key, const std::string& category,
                         const std::string& source = "local");

    std::set<std::string> instances_of(const std::string& category, InstanceMode mode) const;

    /// Direct and inherited categories of one individual.
    std::set<std::string> types_of(const std::string& subject, InstanceMode mode) const;

    std::vector<const Assertion*> query(const QueryPattern& pattern) const;

    /// Re-ingest a fully formed assertion, preserving its provenance entries.
    /// Used by merge and other bulk transfers; performs the same checks as
    /// the assert operations.
    void ingest(const Assertion& assertion);

    const std::map<std::string, Individual>& individuals() const { return individuals_; }
    bool has_individual(const std::string& id) const { return individuals_.count(id) > 0; }
    const std::vector<Assertion>& assertions() const { return assertions_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    void ensure_individual(const std::string& id);

    // skolem bookkeeping: individuals invented by existential repair do not
    // themselves trigger existential axioms (chase-style blocking)
    void mark_skolem(const std::string& id) { skolems_.insert(id); }
    bool is_skolem(const std::string& id) const { return skolems_.count(id) > 0; }
    const std::set<std::string>& skolems() const { return skolems_; }

    /// Set-equality of logical facts, ignoring order and provenance.
    bool same_fact_set(const KnowledgeBase& other) const;

    /// Referential-integrity audit; returns human-readable problems, empty
    /// when healthy. Exercised by tests after every mutating operation.
    std::vector<std::string> audit() const;

private:
    const Assertion* find_fact(const std::string& key) const;
    void store(Assertion assertion, const std::string& source);
    void check_domain(const RelationDef& def, const std::string& subject);

    Schema schema_;
    bool strict_ = false;
    std::map<std::string, Individual> individuals_;
    std::vector<Assertion> assertions_;
    std::map<std::string, std::size_t> fact_index_;
    std::map<std::string, std::vector<std::size_t>> by_subject_;
    std::map<std::string, std::vector<std::size_t>> by_category_; // direct instantiations
    std::vector<std::string> warnings_;
    std::set<std::string> skolems_;
    std::uint64_t next_sequence_ = 0;
};

} // namespace odo

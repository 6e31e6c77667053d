#include "odo/kb.hpp"

#include <algorithm>

#include "odo/error.hpp"

namespace odo {

namespace {

std::string time_key(const std::optional<TimeRef>& at) {
    if (!at) return "-";
    return Value::make_time(at->text).identity_key();
}

} // namespace

std::string Assertion::identity_key() const {
    return predicate + '\x1f' + subject + '\x1f' + object.identity_key() + '\x1f' + time_key(at);
}

void KnowledgeBase::ensure_individual(const std::string& id) {
    if (individuals_.count(id)) return;
    require_valid_term_id(id);
    individuals_.emplace(id, Individual{id, {}});
}

const Assertion* KnowledgeBase::find_fact(const std::string& key) const {
    auto it = fact_index_.find(key);
    return it == fact_index_.end() ? nullptr : &assertions_[it->second];
}

void KnowledgeBase::store(Assertion assertion, const std::string& source) {
    const std::string key = assertion.identity_key();
    auto it = fact_index_.find(key);
    if (it != fact_index_.end()) {
        assertions_[it->second].provenance.push_back({source, next_sequence_++});
        return;
    }
    assertion.provenance = {{source, next_sequence_++}};
    const std::size_t index = assertions_.size();
    ensure_individual(assertion.subject);
    if (!assertion.instantiation && assertion.object.kind == ValueKind::Symbol)
        ensure_individual(assertion.object.symbol);
    if (assertion.predicate == "has_label" && assertion.object.kind == ValueKind::Text) {
        auto& labels = individuals_[assertion.subject].labels;
        if (std::find(labels.begin(), labels.end(), assertion.object.text) == labels.end())
            labels.push_back(assertion.object.text);
    }
    by_subject_[assertion.subject].push_back(index);
    if (assertion.instantiation) by_category_[assertion.object.symbol].push_back(index);
    fact_index_.emplace(key, index);
    assertions_.push_back(std::move(assertion));
}

void KnowledgeBase::assert_instance(const std::string& subject, const std::string& category,
                                    const std::optional<TimeRef>& at, const std::string& source) {
    if (!schema_.has_category(category))
        throw Error(ErrorCode::UnknownCategory, "'" + category + "' is not a schema category");
    Assertion a;
    a.instantiation = true;
    a.predicate = kInstanceOf;
    a.subject = subject;
    a.object = Value::make_symbol(category);
    a.at = at;
    store(std::move(a), source);
}

void KnowledgeBase::check_domain(const RelationDef& def, const std::string& subject) {
    std::set<std::string> types = types_of(subject, InstanceMode::Inferred);
    if (types.count(def.domain)) return;
    if (strict_)
        throw Error(ErrorCode::DomainViolation, "subject '" + subject +
                                                    "' is not a known instance of domain '" +
                                                    def.domain + "' of '" + def.id + "'");
    // lax mode: only a provable mismatch is worth a warning; an untyped
    // subject may simply not have been classified yet
    if (!types.empty())
        warnings_.push_back("domain: subject '" + subject + "' of '" + def.id +
                            "' has no type under '" + def.domain + "'");
}

void KnowledgeBase::assert_relation(const std::string& predicate, const std::string& subject,
                                    const Value& object, const std::optional<TimeRef>& at,
                                    const std::string& source) {
    if (predicate == kInstanceOf) {
        if (object.kind != ValueKind::Symbol)
            throw Error(ErrorCode::RangeKindMismatch, "instantiation object must be a category");
        assert_instance(subject, object.symbol, at, source);
        return;
    }
    if (predicate == kIsA)
        throw Error(ErrorCode::UnknownPredicate,
                    "'Is a' is schema structure; declare it in a schema file");
    const RelationDef* def = schema_.relation(predicate);
    if (!def)
        throw Error(ErrorCode::UnknownPredicate, "'" + predicate + "' is not a schema relation");

    if (def->arity == 3 && !at)
        throw Error(ErrorCode::ArityMismatch,
                    "'" + predicate + "' is ternary and needs a time reference");
    if (def->arity == 2 && at)
        throw Error(ErrorCode::ArityMismatch, "'" + predicate + "' is binary; no time slot");

    bool kind_ok = false;
    switch (def->range.kind) {
    case RangeKind::Category: kind_ok = object.kind == ValueKind::Symbol; break;
    case RangeKind::Quantity: kind_ok = object.kind == ValueKind::QuantityVal; break;
    case RangeKind::Text: kind_ok = object.kind == ValueKind::Text; break;
    case RangeKind::Time: kind_ok = object.kind == ValueKind::Time; break;
    }
    if (!kind_ok)
        throw Error(ErrorCode::RangeKindMismatch,
                    "'" + predicate + "' expects a " +
                        (def->range.kind == RangeKind::Category ? "'" + def->range.category + "' individual"
                         : def->range.kind == RangeKind::Quantity ? std::string("quantity")
                         : def->range.kind == RangeKind::Text     ? std::string("text literal")
                                                                  : std::string("time reference")) +
                        " object");

    check_domain(*def, subject);

    Assertion a;
    a.predicate = predicate;
    a.subject = subject;
    a.object = object;
    a.at = at;
    store(std::move(a), source);
}

std::string KnowledgeBase::annotate(const std::string& external_key, const std::string& category,
                                    const std::string& source) {
    const std::string id = "data:" + external_key;
    assert_instance(id, category, std::nullopt, source);
    return id;
}

std::set<std::string> KnowledgeBase::instances_of(const std::string& category,
                                                  InstanceMode mode) const {
    if (!schema_.has_category(category))
        throw Error(ErrorCode::UnknownCategory, "'" + category + "' is not a schema category");
    std::set<std::string> result;
    auto collect = [&](const std::string& cat) {
        auto it = by_category_.find(cat);
        if (it == by_category_.end()) return;
        for (std::size_t index : it->second) result.insert(assertions_[index].subject);
    };
    if (mode == InstanceMode::Direct) {
        collect(category);
    } else {
        for (const auto& cat : descendants(schema_, category)) collect(cat);
    }
    return result;
}

std::set<std::string> KnowledgeBase::types_of(const std::string& subject,
                                              InstanceMode mode) const {
    std::set<std::string> result;
    auto it = by_subject_.find(subject);
    if (it == by_subject_.end()) return result;
    for (std::size_t index : it->second) {
        const Assertion& a = assertions_[index];
        if (!a.instantiation) continue;
        if (mode == InstanceMode::Direct) {
            result.insert(a.object.symbol);
        } else {
            for (const auto& anc : ancestors(schema_, a.object.symbol)) result.insert(anc);
        }
    }
    return result;
}

std::vector<const Assertion*> KnowledgeBase::query(const QueryPattern& pattern) const {
    std::vector<const Assertion*> result;
    for (const Assertion& a : assertions_) {
        if (pattern.subject && a.subject != *pattern.subject) continue;
        if (pattern.predicate && a.predicate != *pattern.predicate) continue;
        if (pattern.object && !(a.object == *pattern.object)) continue;
        if (pattern.at) {
            if (!a.at || !(*a.at == *pattern.at)) continue;
        }
        result.push_back(&a);
    }
    return result;
}

void KnowledgeBase::ingest(const Assertion& assertion) {
    Assertion copy = assertion;
    std::vector<Provenance> history = std::move(copy.provenance);
    copy.provenance.clear();
    if (history.empty()) history.push_back({"local", 0});
    bool first = true;
    for (const auto& entry : history) {
        if (first) {
            if (copy.instantiation)
                assert_instance(copy.subject, copy.object.symbol, copy.at, entry.source);
            else
                assert_relation(copy.predicate, copy.subject, copy.object, copy.at, entry.source);
            first = false;
        } else {
            store(copy, entry.source); // dedupes; accumulates provenance
        }
    }
}

bool KnowledgeBase::same_fact_set(const KnowledgeBase& other) const {
    if (assertions_.size() != other.assertions_.size()) return false;
    for (const auto& [key, index] : fact_index_) {
        (void)index;
        if (!other.fact_index_.count(key)) return false;
    }
    return true;
}

std::vector<std::string> KnowledgeBase::audit() const {
    std::vector<std::string> problems;
    if (fact_index_.size() != assertions_.size())
        problems.push_back("fact index size disagrees with assertion count");
    for (std::size_t i = 0; i < assertions_.size(); ++i) {
        const Assertion& a = assertions_[i];
        auto it = fact_index_.find(a.identity_key());
        if (it == fact_index_.end() || it->second != i)
            problems.push_back("assertion " + std::to_string(i) + " missing from fact index");
        if (!individuals_.count(a.subject))
            problems.push_back("subject '" + a.subject + "' has no individual record");
        if (a.provenance.empty())
            problems.push_back("assertion " + std::to_string(i) + " has no provenance");
        if (a.instantiation) {
            if (!schema_.has_category(a.object.symbol))
                problems.push_back("instantiation of unknown category '" + a.object.symbol + "'");
        } else {
            const RelationDef* def = schema_.relation(a.predicate);
            if (!def) {
                problems.push_back("unknown predicate '" + a.predicate + "'");
                continue;
            }
            if ((def->arity == 3) != a.at.has_value())
                problems.push_back("arity/time mismatch on '" + a.predicate + "'");
            if (def->range.kind == RangeKind::Category &&
                (a.object.kind != ValueKind::Symbol || !individuals_.count(a.object.symbol)))
                problems.push_back("object of '" + a.predicate + "' is not a stored individual");
        }
    }
    return problems;
}

} // namespace odo

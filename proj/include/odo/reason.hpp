#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odo/kb.hpp"

namespace odo {

struct AxiomViolation {
    std::string axiom; // A1-debris-has-orbit, A2-orbit-has-parameters,
                       // A3-domain-range, A4-functional-uniqueness
    std::string subject;
    std::string detail;

    auto operator<=>(const AxiomViolation&) const = default;
};

// diameter buckets in cm: <1, 1..10 inclusive, >10
enum class SizeClass { Small, Medium, Large };

const char* size_class_name(SizeClass size);

/// Adds, for every instantiation (x, C) and every ancestor D of C, the
/// instantiation (x, D) with provenance "inferred". Idempotent.
KnowledgeBase materialize_types(const KnowledgeBase& kb);

/// Transitive closure over individual-valued facts of relations marked
/// transitive, symmetric closure for relations marked symmetric. Ternary
/// facts compose only within one time reference. Idempotent.
KnowledgeBase close_transitive(const KnowledgeBase& kb);

/// Audits the orbit axioms (A1, A2), domain/range conformance (A3) and
/// functional uniqueness (A4). Empty iff all axioms hold. Individuals created
/// by materialize_existentials do not trigger A1/A2 again (blocking), and an
/// individual with no instantiation at all never counts as an A3 mismatch.
std::vector<AxiomViolation> validate(const KnowledgeBase& kb);

/// Repairs A1 by creating, per violating subject, a deterministic placeholder
/// orbit "<subject>#orbit" typed as Orbit and linked with has_orbit.
KnowledgeBase materialize_existentials(const KnowledgeBase& kb);

/// Buckets a subject by its has_diameter fact (latest by time; ties broken by
/// ingest sequence), after normalizing to cm. No length-valued diameter fact
/// means no classification.
std::optional<SizeClass> classify_size(const KnowledgeBase& kb, const std::string& subject);

void write_violations_tsv(const std::vector<AxiomViolation>& violations, std::ostream& out);

} // namespace odo

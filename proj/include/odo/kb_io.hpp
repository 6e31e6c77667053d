#pragma once

#include <iosfwd>
#include <string>

#include "odo/kb.hpp"

namespace odo {

// Assertion exchange format, one fact per line:
//   <predicate> (<arg1>, <arg2>[, <arg3>])
// is_an_instance_of carries instantiations; text literals are double-quoted;
// quantities are written "<magnitude> <unit>"; the third argument is always a
// time reference. Whitespace around commas is insignificant; arguments may
// contain spaces.

std::string render_fact(const Assertion& assertion);

/// Parses one line and asserts it. Blank lines and '#' comments are skipped
/// (returns false); returns true when a fact was asserted.
bool assert_fact_line(KnowledgeBase& kb, const std::string& line,
                      const std::string& source = "local");

void export_facts(const KnowledgeBase& kb, std::ostream& out);
std::size_t import_facts(KnowledgeBase& kb, std::istream& in, const std::string& source);

/// 4-column TSV: subject, predicate, object, at (empty when untimed).
void export_tsv(const KnowledgeBase& kb, std::ostream& out);

// KB-on-disk is a directory holding schema.odo + facts.odo.
void save_kb(const KnowledgeBase& kb, const std::string& dir);
KnowledgeBase load_kb(const std::string& dir, const std::string& source = "local");
KnowledgeBase load_kb_with_schema(const std::string& dir, Schema schema,
                                  const std::string& source = "local");

} // namespace odo

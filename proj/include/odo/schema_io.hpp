#pragma once

#include <iosfwd>
#include <string>

#include "odo/ontology.hpp"

namespace odo {

// Line-oriented schema text:
//   category: <Name> [is_a: <Parent>{, <Parent>}] [def: "<text>"]
//   relation: <Name> arity: <2|3> domain: <Category> range: <Category|quantity|text|time>
//             [props: transitive,symmetric,functional] [inverse: <Name>]
// '#' starts a comment outside quotes. Forward references are legal; run
// check_schema after loading to see whether everything resolved.

Schema parse_schema(std::istream& in);
Schema load_schema_file(const std::string& path);

void write_schema(const Schema& schema, std::ostream& out);
std::string schema_to_string(const Schema& schema);
void save_schema_file(const Schema& schema, const std::string& path);

} // namespace odo

#include "odo/schema_io.hpp"

#include <fstream>
#include <sstream>

#include "odo/error.hpp"

namespace odo {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_quotes = !in_quotes;
        if (c == '#' && !in_quotes) return line.substr(0, i);
    }
    return line;
}

std::string escape_def(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string unescape_def(const std::string& text) {
    std::string out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        out += text[i];
    }
    return out;
}

// takes `rest` positioned after "<keyword>: " and cuts at the next keyword
std::string take_until(std::string& rest, std::initializer_list<const char*> keywords) {
    size_t cut = rest.size();
    for (const char* kw : keywords) {
        std::string marker = std::string(" ") + kw + ":";
        size_t pos = rest.find(marker);
        if (pos != std::string::npos && pos < cut) cut = pos;
    }
    std::string value = trim(rest.substr(0, cut));
    rest = cut < rest.size() ? trim(rest.substr(cut)) : "";
    return value;
}

bool consume_keyword(std::string& rest, const char* kw) {
    std::string marker = std::string(kw) + ":";
    if (rest.rfind(marker, 0) != 0) return false;
    rest = trim(rest.substr(marker.size()));
    return true;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        std::string part = trim(cur);
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

void parse_category_line(Schema& schema, std::string rest, int lineno) {
    CategoryDef def;
    def.id = take_until(rest, {"is_a", "def"});
    if (def.id.empty())
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": category needs a name");
    if (consume_keyword(rest, "is_a")) {
        std::string parents = take_until(rest, {"def"});
        for (auto& parent : split_commas(parents)) def.parents.insert(parent);
        if (def.parents.empty())
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": empty is_a list");
    }
    if (consume_keyword(rest, "def")) {
        if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"')
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": def text must be double-quoted");
        def.nl_definition = unescape_def(rest.substr(1, rest.size() - 2));
        rest = "";
    }
    if (!rest.empty())
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(lineno) + ": trailing text '" + rest + "'");
    def.primitive = def.nl_definition.empty();
    if (schema.categories.count(def.id))
        throw Error(ErrorCode::DuplicateTerm,
                    "line " + std::to_string(lineno) + ": category '" + def.id + "' declared twice");
    schema.categories.emplace(def.id, std::move(def));
}

void parse_relation_line(Schema& schema, std::string rest, int lineno) {
    RelationDef def;
    def.id = take_until(rest, {"arity"});
    if (def.id.empty())
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": relation needs a name");
    if (!consume_keyword(rest, "arity"))
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": missing arity:");
    std::string arity = take_until(rest, {"domain"});
    if (arity == "2")
        def.arity = 2;
    else if (arity == "3")
        def.arity = 3;
    else
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(lineno) + ": arity must be 2 or 3");
    if (!consume_keyword(rest, "domain"))
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": missing domain:");
    def.domain = take_until(rest, {"range"});
    if (!consume_keyword(rest, "range"))
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": missing range:");
    std::string range = take_until(rest, {"props", "inverse"});
    if (range == "quantity")
        def.range = RangeSpec::quantity();
    else if (range == "text")
        def.range = RangeSpec::text();
    else if (range == "time")
        def.range = RangeSpec::time();
    else if (!range.empty())
        def.range = RangeSpec::cat(range);
    else
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": empty range");
    if (consume_keyword(rest, "props")) {
        for (const auto& prop : split_commas(take_until(rest, {"inverse"}))) {
            if (prop == "transitive")
                def.transitive = true;
            else if (prop == "symmetric")
                def.symmetric = true;
            else if (prop == "functional")
                def.functional = true;
            else
                throw Error(ErrorCode::ParseError,
                            "line " + std::to_string(lineno) + ": unknown prop '" + prop + "'");
        }
    }
    if (consume_keyword(rest, "inverse")) {
        def.inverse_of = take_until(rest, {});
        if (def.inverse_of->empty())
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": empty inverse name");
    }
    if (!rest.empty())
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(lineno) + ": trailing text '" + rest + "'");
    if (schema.relations.count(def.id))
        throw Error(ErrorCode::DuplicateTerm,
                    "line " + std::to_string(lineno) + ": relation '" + def.id + "' declared twice");
    schema.relations.emplace(def.id, std::move(def));
}

} // namespace

Schema parse_schema(std::istream& in) {
    Schema schema;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        std::string rest = line;
        if (consume_keyword(rest, "category"))
            parse_category_line(schema, rest, lineno);
        else if (consume_keyword(rest, "relation"))
            parse_relation_line(schema, rest, lineno);
        else
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": expected category: or relation:");
    }
    // second pass: inverse links declared one-sided are recorded symmetrically
    for (auto& [id, def] : schema.relations) {
        if (!def.inverse_of) continue;
        auto other = schema.relations.find(*def.inverse_of);
        if (other != schema.relations.end() && !other->second.inverse_of)
            other->second.inverse_of = id;
    }
    return schema;
}

Schema load_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open schema file '" + path + "'");
    return parse_schema(in);
}

void write_schema(const Schema& schema, std::ostream& out) {
    out << "# odo-kb schema\n";
    for (const auto& [id, def] : schema.categories) {
        out << "category: " << id;
        if (!def.parents.empty()) {
            out << " is_a: ";
            bool first = true;
            for (const auto& parent : def.parents) {
                if (!first) out << ", ";
                out << parent;
                first = false;
            }
        }
        if (!def.nl_definition.empty()) out << " def: \"" << escape_def(def.nl_definition) << "\"";
        out << "\n";
    }
    for (const auto& [id, def] : schema.relations) {
        out << "relation: " << id << " arity: " << def.arity << " domain: " << def.domain
            << " range: ";
        switch (def.range.kind) {
        case RangeKind::Category: out << def.range.category; break;
        case RangeKind::Quantity: out << "quantity"; break;
        case RangeKind::Text: out << "text"; break;
        case RangeKind::Time: out << "time"; break;
        }
        std::vector<const char*> props;
        if (def.transitive) props.push_back("transitive");
        if (def.symmetric) props.push_back("symmetric");
        if (def.functional) props.push_back("functional");
        if (!props.empty()) {
            out << " props: ";
            for (size_t i = 0; i < props.size(); ++i) out << (i ? "," : "") << props[i];
        }
        if (def.inverse_of) out << " inverse: " << *def.inverse_of;
        out << "\n";
    }
}

std::string schema_to_string(const Schema& schema) {
    std::ostringstream out;
    write_schema(schema, out);
    return out.str();
}

void save_schema_file(const Schema& schema, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write schema file '" + path + "'");
    write_schema(schema, out);
}

} // namespace odo

#include "odo/kb_io.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "odo/error.hpp"
#include "odo/schema_io.hpp"

namespace odo {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string escape_text(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// splits "a, b, "c, d"" on commas outside quotes
std::vector<std::string> split_args(const std::string& body) {
    std::vector<std::string> args;
    std::string cur;
    bool in_quotes = false;
    for (size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '\\' && in_quotes && i + 1 < body.size()) {
            cur += c;
            cur += body[++i];
            continue;
        }
        if (c == '"') in_quotes = !in_quotes;
        if (c == ',' && !in_quotes) {
            args.push_back(trim(cur));
            cur.clear();
            continue;
        }
        cur += c;
    }
    args.push_back(trim(cur));
    return args;
}

bool parse_quoted(const std::string& arg, std::string& out) {
    if (arg.size() < 2 || arg.front() != '"' || arg.back() != '"') return false;
    out.clear();
    for (size_t i = 1; i + 1 < arg.size(); ++i) {
        if (arg[i] == '\\' && i + 2 < arg.size()) ++i;
        out += arg[i];
    }
    return true;
}

bool parse_quantity(const std::string& arg, Quantity& out) {
    size_t space = arg.find_last_of(' ');
    if (space == std::string::npos) return false;
    std::string unit = trim(arg.substr(space + 1));
    std::string number = trim(arg.substr(0, space));
    if (!is_known_unit(unit) || number.empty()) return false;
    char* end = nullptr;
    double magnitude = std::strtod(number.c_str(), &end);
    if (end != number.c_str() + number.size()) return false;
    out = {magnitude, unit};
    return true;
}

Value coerce_object(const Schema& schema, const std::string& predicate, const std::string& arg) {
    if (predicate == kInstanceOf) return Value::make_symbol(arg);
    const RelationDef* def = schema.relation(predicate);
    if (!def)
        throw Error(ErrorCode::UnknownPredicate, "'" + predicate + "' is not a schema relation");
    switch (def->range.kind) {
    case RangeKind::Category: return Value::make_symbol(arg);
    case RangeKind::Text: {
        std::string text;
        if (!parse_quoted(arg, text))
            throw Error(ErrorCode::ParseError,
                        "'" + predicate + "' expects a double-quoted text literal, got '" + arg + "'");
        return Value::make_text(text);
    }
    case RangeKind::Quantity: {
        Quantity q;
        if (!parse_quantity(arg, q))
            throw Error(ErrorCode::ParseError,
                        "'" + predicate + "' expects '<magnitude> <unit>', got '" + arg + "'");
        return Value::make_quantity(q.magnitude, q.unit);
    }
    case RangeKind::Time: return Value::make_time(arg);
    }
    throw Error(ErrorCode::ParseError, "unreachable range kind");
}

} // namespace

std::string render_fact(const Assertion& assertion) {
    std::string line = assertion.predicate + " (" + assertion.subject + ", ";
    if (assertion.object.kind == ValueKind::Text)
        line += "\"" + escape_text(assertion.object.text) + "\"";
    else
        line += assertion.object.render();
    if (assertion.at) line += ", " + assertion.at->text;
    line += ")";
    return line;
}

bool assert_fact_line(KnowledgeBase& kb, const std::string& rawline, const std::string& source) {
    std::string line = trim(rawline);
    if (line.empty() || line[0] == '#') return false;
    size_t open = line.find('(');
    size_t close = line.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw Error(ErrorCode::ParseError, "expected '<predicate> (<args>)': " + line);
    std::string predicate = trim(line.substr(0, open));
    if (!trim(line.substr(close + 1)).empty())
        throw Error(ErrorCode::ParseError, "trailing text after ')': " + line);
    std::vector<std::string> args = split_args(line.substr(open + 1, close - open - 1));
    if (args.size() != 2 && args.size() != 3)
        throw Error(ErrorCode::ParseError, "expected 2 or 3 arguments: " + line);
    std::optional<TimeRef> at;
    if (args.size() == 3) at = TimeRef{args[2]};
    Value object = coerce_object(kb.schema(), predicate, args[1]);
    kb.assert_relation(predicate, args[0], object, at, source);
    return true;
}

void export_facts(const KnowledgeBase& kb, std::ostream& out) {
    out << "# odo-kb facts\n";
    for (const Assertion& a : kb.assertions()) out << render_fact(a) << "\n";
}

std::size_t import_facts(KnowledgeBase& kb, std::istream& in, const std::string& source) {
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line))
        if (assert_fact_line(kb, line, source)) ++count;
    return count;
}

void export_tsv(const KnowledgeBase& kb, std::ostream& out) {
    for (const Assertion& a : kb.assertions()) {
        std::string object = a.object.kind == ValueKind::Text
                                 ? "\"" + escape_text(a.object.text) + "\""
                                 : a.object.render();
        out << a.subject << '\t' << a.predicate << '\t' << object << '\t'
            << (a.at ? a.at->text : "") << '\n';
    }
}

void save_kb(const KnowledgeBase& kb, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/schema.odo");
        if (!out) throw Error(ErrorCode::IoError, "cannot write '" + dir + "/schema.odo'");
        write_schema(kb.schema(), out);
    }
    std::ofstream out(dir + "/facts.odo");
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + dir + "/facts.odo'");
    export_facts(kb, out);
}

KnowledgeBase load_kb(const std::string& dir, const std::string& source) {
    return load_kb_with_schema(dir, load_schema_file(dir + "/schema.odo"), source);
}

KnowledgeBase load_kb_with_schema(const std::string& dir, Schema schema,
                                  const std::string& source) {
    KnowledgeBase kb(std::move(schema));
    std::ifstream in(dir + "/facts.odo");
    if (in) import_facts(kb, in, source);
    return kb;
}

} // namespace odo

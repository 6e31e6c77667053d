#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "odo/error.hpp"
#include "odo/federation.hpp"
#include "odo/kb_io.hpp"
#include "odo/reason.hpp"
#include "odo/schema_io.hpp"
#include "odo/seed.hpp"
#include "odo/tle.hpp"

namespace {

struct Options {
    std::string kb_dir;
    std::vector<std::string> schema_paths;
    bool use_seed = false;
    bool strict = false;
    bool materialize = false;
    bool skolemize = false;
    std::string policy = "keep-all";
    std::string schema_rule = "identical";
    std::string format = "tsv";
};

odo::Schema combine_schema_files(const std::vector<std::string>& paths) {
    odo::Schema combined = odo::load_schema_file(paths.front());
    for (std::size_t i = 1; i < paths.size(); ++i) {
        odo::Schema extra = odo::load_schema_file(paths[i]);
        // structural merge so cross-file references surface through
        // check_schema instead of aborting the load
        for (auto& [id, def] : extra.categories) {
            if (combined.categories.count(id))
                throw odo::Error(odo::ErrorCode::DuplicateTerm,
                                 "category '" + id + "' declared in more than one schema file");
            combined.categories.emplace(id, def);
        }
        for (auto& [id, def] : extra.relations) {
            if (combined.relations.count(id))
                throw odo::Error(odo::ErrorCode::DuplicateTerm,
                                 "relation '" + id + "' declared in more than one schema file");
            combined.relations.emplace(id, def);
        }
    }
    for (auto& [id, def] : combined.relations) {
        if (!def.inverse_of) continue;
        auto other = combined.relations.find(*def.inverse_of);
        if (other != combined.relations.end() && !other->second.inverse_of)
            other->second.inverse_of = id;
    }
    return combined;
}

odo::Schema bundled_seed() {
    if (const char* path = std::getenv("ODO_SEED_PATH")) return odo::load_schema_file(path);
    return odo::seed_schema();
}

std::optional<odo::Schema> explicit_schema(const Options& opt) {
    if (!opt.schema_paths.empty()) return combine_schema_files(opt.schema_paths);
    if (opt.use_seed) return bundled_seed();
    return std::nullopt;
}

odo::KnowledgeBase open_kb(const Options& opt) {
    std::optional<odo::Schema> schema = explicit_schema(opt);
    odo::KnowledgeBase kb;
    if (schema) {
        kb = odo::load_kb_with_schema(opt.kb_dir, std::move(*schema));
    } else {
        kb = odo::load_kb(opt.kb_dir);
    }
    kb.set_strict_mode(opt.strict);
    return kb;
}

odo::KnowledgeBase maybe_materialize(odo::KnowledgeBase kb, const Options& opt) {
    if (opt.materialize) kb = odo::close_transitive(odo::materialize_types(kb));
    return kb;
}

void print_warnings(const odo::KnowledgeBase& kb) {
    for (const std::string& warning : kb.warnings()) std::cerr << "warning: " << warning << "\n";
}

odo::MergePolicy merge_policy(const Options& opt) {
    odo::MergePolicy policy;
    policy.conflict_rule = opt.policy == "latest" ? odo::ConflictRule::LatestEpochWins
                                                  : odo::ConflictRule::KeepAll;
    policy.schema_rule = opt.schema_rule == "union" ? odo::SchemaRule::UnionWithDefectReport
                                                    : odo::SchemaRule::RequireIdentical;
    return policy;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"odo — orbital debris knowledge-base tool"};
    app.require_subcommand(1);
    Options opt;

    auto add_schema_flags = [&](CLI::App* cmd) {
        cmd->add_option("--schema", opt.schema_paths, "schema file (repeatable)");
        cmd->add_flag("--seed", opt.use_seed, "use the bundled seed schema");
    };
    auto add_kb_flag = [&](CLI::App* cmd, bool required = true) {
        auto* o = cmd->add_option("--kb", opt.kb_dir, "knowledge-base directory");
        if (required) o->required();
    };

    // schema-check
    auto* cmd_check = app.add_subcommand("schema-check", "validate a schema file");
    add_schema_flags(cmd_check);

    // assert
    auto* cmd_assert = app.add_subcommand("assert", "assert facts in exchange notation");
    add_kb_flag(cmd_assert);
    add_schema_flags(cmd_assert);
    cmd_assert->add_flag("--strict", opt.strict, "reject domain violations");
    std::vector<std::string> fact_args;
    std::string fact_file;
    cmd_assert->add_option("facts", fact_args, "facts like 'orbits (x, Earth)'");
    cmd_assert->add_option("--file", fact_file, "file of facts, one per line");

    // ingest-tle
    auto* cmd_ingest = app.add_subcommand("ingest-tle", "ingest a TLE file");
    add_kb_flag(cmd_ingest);
    add_schema_flags(cmd_ingest);
    cmd_ingest->add_flag("--strict", opt.strict, "reject any malformed pair");
    std::string tle_file;
    cmd_ingest->add_option("--file", tle_file, "TLE file")->required();

    // query
    auto* cmd_query = app.add_subcommand("query", "single-pattern query");
    add_kb_flag(cmd_query);
    add_schema_flags(cmd_query);
    cmd_query->add_flag("--materialize", opt.materialize, "materialize inherited facts first");
    std::string q_subject, q_predicate, q_object, q_at;
    cmd_query->add_option("--subject", q_subject, "subject individual");
    cmd_query->add_option("--predicate", q_predicate, "predicate term");
    cmd_query->add_option("--object", q_object, "object value");
    cmd_query->add_option("--at", q_at, "time reference");
    cmd_query->add_option("--format", opt.format, "tsv|odo")->check(CLI::IsMember({"tsv", "odo"}));

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "audit the orbit axioms");
    add_kb_flag(cmd_validate);
    add_schema_flags(cmd_validate);
    cmd_validate->add_flag("--materialize", opt.materialize, "materialize inherited facts first");
    cmd_validate->add_flag("--skolemize", opt.skolemize,
                           "repair missing orbits with placeholder individuals first");

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "size class of a debris object");
    add_kb_flag(cmd_classify);
    add_schema_flags(cmd_classify);
    std::string c_subject;
    cmd_classify->add_option("--subject", c_subject, "subject individual")->required();

    // merge
    auto* cmd_merge = app.add_subcommand("merge", "merge catalogs into a joint master");
    std::vector<std::string> catalog_dirs;
    std::string out_dir, master_id = "master";
    cmd_merge->add_option("catalogs", catalog_dirs, "catalog directories")->required();
    cmd_merge->add_option("--out", out_dir, "output root directory")->required();
    cmd_merge->add_option("--policy", opt.policy, "latest|keep-all")
        ->check(CLI::IsMember({"latest", "keep-all"}));
    cmd_merge->add_option("--schema-rule", opt.schema_rule, "identical|union")
        ->check(CLI::IsMember({"identical", "union"}));
    cmd_merge->add_option("--master-id", master_id, "source id of the joint master");

    // export
    auto* cmd_export = app.add_subcommand("export", "dump the fact set");
    add_kb_flag(cmd_export);
    add_schema_flags(cmd_export);
    cmd_export->add_flag("--materialize", opt.materialize, "materialize inherited facts first");
    cmd_export->add_option("--format", opt.format, "tsv|odo")->check(CLI::IsMember({"tsv", "odo"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_check->parsed()) {
            odo::Schema schema;
            if (auto explicit_one = explicit_schema(opt))
                schema = std::move(*explicit_one);
            else
                throw odo::Error(odo::ErrorCode::IoError, "schema-check needs --schema or --seed");
            auto defects = odo::check_schema(schema);
            for (const auto& d : defects)
                std::cout << d.rule << '\t' << d.term << '\t' << d.detail << '\n';
            return defects.empty() ? 0 : 1;
        }

        if (cmd_assert->parsed()) {
            odo::KnowledgeBase kb = open_kb(opt);
            std::size_t count = 0;
            for (const std::string& fact : fact_args)
                if (odo::assert_fact_line(kb, fact)) ++count;
            if (!fact_file.empty()) {
                std::ifstream in(fact_file);
                if (!in) throw odo::Error(odo::ErrorCode::IoError, "cannot open '" + fact_file + "'");
                count += odo::import_facts(kb, in, "local");
            }
            print_warnings(kb);
            odo::save_kb(kb, opt.kb_dir);
            std::cerr << "asserted " << count << " fact(s)\n";
            return 0;
        }

        if (cmd_ingest->parsed()) {
            odo::KnowledgeBase kb = open_kb(opt);
            std::vector<odo::TleDiagnostic> diagnostics;
            auto entries = odo::read_tle_file(tle_file, opt.strict, &diagnostics);
            for (const auto& diag : diagnostics)
                std::cerr << "warning: " << tle_file << ":" << diag.line << ": " << diag.message
                          << "\n";
            for (const auto& entry : entries)
                odo::annotate_tle(kb, entry.record, odo::subject_for_entry(entry));
            print_warnings(kb);
            odo::save_kb(kb, opt.kb_dir);
            std::cerr << "ingested " << entries.size() << " record(s)\n";
            return 0;
        }

        if (cmd_query->parsed()) {
            odo::KnowledgeBase kb = maybe_materialize(open_kb(opt), opt);
            odo::QueryPattern pattern;
            if (!q_subject.empty()) pattern.subject = q_subject;
            if (!q_predicate.empty()) pattern.predicate = q_predicate;
            if (!q_at.empty()) pattern.at = odo::TimeRef{q_at};
            if (!q_object.empty()) {
                // coerce by the bound predicate's declared range when known
                if (!q_predicate.empty() && q_predicate != odo::kInstanceOf) {
                    const odo::RelationDef* def = kb.schema().relation(q_predicate);
                    if (!def)
                        throw odo::Error(odo::ErrorCode::UnknownPredicate,
                                         "'" + q_predicate + "' is not a schema relation");
                    switch (def->range.kind) {
                    case odo::RangeKind::Category:
                        pattern.object = odo::Value::make_symbol(q_object);
                        break;
                    case odo::RangeKind::Text: pattern.object = odo::Value::make_text(q_object); break;
                    case odo::RangeKind::Quantity: {
                        size_t space = q_object.find_last_of(' ');
                        if (space == std::string::npos)
                            throw odo::Error(odo::ErrorCode::ParseError,
                                             "quantity pattern needs '<magnitude> <unit>'");
                        pattern.object = odo::Value::make_quantity(
                            std::strtod(q_object.substr(0, space).c_str(), nullptr),
                            q_object.substr(space + 1));
                        break;
                    }
                    case odo::RangeKind::Time: pattern.object = odo::Value::make_time(q_object); break;
                    }
                } else {
                    pattern.object = odo::Value::make_symbol(q_object);
                }
            }
            auto rows = kb.query(pattern);
            for (const odo::Assertion* a : rows) {
                if (opt.format == "odo") {
                    std::cout << odo::render_fact(*a) << "\n";
                } else {
                    std::string object = a->object.kind == odo::ValueKind::Text
                                             ? "\"" + a->object.text + "\""
                                             : a->object.render();
                    std::cout << a->subject << '\t' << a->predicate << '\t' << object << '\t'
                              << (a->at ? a->at->text : "") << '\n';
                }
            }
            return 0;
        }

        if (cmd_validate->parsed()) {
            odo::KnowledgeBase kb = maybe_materialize(open_kb(opt), opt);
            if (opt.skolemize) kb = odo::materialize_existentials(kb);
            auto violations = odo::validate(kb);
            odo::write_violations_tsv(violations, std::cout);
            return violations.empty() ? 0 : 3;
        }

        if (cmd_classify->parsed()) {
            odo::KnowledgeBase kb = open_kb(opt);
            auto size = odo::classify_size(kb, c_subject);
            std::cout << (size ? odo::size_class_name(*size) : "none") << "\n";
            return 0;
        }

        if (cmd_merge->parsed()) {
            std::vector<odo::Catalog> catalogs;
            for (const std::string& dir : catalog_dirs) catalogs.push_back(odo::load_catalog(dir));
            odo::MergeReport report;
            odo::Catalog master = odo::merge_hub(catalogs, merge_policy(opt), master_id, &report);
            for (const auto& d : report.schema_defects)
                std::cerr << "warning: " << d.rule << ": " << d.term << ": " << d.detail << "\n";
            odo::save_catalog(master, out_dir, /*with_provenance=*/true, &report);
            std::cerr << "merged " << catalogs.size() << " catalog(s), "
                      << master.kb.assertions().size() << " fact(s), "
                      << report.clusters.size() << " identity cluster(s)\n";
            return 0;
        }

        if (cmd_export->parsed()) {
            odo::KnowledgeBase kb = maybe_materialize(open_kb(opt), opt);
            if (opt.format == "odo")
                odo::export_facts(kb, std::cout);
            else
                odo::export_tsv(kb, std::cout);
            return 0;
        }
    } catch (const odo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#include "odo/federation.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "odo/error.hpp"
#include "odo/kb_io.hpp"
#include "odo/schema_io.hpp"
#include "odo/tle.hpp"

namespace odo {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

const char* key_relation(IdentityKey key) {
    switch (key) {
    case IdentityKey::InternationalDesignator: return "has_international_designator";
    case IdentityKey::CatalogNumber: return "has_catalog_number";
    case IdentityKey::ExactId: return nullptr;
    }
    return nullptr;
}

char key_tag(IdentityKey key) {
    switch (key) {
    case IdentityKey::InternationalDesignator: return 'd';
    case IdentityKey::CatalogNumber: return 'c';
    case IdentityKey::ExactId: return 'x';
    }
    return '?';
}

Schema union_schemas(const std::vector<Catalog>& catalogs, std::vector<SchemaDefect>* defects) {
    Schema merged = catalogs.front().kb.schema();
    for (std::size_t i = 1; i < catalogs.size(); ++i) {
        const Schema& other = catalogs[i].kb.schema();
        for (const auto& [id, def] : other.categories) {
            auto it = merged.categories.find(id);
            if (it == merged.categories.end()) {
                merged.categories.emplace(id, def);
            } else if (it->second.nl_definition != def.nl_definition ||
                       it->second.parents != def.parents) {
                if (defects)
                    defects->push_back({"SchemaMergeConflict", id,
                                        "category differs in '" + catalogs[i].source_id +
                                            "'; kept the first definition"});
            }
        }
        for (const auto& [id, def] : other.relations) {
            auto it = merged.relations.find(id);
            if (it == merged.relations.end()) {
                merged.relations.emplace(id, def);
            } else {
                const RelationDef& mine = it->second;
                bool same = mine.arity == def.arity && mine.domain == def.domain &&
                            mine.range == def.range && mine.transitive == def.transitive &&
                            mine.symmetric == def.symmetric && mine.functional == def.functional &&
                            mine.inverse_of == def.inverse_of;
                if (!same && defects)
                    defects->push_back({"SchemaMergeConflict", id,
                                        "relation differs in '" + catalogs[i].source_id +
                                            "'; kept the first definition"});
            }
        }
    }
    if (defects) {
        std::sort(defects->begin(), defects->end());
        defects->erase(std::unique(defects->begin(), defects->end()), defects->end());
    }
    return merged;
}

} // namespace

std::vector<Cluster> resolve_identity(const std::vector<Catalog>& catalogs,
                                      const MergePolicy& policy) {
    if (policy.identity_keys.empty())
        throw Error(ErrorCode::SchemaConflict, "merge policy needs at least one identity key");

    std::vector<ClusterMember> nodes;
    for (const Catalog& catalog : catalogs)
        for (const auto& [id, individual] : catalog.kb.individuals()) {
            (void)individual;
            nodes.push_back({catalog.source_id, id});
        }

    std::map<ClusterMember, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

    UnionFind uf(nodes.size());
    for (IdentityKey key : policy.identity_keys) {
        std::map<std::string, std::size_t> first_with_value;
        auto link = [&](std::size_t node, const std::string& value) {
            std::string tagged = std::string(1, key_tag(key)) + ':' + value;
            auto [it, inserted] = first_with_value.emplace(tagged, node);
            if (!inserted) uf.unite(it->second, node);
        };
        for (const Catalog& catalog : catalogs) {
            if (key == IdentityKey::ExactId) {
                for (const auto& [id, individual] : catalog.kb.individuals()) {
                    (void)individual;
                    link(index.at({catalog.source_id, id}), id);
                }
                continue;
            }
            const char* relation = key_relation(key);
            for (const Assertion& a : catalog.kb.assertions()) {
                if (a.instantiation || a.predicate != relation) continue;
                if (a.object.kind != ValueKind::Text) continue;
                link(index.at({catalog.source_id, a.subject}), a.object.text);
            }
        }
    }

    std::map<std::size_t, Cluster> grouped;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Cluster& cluster = grouped[uf.find(i)];
        cluster.members.push_back(nodes[i]);
        if (cluster.canonical.empty() || nodes[i].individual < cluster.canonical)
            cluster.canonical = nodes[i].individual;
    }
    std::vector<Cluster> clusters;
    for (auto& [root, cluster] : grouped) {
        (void)root;
        std::sort(cluster.members.begin(), cluster.members.end());
        clusters.push_back(std::move(cluster));
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.canonical < b.canonical; });
    return clusters;
}

Catalog merge_hub(const std::vector<Catalog>& catalogs, const MergePolicy& policy,
                  const std::string& master_id, MergeReport* report) {
    if (catalogs.empty()) return {master_id, KnowledgeBase{}};

    Schema merged_schema;
    if (policy.schema_rule == SchemaRule::RequireIdentical) {
        for (std::size_t i = 1; i < catalogs.size(); ++i)
            if (!schemas_identical(catalogs.front().kb.schema(), catalogs[i].kb.schema()))
                throw Error(ErrorCode::SchemaConflict,
                            "schema of '" + catalogs[i].source_id + "' differs from '" +
                                catalogs.front().source_id + "'");
        merged_schema = catalogs.front().kb.schema();
    } else {
        merged_schema = union_schemas(catalogs, report ? &report->schema_defects : nullptr);
    }

    std::vector<Cluster> clusters = resolve_identity(catalogs, policy);
    if (report) report->clusters = clusters;
    std::map<ClusterMember, std::string> canonical;
    for (const Cluster& cluster : clusters)
        for (const ClusterMember& member : cluster.members)
            canonical.emplace(member, cluster.canonical);

    KnowledgeBase master(merged_schema);
    for (const Catalog& catalog : catalogs) {
        auto rename = [&](const std::string& id) {
            return canonical.at(ClusterMember{catalog.source_id, id});
        };
        for (const auto& [id, individual] : catalog.kb.individuals()) {
            (void)individual;
            master.ensure_individual(rename(id));
        }
        for (const std::string& skolem : catalog.kb.skolems()) master.mark_skolem(rename(skolem));
        for (const Assertion& a : catalog.kb.assertions()) {
            Assertion rewritten = a;
            rewritten.subject = rename(a.subject);
            if (!a.instantiation && a.object.kind == ValueKind::Symbol)
                rewritten.object = Value::make_symbol(rename(a.object.symbol));
            master.ingest(rewritten);
        }
    }

    if (policy.conflict_rule == ConflictRule::LatestEpochWins) {
        // keep, per (subject, predicate), only the facts carrying the latest
        // time reference; untimed facts are never superseded
        std::map<std::string, TimeRef> latest;
        for (const Assertion& a : master.assertions()) {
            if (!a.at) continue;
            std::string group = a.subject + '\x1f' + a.predicate;
            auto it = latest.find(group);
            if (it == latest.end() || it->second.before(*a.at)) latest.insert_or_assign(group, *a.at);
        }
        KnowledgeBase filtered(merged_schema);
        for (const auto& [id, individual] : master.individuals()) {
            (void)individual;
            filtered.ensure_individual(id);
        }
        for (const std::string& skolem : master.skolems()) filtered.mark_skolem(skolem);
        for (const Assertion& a : master.assertions()) {
            if (a.at) {
                const TimeRef& max_at = latest.at(a.subject + '\x1f' + a.predicate);
                if (a.at->before(max_at)) continue;
            }
            filtered.ingest(a);
        }
        master = std::move(filtered);
    }

    return {master_id, std::move(master)};
}

std::pair<Catalog, Catalog> sync_peer(const Catalog& a, const Catalog& b,
                                      const MergePolicy& policy) {
    Catalog joint = merge_hub({a, b}, policy, "sync");
    return {Catalog{a.source_id, joint.kb}, Catalog{b.source_id, joint.kb}};
}

Catalog load_catalog(const std::string& path) {
    std::filesystem::path dir(path);
    std::string source_id = dir.filename().string();
    if (source_id.empty()) source_id = dir.parent_path().filename().string();
    Catalog catalog{source_id, load_kb(path, source_id)};
    // optional *.tle files ride along with the facts
    std::vector<std::string> tle_files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".tle") tle_files.push_back(entry.path().string());
    std::sort(tle_files.begin(), tle_files.end());
    for (const std::string& file : tle_files)
        for (const TleEntry& entry : read_tle_file(file, /*strict=*/false))
            annotate_tle(catalog.kb, entry.record, subject_for_entry(entry), source_id);
    return catalog;
}

void save_catalog(const Catalog& catalog, const std::string& root_dir, bool with_provenance,
                  const MergeReport* report) {
    std::filesystem::path dir = std::filesystem::path(root_dir) / catalog.source_id;
    save_kb(catalog.kb, dir.string());
    if (with_provenance) {
        std::ofstream out(dir / "provenance.tsv");
        if (!out) throw Error(ErrorCode::IoError, "cannot write provenance.tsv under '" + root_dir + "'");
        if (report) {
            for (const Cluster& cluster : report->clusters) {
                if (cluster.members.size() < 2) continue;
                out << "# same_as " << cluster.canonical << " <-";
                for (const ClusterMember& member : cluster.members)
                    out << ' ' << member.source_id << ':' << member.individual;
                out << '\n';
            }
        }
        write_provenance_tsv(catalog.kb, out);
    }
}

void write_provenance_tsv(const KnowledgeBase& kb, std::ostream& out) {
    for (const Assertion& a : kb.assertions()) {
        // FNV-1a over the identity key: a stable per-fact handle
        std::uint64_t hash = 1469598103934665603ULL;
        for (char c : a.identity_key()) {
            hash ^= static_cast<unsigned char>(c);
            hash *= 1099511628211ULL;
        }
        std::set<std::string> sources;
        for (const Provenance& p : a.provenance) sources.insert(p.source);
        char hex[20];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
        out << hex << '\t';
        bool first = true;
        for (const auto& source : sources) {
            if (!first) out << ',';
            out << source;
            first = false;
        }
        out << '\n';
    }
}

} // namespace odo

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "odo/kb.hpp"

namespace odo {

/// A named knowledge base; the unit of federation. The source id is stamped
/// into the provenance of every assertion loaded under it.
struct Catalog {
    std::string source_id;
    KnowledgeBase kb;
};

enum class IdentityKey { InternationalDesignator, CatalogNumber, ExactId };
enum class ConflictRule { LatestEpochWins, KeepAll };
enum class SchemaRule { RequireIdentical, UnionWithDefectReport };

struct MergePolicy {
    std::vector<IdentityKey> identity_keys = {IdentityKey::InternationalDesignator,
                                              IdentityKey::CatalogNumber, IdentityKey::ExactId};
    ConflictRule conflict_rule = ConflictRule::KeepAll;
    SchemaRule schema_rule = SchemaRule::RequireIdentical;
};

struct ClusterMember {
    std::string source_id;
    std::string individual;

    auto operator<=>(const ClusterMember&) const = default;
};

struct Cluster {
    std::string canonical; // lexicographically least member id
    std::vector<ClusterMember> members;
};

struct MergeReport {
    std::vector<SchemaDefect> schema_defects;
    std::vector<Cluster> clusters;
};

/// Groups individuals across catalogs by shared identity-key values
/// (transitive closure of pairwise matches). Every individual lands in
/// exactly one cluster; unmatched ones are singletons.
std::vector<Cluster> resolve_identity(const std::vector<Catalog>& catalogs,
                                      const MergePolicy& policy);

/// Joint master catalog: every source fact rewritten onto canonical
/// individuals, provenance preserved per source. The logical fact set does
/// not depend on catalog input order.
Catalog merge_hub(const std::vector<Catalog>& catalogs, const MergePolicy& policy,
                  const std::string& master_id = "master", MergeReport* report = nullptr);

/// Pairwise synchronization: both outputs carry the two-way merge's fact set
/// under their own source ids. A second sync changes nothing.
std::pair<Catalog, Catalog> sync_peer(const Catalog& a, const Catalog& b,
                                      const MergePolicy& policy);

// directory layout: <root>/<source_id>/{schema.odo, facts.odo [, *.tle]}
Catalog load_catalog(const std::string& path);

/// Writes the catalog directory; with_provenance adds provenance.tsv (fact
/// hash, source list), prefixed by same_as notes for multi-member identity
/// clusters when a merge report is supplied.
void save_catalog(const Catalog& catalog, const std::string& root_dir,
                  bool with_provenance = false, const MergeReport* report = nullptr);

void write_provenance_tsv(const KnowledgeBase& kb, std::ostream& out);

} // namespace odo

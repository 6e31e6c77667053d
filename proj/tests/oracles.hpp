#pragma once

// Independent reference implementations used only by tests. These must stay
// decoupled from the library code paths they check: closures are computed by
// dense Floyd-Warshall sweeps, identity clusters by BFS over an explicit
// match graph, and mean motion by the two-body relation in the opposite
// direction.

#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "odo/ontology.hpp"

namespace oracles {

/// Dense reflexive-transitive closure over child->parent edges.
struct ClosureOracle {
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    std::vector<std::vector<bool>> reach; // reach[a][b]: b is an ancestor of a

    explicit ClosureOracle(const odo::Schema& schema) {
        for (const auto& [id, def] : schema.categories) {
            (void)def;
            index.emplace(id, names.size());
            names.push_back(id);
        }
        const std::size_t n = names.size();
        reach.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
        for (const auto& [id, def] : schema.categories)
            for (const auto& parent : def.parents)
                if (index.count(parent)) reach[index.at(id)][index.at(parent)] = true;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (!reach[i][k]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
            }
    }

    bool subclass(const std::string& a, const std::string& b) const {
        return reach[index.at(a)][index.at(b)];
    }

    std::set<std::string> ancestors_of(const std::string& a) const {
        std::set<std::string> result;
        std::size_t i = index.at(a);
        for (std::size_t j = 0; j < names.size(); ++j)
            if (reach[i][j]) result.insert(names[j]);
        return result;
    }

    std::set<std::string> descendants_of(const std::string& a) const {
        std::set<std::string> result;
        std::size_t j = index.at(a);
        for (std::size_t i = 0; i < names.size(); ++i)
            if (reach[i][j]) result.insert(names[i]);
        return result;
    }
};

/// Random acyclic schema: parents always have a lower index than children.
inline odo::Schema random_dag_schema(std::mt19937& rng, int max_terms) {
    std::uniform_int_distribution<int> size_dist(1, max_terms);
    const int n = size_dist(rng);
    odo::Schema schema;
    for (int i = 0; i < n; ++i) {
        odo::CategoryDef def;
        def.id = "T" + std::to_string(i);
        if (i > 0) {
            std::uniform_int_distribution<int> parent_count(0, std::min(i, 3));
            int count = parent_count(rng);
            std::uniform_int_distribution<int> pick(0, i - 1);
            for (int p = 0; p < count; ++p) def.parents.insert("T" + std::to_string(pick(rng)));
        }
        schema = add_category(schema, def);
    }
    return schema;
}

/// Nonempty-path reachability over a directed edge list (for transitive
/// closure checks), computed by BFS from every node.
inline std::set<std::pair<std::string, std::string>>
reachability(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::map<std::string, std::set<std::string>> succ;
    std::set<std::string> nodes;
    for (const auto& [a, b] : edges) {
        succ[a].insert(b);
        nodes.insert(a);
        nodes.insert(b);
    }
    std::set<std::pair<std::string, std::string>> result;
    for (const auto& start : nodes) {
        std::set<std::string> seen;
        std::deque<std::string> frontier;
        for (const auto& next : succ[start])
            if (seen.insert(next).second) frontier.push_back(next);
        while (!frontier.empty()) {
            std::string cur = frontier.front();
            frontier.pop_front();
            for (const auto& next : succ[cur])
                if (seen.insert(next).second) frontier.push_back(next);
        }
        for (const auto& node : seen) result.insert({start, node});
    }
    return result;
}

/// Connected components by BFS over an undirected match graph; the reference
/// for identity clustering.
inline std::vector<std::set<std::string>>
components(const std::set<std::string>& nodes,
           const std::vector<std::pair<std::string, std::string>>& matches) {
    std::map<std::string, std::set<std::string>> adj;
    for (const auto& [a, b] : matches) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<std::set<std::string>> result;
    std::set<std::string> assigned;
    for (const auto& start : nodes) {
        if (assigned.count(start)) continue;
        std::set<std::string> component{start};
        std::deque<std::string> frontier{start};
        while (!frontier.empty()) {
            std::string cur = frontier.front();
            frontier.pop_front();
            for (const auto& next : adj[cur])
                if (component.insert(next).second) frontier.push_back(next);
        }
        assigned.insert(component.begin(), component.end());
        result.push_back(std::move(component));
    }
    return result;
}

/// rev/day from semi-major axis, inverting the serializer-side relation.
inline double mean_motion_from_sma(double a_km) {
    constexpr double mu = 398600.4418;
    constexpr double pi = 3.14159265358979323846;
    double n_rad = std::sqrt(mu / (a_km * a_km * a_km)); // rad/s
    return n_rad * 86400.0 / (2.0 * pi);
}

} // namespace oracles

#pragma once

// Census pipelines and persistence: the GRR lower-bound construction through
// nilpotent involution quotients, the 5-arc-transitive cover search over the
// Tutte-Coxeter base, group catalogs for involution-generation counts, and
// the graph6 cross-check against external census data.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayley/bigcount.hpp"
#include "cayley/graph.hpp"

namespace cayley {

using Json = nlohmann::ordered_json;

struct CensusRecord {
    std::vector<std::uint8_t> certificate;
    int order = 0;
    int valency = 0;
    bool vertex_transitive = false;
    bool grr = false;
    bool cayley = false;  // known Cayley by construction
    int max_s = -1;
    BigCount aut_order = 0;
    Json provenance;
    Graph graph;

    Json to_json(const std::string& id) const;
};

std::string certificate_hex(const std::vector<std::uint8_t>& cert);

/// Append-only directory store: records/<id>.g6 + records/<id>.json plus a
/// sorted index. Insertion dedups on the full certificate; graphs are stored
/// canonically relabeled so reruns are byte-identical.
class Store {
public:
    explicit Store(const std::filesystem::path& dir);

    /// True if inserted, false if an equal certificate was already present.
    bool add(const CensusRecord& record);

    const std::vector<CensusRecord>& records() const { return records_; }
    const std::filesystem::path& dir() const { return dir_; }

private:
    void load();
    void write_index() const;
    std::filesystem::path dir_;
    std::vector<CensusRecord> records_;
    std::vector<std::string> ids_;
};

struct CatalogEntry {
    FiniteGroup group;
    std::string name;
};

struct Catalog {
    std::vector<CatalogEntry> groups;
    /// exhaustive[k] = true when every isomorphism class of order k <=
    /// max_order is present (guaranteed for orders up to 8).
    std::vector<bool> exhaustive;
};

/// Groups of order <= max_order (max 16): complete lists for orders 1..8
/// built from presentations and verified pairwise non-isomorphic, plus the
/// cyclic/dihedral/elementary-abelian families above that.
Catalog small_group_catalog(int max_order);

/// Number of groups of order 2^m admitting a generating set of d distinct
/// involutions, by exhaustive search over the verified catalog (m <= 3).
int g_count(int d, int m);

struct PipelineConfig {
    int d = 3;
    int c = 3;
    int m = -1;  // target order exponent; -1 = every achievable exponent
    long coset_cap = kDefaultCosetCap;
    int workers = 1;
    std::string store_path;  // empty = in-memory only
    int k_max = 1;           // five-arc pipeline fiber exponent cap
};

struct PipelineResult {
    std::vector<CensusRecord> records;
    Json stats;
};

/// Builds Cayley graphs on quotients of the d-involution group whose defining
/// subgroup is moved by every nontrivial generator permutation, verifies the
/// connection-set normalizer condition and (for d = 3) the GRR property from
/// scratch, and dedups by certificate.
PipelineResult grr_lower_pipeline(const PipelineConfig& cfg, Store* store = nullptr);

/// Enumerates F2^k voltage covers of the Tutte-Coxeter graph (complete up to
/// isomorphism for k <= 1; restricted to fully symmetric voltage classes for
/// k >= 2), keeps connected derived graphs that are 5-arc-transitive, and
/// re-verifies the 48n automorphism count on every emitted record.
PipelineResult five_arc_pipeline(const PipelineConfig& cfg, Store* store = nullptr);

/// Per-order predicate counts plus cumulative counts, stable-sorted.
Json census_report(const std::string& store_path);

struct CrosscheckReport {
    int lines = 0;
    int ingested = 0;       // graphs with order <= cap
    int large_aut = 0;      // |Aut| > n^2 among those
    Json to_json() const;
};

/// Reads an external graph6 census and counts graphs of order <= order_cap
/// with |Aut| > n^2 (malformed lines are reported with their line number).
CrosscheckReport ingest_census_crosscheck(const std::string& path, int order_cap = 48);

}  // namespace cayley

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cayley/census.hpp"
#include "cayley/presentation.hpp"

using namespace cayley;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("cayley-test-" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Full byte map of a store directory.
std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file())
            out[fs::relative(entry.path(), dir).string()] = slurp(entry.path());
    return out;
}

CensusRecord record_for(const Graph& g, const char* tag) {
    PermGroup aut = automorphism_group(g);
    CensusRecord r;
    r.graph = g;
    r.certificate = g.certificate();
    r.order = g.order();
    r.valency = g.degree(0);
    r.vertex_transitive = aut.is_transitive();
    r.grr = aut.is_regular();
    r.cayley = false;
    r.max_s = g.is_connected() ? s_arc_transitivity(g, 5, aut).max_s : -1;
    r.aut_order = aut.order();
    r.provenance["pipeline"] = tag;
    return r;
}

}  // namespace

TEST_CASE("small group catalog") {
    Catalog cat = small_group_catalog(8);
    int counts[9] = {0};
    for (const auto& e : cat.groups) ++counts[e.group.order()];
    CHECK(counts[1] == 1);
    CHECK(counts[2] == 1);
    CHECK(counts[3] == 1);
    CHECK(counts[4] == 2);
    CHECK(counts[5] == 1);
    CHECK(counts[6] == 2);
    CHECK(counts[7] == 1);
    CHECK(counts[8] == 5);
    for (int o = 1; o <= 8; ++o) CHECK(cat.exhaustive[o]);

    SUBCASE("order-8 entries are pairwise non-isomorphic") {
        std::vector<const FiniteGroup*> eights;
        for (const auto& e : cat.groups)
            if (e.group.order() == 8) eights.push_back(&e.group);
        for (std::size_t i = 0; i < eights.size(); ++i)
            for (std::size_t j = i + 1; j < eights.size(); ++j)
                CHECK_FALSE(are_isomorphic(*eights[i], *eights[j]));
    }
    SUBCASE("another presentation of order 8 collapses onto a catalog entry") {
        // <a,b | a^4, b^2, (ab)^2> is dihedral again.
        Presentation p;
        p.ngens = 2;
        p.relators = {{1, 1, 1, 1}, {2, 2}, {1, 2, 1, 2}};
        FiniteGroup g = coset_table_to_group(todd_coxeter(p, {}));
        REQUIRE(g.order() == 8);
        int hits = 0;
        for (const auto& e : cat.groups)
            if (e.group.order() == 8 && are_isomorphic(e.group, g)) ++hits;
        CHECK(hits == 1);
    }
    SUBCASE("orders above eight carry families but no exhaustive flag") {
        Catalog big = small_group_catalog(16);
        CHECK_FALSE(big.exhaustive[16]);
        int sixteens = 0;
        for (const auto& e : big.groups)
            if (e.group.order() == 16) ++sixteens;
        CHECK(sixteens == 3);  // cyclic, dihedral, elementary abelian
    }
    CHECK_THROWS_AS(small_group_catalog(17), PreconditionError);
}

TEST_CASE("involution generation counts") {
    CHECK(g_count(3, 0) == 0);
    CHECK(g_count(3, 1) == 0);  // a single involution cannot make a 3-set
    CHECK(g_count(3, 2) == 1);  // the Klein four group
    CHECK(g_count(3, 3) == 2);  // elementary abelian and dihedral
    CHECK(g_count(4, 3) == 2);  // same two groups carry 4-involution sets
    CHECK_THROWS_AS(g_count(3, 4), PreconditionError);
}

TEST_CASE("store round trip, dedup, and integrity") {
    fs::path dir = fresh_dir("store");
    Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    Graph c6 = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    {
        Store store(dir);
        CHECK(store.add(record_for(k4, "test")));
        CHECK(store.add(record_for(c6, "test")));
        // Same isomorphism class under a relabeling: rejected as duplicate.
        Graph k4b = k4.relabeled(Permutation({2, 0, 3, 1}));
        CHECK_FALSE(store.add(record_for(k4b, "test")));
        CHECK(store.records().size() == 2);
    }
    {
        Store reloaded(dir);
        CHECK(reloaded.records().size() == 2);
        // Reload and re-add: idempotent.
        CHECK_FALSE(reloaded.add(record_for(k4, "test")));
        for (const auto& r : reloaded.records())
            CHECK(r.graph.certificate() == r.certificate);
    }
    SUBCASE("tampering is caught by re-verification") {
        fs::path victim;
        for (const auto& entry : fs::directory_iterator(dir / "records"))
            if (entry.path().extension() == ".g6") victim = entry.path();
        REQUIRE(!victim.empty());
        std::ofstream out(victim, std::ios::trunc);
        out << to_graph6(Graph::from_edges(4, {{0, 1}})) << '\n';
        out.close();
        CHECK_THROWS_AS(Store{dir}, IntegrityError);
    }
}

TEST_CASE("census report") {
    SUBCASE("empty store reports zero everywhere") {
        fs::path dir = fresh_dir("report-empty");
        Store store(dir);
        Json rep = census_report(dir.string());
        CHECK(rep["total_records"] == 0);
        CHECK(rep["per_order"].empty());
    }
    SUBCASE("a lone eight-cage record is vertex-transitive but no GRR") {
        fs::path dir = fresh_dir("report-tc");
        {
            Store store(dir);
            store.add(record_for(tutte_coxeter_graph(), "test"));
        }
        Json rep = census_report(dir.string());
        REQUIRE(rep["per_order"].size() == 1);
        const Json& row = rep["per_order"][0];
        CHECK(row["order"] == 30);
        CHECK(row["valency"] == 3);
        CHECK(row["count_vt"] == 1);
        CHECK(row["count_grr"] == 0);
        CHECK(row["count_5at"] == 1);
    }
}

TEST_CASE("grr pipeline emits verified records") {
    PipelineConfig cfg;
    cfg.d = 3;
    cfg.c = 3;
    cfg.m = 7;
    fs::path dir = fresh_dir("grr");
    Store store(dir);
    PipelineResult res = grr_lower_pipeline(cfg, &store);
    REQUIRE(res.records.size() >= 1);
    CHECK(store.records().size() == res.records.size());
    for (const auto& r : res.records) {
        CHECK(r.order == 128);
        CHECK(r.valency == 3);
        CHECK(r.cayley);
        CHECK(r.vertex_transitive);
        CHECK(r.grr);
        // Re-derive every stored flag from the stored graph alone.
        const Graph& g = r.graph;
        CHECK(g.is_connected());
        int valency = 0;
        CHECK(g.is_regular_graph(&valency));
        CHECK(valency == 3);
        PermGroup aut = automorphism_group(g);
        CHECK(aut.order() == r.aut_order);
        CHECK(aut.is_regular() == r.grr);
        CHECK(aut.is_transitive() == r.vertex_transitive);
        CHECK(s_arc_transitivity(g, 5, aut).max_s == r.max_s);
    }
    SUBCASE("no two records share a certificate") {
        for (std::size_t i = 0; i < res.records.size(); ++i)
            for (std::size_t j = i + 1; j < res.records.size(); ++j)
                CHECK_FALSE(res.records[i].certificate == res.records[j].certificate);
    }
    SUBCASE("unachievable target orders are refused with the achievable range") {
        PipelineConfig bad = cfg;
        bad.m = 20;
        CHECK_THROWS_WITH_AS(grr_lower_pipeline(bad), doctest::Contains("achievable"),
                             PreconditionError);
    }
    SUBCASE("the extreme codimensions are invariant and therefore empty") {
        PipelineConfig edge = cfg;
        edge.m = 6;  // s = 0: the whole space is permutation-invariant
        CHECK(grr_lower_pipeline(edge).records.empty());
        edge.m = 11;  // s = r: the zero space is permutation-invariant
        CHECK(grr_lower_pipeline(edge).records.empty());
    }
}

TEST_CASE("five-arc pipeline reproduces the eight-cage at k = 0") {
    PipelineConfig cfg;
    cfg.k_max = 0;
    PipelineResult res = five_arc_pipeline(cfg);
    REQUIRE(res.records.size() == 1);
    const CensusRecord& r = res.records[0];
    CHECK(r.order == 30);
    CHECK(r.max_s == 5);
    CHECK(r.aut_order == 1440);
    CHECK(r.certificate == tutte_coxeter_graph().certificate());
}

TEST_CASE("five-arc pipeline filters zero voltages and verifies emissions") {
    PipelineConfig cfg;
    cfg.k_max = 1;
    PipelineResult res = five_arc_pipeline(cfg);
    CHECK(res.stats["disconnected_filtered"].get<long>() >= 1);
    for (const auto& r : res.records) {
        CHECK(r.max_s == 5);
        CHECK(r.aut_order == BigCount(48) * r.order);
        PermGroup aut = automorphism_group(r.graph);
        CHECK(aut.point_stabilizer(0).order() == 48);
    }
}

TEST_CASE("pipeline reruns are byte-identical with one worker") {
    PipelineConfig cfg;
    cfg.d = 3;
    cfg.c = 3;
    cfg.m = 7;
    cfg.workers = 1;
    fs::path dir1 = fresh_dir("det1");
    fs::path dir2 = fresh_dir("det2");
    {
        Store s1(dir1);
        grr_lower_pipeline(cfg, &s1);
    }
    {
        Store s2(dir2);
        grr_lower_pipeline(cfg, &s2);
    }
    CHECK(dir_bytes(dir1) == dir_bytes(dir2));

    SUBCASE("a second run into the same store changes nothing") {
        auto before = dir_bytes(dir1);
        Store again(dir1);
        grr_lower_pipeline(cfg, &again);
        CHECK(dir_bytes(dir1) == before);
    }
    SUBCASE("more workers keep the same store bytes") {
        PipelineConfig par = cfg;
        par.workers = 4;
        fs::path dir3 = fresh_dir("det3");
        {
            Store s3(dir3);
            grr_lower_pipeline(par, &s3);
        }
        CHECK(dir_bytes(dir3) == dir_bytes(dir1));
    }
}

TEST_CASE("external census crosscheck") {
    fs::path dir = fresh_dir("crosscheck");
    fs::create_directories(dir);
    SUBCASE("empty file counts nothing") {
        fs::path file = dir / "empty.g6";
        std::ofstream(file).close();
        CrosscheckReport rep = ingest_census_crosscheck(file.string());
        CHECK(rep.ingested == 0);
        CHECK(rep.large_aut == 0);
    }
    SUBCASE("the complete graph on four vertices has a large group") {
        fs::path file = dir / "k4.g6";
        {
            std::ofstream out(file);
            out << ">>graph6<<" << '\n';  // optional header line
            out << "C~" << '\n';
        }
        CrosscheckReport rep = ingest_census_crosscheck(file.string());
        CHECK(rep.ingested == 1);
        CHECK(rep.large_aut == 1);  // 24 > 16
    }
    SUBCASE("orders beyond the cap are skipped") {
        fs::path file = dir / "mixed.g6";
        {
            std::ofstream out(file);
            out << "C~" << '\n';
            out << to_graph6(tutte_coxeter_graph()) << '\n';
        }
        CrosscheckReport rep = ingest_census_crosscheck(file.string(), 10);
        CHECK(rep.lines == 2);
        CHECK(rep.ingested == 1);
    }
    SUBCASE("malformed lines name their line number") {
        fs::path file = dir / "bad.g6";
        {
            std::ofstream out(file);
            out << "C~" << '\n';
            out << "C" << '\n';
        }
        CHECK_THROWS_WITH_AS(ingest_census_crosscheck(file.string()),
                             doctest::Contains("line 2"), PreconditionError);
    }
    SUBCASE("missing files are an error") {
        CHECK_THROWS_AS(ingest_census_crosscheck((dir / "absent.g6").string()),
                        PreconditionError);
    }
}

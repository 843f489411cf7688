#include <doctest.h>

#include <random>
#include <sstream>

#include "cayley/graph.hpp"
#include "cayley/presentation.hpp"
#include "oracles.hpp"

using namespace cayley;

namespace {

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph::from_edges(n, es);
}

Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, es);
}

Graph petersen() {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 5; ++i) {
        es.emplace_back(i, (i + 1) % 5);
        es.emplace_back(i, i + 5);
        es.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return Graph::from_edges(10, es);
}

Permutation random_permutation(int n, std::mt19937& rng) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
}

}  // namespace

TEST_CASE("graph basics") {
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}});
    CHECK(g.edge_count() == 2);  // duplicate collapsed
    CHECK_FALSE(g.is_connected());
    CHECK(g.girth() == 0);  // forest
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), PreconditionError);
    CHECK(complete_graph(4).girth() == 3);
    CHECK(cycle_graph(6).girth() == 6);
}

TEST_CASE("cayley graphs") {
    SUBCASE("order two gives a single edge") {
        Graph g = cayley_graph(cyclic_group(2), {1});
        CHECK(g.order() == 2);
        CHECK(g.edge_count() == 1);
    }
    SUBCASE("Klein four group with all involutions gives the complete graph") {
        FiniteGroup v4 = elementary_abelian_group(2);
        Graph g = cayley_graph(v4, {1, 2, 3});
        // Direct adjacency oracle: distinct elements differ by an involution.
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v)
                CHECK(g.adjacent(u, v) == (u != v));
    }
    SUBCASE("marked involution quotient gives a cubic vertex-transitive graph on 64") {
        MarkedQuotient q = build_involution_quotient(3, 2);
        Graph g = cayley_graph(q.group, q.xgens);
        CHECK(g.order() == 64);
        int valency = 0;
        CHECK(g.is_regular_graph(&valency));
        CHECK(valency == 3);
        CHECK(g.is_connected());
        PermGroup aut = automorphism_group(g);
        CHECK(aut.is_transitive());
        // The right-regular action sifts into the computed group.
        for (int x : q.group.gens())
            CHECK(aut.contains(right_multiplication(q.group, x)));
    }
    SUBCASE("bad connection sets are rejected") {
        FiniteGroup c4 = cyclic_group(4);
        CHECK_THROWS_AS(cayley_graph(c4, {0, 1}), PreconditionError);  // identity
        CHECK_THROWS_AS(cayley_graph(c4, {1}), PreconditionError);     // not inverse-closed
        CHECK(cayley_graph(c4, {1, 3}).edge_count() == 4);             // the 4-cycle
    }
}

TEST_CASE("regular representation acts by automorphisms on random Cayley graphs") {
    std::mt19937 rng(777);
    std::vector<FiniteGroup> pool;
    for (int n : {6, 8, 12, 16, 24, 32, 64}) pool.push_back(cyclic_group(n));
    for (int n : {8, 12, 16, 32, 64}) pool.push_back(dihedral_group(n));
    for (int r : {3, 4, 5, 6}) pool.push_back(elementary_abelian_group(r));
    int done = 0;
    while (done < 100) {
        const FiniteGroup& g = pool[rng() % pool.size()];
        std::set<int> s;
        int picks = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < picks; ++i) {
            int e = 1 + static_cast<int>(rng() % (g.order() - 1));
            s.insert(e);
            s.insert(g.inverse(e));
        }
        Graph graph = cayley_graph(g, std::vector<int>(s.begin(), s.end()));
        PermGroup aut = automorphism_group(graph);
        for (int x : g.gens()) CHECK(aut.contains(right_multiplication(g, x)));
        ++done;
    }
}

TEST_CASE("coset graphs") {
    SUBCASE("cyclic group over the trivial subgroup is the cycle") {
        FiniteGroup c6 = cyclic_group(6);
        Subgroup trivial = make_subgroup(c6, {});
        Graph g = coset_graph(c6, trivial, 1);
        CHECK(g.order() == 6);
        CHECK(g.certificate() == cycle_graph(6).certificate());
    }
    SUBCASE("symmetric group of degree 3 over a reflection") {
        // Table model: the dihedral group of order 6 is Sym(3).
        FiniteGroup s3 = dihedral_group(6);
        int refl1 = s3.gens()[1];
        int refl2 = s3.mul(s3.gens()[0], refl1);
        REQUIRE(s3.is_involution(refl2));
        Subgroup a = make_subgroup(s3, {refl1});
        Graph g = coset_graph(s3, a, refl2);
        CHECK(g.order() == 3);
        // Brute coset expansion: the three cosets pair up into a triangle.
        CHECK(g.edge_count() == 3);
        CHECK(g.certificate() == complete_graph(3).certificate());
    }
    SUBCASE("b inside the subgroup is rejected") {
        FiniteGroup c6 = cyclic_group(6);
        Subgroup whole = make_subgroup(c6, {1});
        CHECK_THROWS_AS(coset_graph(c6, whole, 3), PreconditionError);
    }
    SUBCASE("the eight-cage rebuilds from its own automorphism group") {
        const Graph& tc = tutte_coxeter_graph();
        PermGroup aut = automorphism_group(tc);
        auto elements = aut.elements();
        REQUIRE(elements.size() == 1440);
        std::vector<Permutation> stab;
        for (const auto& p : elements)
            if (p(0) == 0) stab.push_back(p);
        REQUIRE(stab.size() == 48);
        int w = tc.neighbors(0)[0];
        Permutation arc_swap;
        for (const auto& p : elements)
            if (p(0) == w && p(w) == 0) {
                arc_swap = p;
                break;
            }
        REQUIRE(arc_swap.degree() == 30);
        Graph rebuilt = coset_graph(elements, stab, arc_swap);
        CHECK(rebuilt.order() == 30);
        CHECK(rebuilt.certificate() == tc.certificate());
    }
}

TEST_CASE("voltage covers") {
    SUBCASE("zero fiber keeps the base") {
        Graph k4 = complete_graph(4);
        std::map<std::pair<int, int>, std::uint32_t> volt;
        for (auto e : k4.edges()) volt[e] = 0;
        Graph cover = voltage_cover(k4, 0, volt);
        CHECK(cover.certificate() == k4.certificate());
    }
    SUBCASE("triangle with one live edge unrolls to the hexagon") {
        Graph tri = complete_graph(3);
        std::map<std::pair<int, int>, std::uint32_t> volt;
        for (auto e : tri.edges()) volt[e] = 0;
        volt[{0, 1}] = 1;
        Graph cover = voltage_cover(tri, 1, volt);
        CHECK(cover.order() == 6);
        CHECK(cover.certificate() == cycle_graph(6).certificate());
    }
    SUBCASE("complete graph with every edge live doubles to the cube") {
        Graph k4 = complete_graph(4);
        std::map<std::pair<int, int>, std::uint32_t> volt;
        for (auto e : k4.edges()) volt[e] = 1;
        Graph cover = voltage_cover(k4, 1, volt);
        // Bipartite double cover oracle: the 3-cube built directly.
        std::vector<std::pair<int, int>> cube_edges;
        for (int v = 0; v < 8; ++v)
            for (int b = 0; b < 3; ++b)
                if (v < (v ^ (1 << b))) cube_edges.emplace_back(v, v ^ (1 << b));
        Graph cube = Graph::from_edges(8, cube_edges);
        CHECK(cover.order() == 8);
        CHECK(cover.certificate() == cube.certificate());
    }
    SUBCASE("all-zero voltages at k=1 disconnect") {
        Graph tri = complete_graph(3);
        std::map<std::pair<int, int>, std::uint32_t> volt;
        for (auto e : tri.edges()) volt[e] = 0;
        CHECK_FALSE(voltage_cover(tri, 1, volt).is_connected());
    }
    SUBCASE("voltages outside the fiber are rejected") {
        Graph tri = complete_graph(3);
        std::map<std::pair<int, int>, std::uint32_t> volt;
        for (auto e : tri.edges()) volt[e] = 2;
        CHECK_THROWS_AS(voltage_cover(tri, 1, volt), DomainError);
    }
}

TEST_CASE("certificates separate and unify correctly") {
    std::mt19937 rng(2024);
    SUBCASE("relabeling invariance on a mixed corpus") {
        std::vector<Graph> corpus;
        corpus.push_back(petersen());
        corpus.push_back(complete_graph(5));
        corpus.push_back(cycle_graph(9));
        corpus.push_back(tutte_coxeter_graph());
        for (const Graph& g : corpus) {
            for (int trial = 0; trial < 10; ++trial) {
                Permutation p = random_permutation(g.order(), rng);
                CHECK(g.relabeled(p).certificate() == g.certificate());
            }
        }
    }
    SUBCASE("non-isomorphic pairs separate") {
        Graph prism = Graph::from_edges(
            6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
        CHECK(cycle_graph(6).certificate() != prism.certificate());
        CHECK(complete_graph(4).certificate() != cycle_graph(4).certificate());
        CHECK(cycle_graph(6).certificate() != complete_graph(3).certificate());
    }
    SUBCASE("exhaustive agreement with brute-force isomorphism on tiny graphs") {
        // All graphs on 4 vertices, pairwise: certificates match exactly when
        // a brute-force bijection search finds an isomorphism.
        std::vector<Graph> all;
        std::vector<std::pair<int, int>> slots = {{0, 1}, {0, 2}, {0, 3},
                                                  {1, 2}, {1, 3}, {2, 3}};
        for (int mask = 0; mask < 64; ++mask) {
            std::vector<std::pair<int, int>> es;
            for (int b = 0; b < 6; ++b)
                if ((mask >> b) & 1) es.push_back(slots[b]);
            all.push_back(Graph::from_edges(4, es));
        }
        auto brute_iso = [](const Graph& a, const Graph& b) {
            if (a.edge_count() != b.edge_count()) return false;
            std::vector<int> perm = {0, 1, 2, 3};
            do {
                bool ok = true;
                for (int u = 0; u < 4 && ok; ++u)
                    for (int v = u + 1; v < 4 && ok; ++v)
                        if (a.adjacent(u, v) != b.adjacent(perm[u], perm[v])) ok = false;
                if (ok) return true;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return false;
        };
        for (std::size_t i = 0; i < all.size(); i += 3)
            for (std::size_t j = i; j < all.size(); j += 5) {
                bool same_cert = all[i].certificate() == all[j].certificate();
                CHECK(same_cert == brute_iso(all[i], all[j]));
            }
    }
}

TEST_CASE("automorphism groups against brute-force enumeration") {
    SUBCASE("complete graph on four vertices") {
        Graph k4 = complete_graph(4);
        auto brute = oracle::all_graph_automorphisms(k4);
        CHECK(brute.size() == 24);
        PermGroup aut = automorphism_group(k4);
        CHECK(aut.order() == 24);
        for (const auto& img : brute) CHECK(aut.contains(Permutation(std::vector<int>(img))));
    }
    SUBCASE("hexagon has the twelve dihedral symmetries") {
        CHECK(automorphism_group(cycle_graph(6)).order() == 12);
    }
    SUBCASE("random small graphs agree with brute enumeration") {
        std::mt19937 rng(99);
        for (int trial = 0; trial < 25; ++trial) {
            int n = 3 + static_cast<int>(rng() % 5);  // 3..7
            std::vector<std::pair<int, int>> es;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng() % 2) es.emplace_back(u, v);
            Graph g = Graph::from_edges(n, es);
            CHECK(automorphism_group(g).order() ==
                  static_cast<long>(oracle::all_graph_automorphisms(g).size()));
        }
    }
    SUBCASE("the eight-cage") {
        CHECK(automorphism_group(tutte_coxeter_graph()).order() == 1440);
    }
}

TEST_CASE("arc transitivity") {
    SUBCASE("complete graph on four vertices is 2- but not 3-arc-transitive") {
        SArcReport rep = s_arc_transitivity(complete_graph(4), 3);
        CHECK(rep.max_s == 2);
        CHECK(rep.transitive_at[2]);
        CHECK_FALSE(rep.transitive_at[3]);
    }
    SUBCASE("Petersen graph tops out at 3") {
        CHECK(s_arc_transitivity(petersen(), 4).max_s == 3);
    }
    SUBCASE("eight-cage tops out at 5") {
        SArcReport rep = s_arc_transitivity(tutte_coxeter_graph(), 6);
        CHECK(rep.max_s == 5);
        CHECK_FALSE(rep.transitive_at[6]);
    }
    SUBCASE("non-vertex-transitive input reports -1") {
        Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
        CHECK(s_arc_transitivity(path, 2).max_s == -1);
    }
    SUBCASE("disconnected input is rejected") {
        Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
        CHECK_THROWS_AS(s_arc_transitivity(two, 2), PreconditionError);
    }
}

TEST_CASE("graphical regularity") {
    CHECK(is_grr(Graph::from_edges(2, {{0, 1}})));
    CHECK_FALSE(is_grr(complete_graph(4)));
}

TEST_CASE("transitive subgroup generators") {
    SUBCASE("rotation group of the cycle") {
        Graph c6 = cycle_graph(6);
        PermGroup rot = stabilizer_chain(6, {Permutation({1, 2, 3, 4, 5, 0})});
        auto gens = transitive_subgroup_gens(c6, rot);
        CHECK(gens.size() <= 2);
        CHECK(PermGroup::from_generators(6, gens).is_transitive());
    }
    SUBCASE("complete graph with its full symmetric group") {
        Graph k4 = complete_graph(4);
        auto gens = transitive_subgroup_gens(k4, automorphism_group(k4));
        CHECK(gens.size() == 3);
        CHECK(PermGroup::from_generators(4, gens).is_transitive());
    }
    SUBCASE("eight-cage with its full group") {
        const Graph& tc = tutte_coxeter_graph();
        auto gens = transitive_subgroup_gens(tc, automorphism_group(tc));
        CHECK(gens.size() == 3);
        CHECK(PermGroup::from_generators(30, gens).is_transitive());
    }
    SUBCASE("intransitive groups are rejected") {
        CHECK_THROWS_AS(transitive_subgroup_gens(cycle_graph(6), PermGroup::trivial(6)),
                        PreconditionError);
    }
}

TEST_CASE("graph6 interchange") {
    SUBCASE("the complete graph on four vertices is C~") {
        CHECK(to_graph6(complete_graph(4)) == "C~");
        CHECK(from_graph6("C~").certificate() == complete_graph(4).certificate());
    }
    SUBCASE("round trips are bit exact") {
        std::mt19937 rng(5);
        std::vector<Graph> corpus;
        corpus.push_back(Graph::from_edges(0, {}));
        corpus.push_back(Graph::from_edges(1, {}));
        corpus.push_back(petersen());
        corpus.push_back(tutte_coxeter_graph());
        {
            std::vector<std::pair<int, int>> es;
            for (int u = 0; u < 80; ++u)
                for (int v = u + 1; v < 80; ++v)
                    if (rng() % 7 == 0) es.emplace_back(u, v);
            corpus.push_back(Graph::from_edges(80, es));
        }
        for (const Graph& g : corpus) {
            std::string line = to_graph6(g);
            Graph back = from_graph6(line);
            CHECK(back == g);
            CHECK(to_graph6(back) == line);
        }
    }
    SUBCASE("malformed lines are rejected") {
        CHECK_THROWS_AS(from_graph6(""), PreconditionError);
        CHECK_THROWS_AS(from_graph6("C"), PreconditionError);       // truncated
        CHECK_THROWS_AS(from_graph6("C~~~"), PreconditionError);    // overlong
        CHECK_THROWS_AS(from_graph6("C\x01"), PreconditionError);   // byte out of range
    }
    SUBCASE("adjacency text fallback round trips") {
        Graph g = petersen();
        std::istringstream in(to_adjacency_text(g));
        CHECK(from_adjacency_text(in) == g);
    }
}

TEST_CASE("cubic graphs in reach stay within the five-arc bound") {
    // Tutte's bound as a tested property over the cubic corpus used here.
    std::vector<Graph> cubic;
    cubic.push_back(petersen());
    cubic.push_back(complete_graph(4));
    cubic.push_back(tutte_coxeter_graph());
    MarkedQuotient q = build_involution_quotient(3, 2);
    cubic.push_back(cayley_graph(q.group, q.xgens));
    for (const Graph& g : cubic) {
        int valency = 0;
        REQUIRE(g.is_regular_graph(&valency));
        REQUIRE(valency == 3);
        CHECK(s_arc_transitivity(g, 6).max_s <= 5);
    }
}

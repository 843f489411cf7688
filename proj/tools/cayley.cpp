// Command-line front end: exact subspace counts, involution-quotient
// construction, series ranks, the census pipelines, and census reports.
// Everything is deterministic; there is no seed to pass.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cayley/census.hpp"
#include "cayley/f2linalg.hpp"
#include "cayley/presentation.hpp"
#include "cayley/series.hpp"

using namespace cayley;

namespace {

int run_count_subspaces(int r, int s, const std::string& group_file) {
    std::vector<f2::F2Matrix> group;
    if (group_file.empty()) {
        group.push_back(f2::F2Matrix::identity(r));
    } else {
        std::ifstream in(group_file);
        if (!in) throw PreconditionError("cannot open " + group_file);
        while (in >> std::ws, in.peek() != EOF) group.push_back(f2::F2Matrix::from_text(in));
    }
    auto res = f2::count_free_subspaces(r, s, group);
    Json out;
    out["r"] = r;
    out["s"] = s;
    out["subspaces_total"] = f2::gaussian_binomial2(r, s).str();
    out["group_size"] = group.size();
    out["exact_free"] = res.exact.str();
    out["lower_bound"] = res.lower_bound.str();
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_build_quotient(int d, int c, long cap, const std::string& out_file) {
    MarkedQuotient q = build_involution_quotient(d, c, cap);
    Json out;
    out["d"] = d;
    out["class"] = c;
    out["order"] = q.group.order();
    out["xgens"] = q.xgens;
    out["ygens"] = q.ygens;
    if (!out_file.empty()) {
        std::ofstream file(out_file, std::ios::trunc);
        if (!file) throw PreconditionError("cannot write " + out_file);
        file << q.group.to_text();
        out["table_file"] = out_file;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_series(int d, int c, long cap) {
    MarkedQuotient q = build_involution_quotient(d, c, cap);
    SeriesData s = p_series(q);
    Json out;
    out["d"] = d;
    out["class"] = c;
    out["order"] = q.group.order();
    Json gammas = Json::array();
    for (const auto& term : s.gamma) gammas.push_back(term.order());
    out["lower_central_orders"] = gammas;
    Json ranks = Json::array();
    for (std::size_t i = 0; i + 1 < s.gamma.size(); ++i)
        ranks.push_back(factor_rank(q.group, s.gamma[i], s.gamma[i + 1]));
    out["factor_ranks"] = ranks;
    Json m_ranks = Json::array();
    for (int i = 1; i <= c; ++i) {
        Json row;
        row["i"] = i;
        Json sizes = Json::array();
        for (int j = 0; j <= i; ++j) sizes.push_back(m_subgroup(q, s, i, j).order());
        row["m_orders"] = sizes;
        m_ranks.push_back(row);
    }
    out["m_series"] = m_ranks;
    Json rr = Json::array();
    for (int i = 1; static_cast<std::size_t>(i) <= s.gamma.size(); ++i) {
        Json row;
        row["i"] = i;
        row["rr"] = rr_rank(q, s.p_term(i));
        rr.push_back(row);
    }
    out["rr_ranks"] = rr;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_grr(const PipelineConfig& cfg) {
    std::optional<Store> store;
    if (!cfg.store_path.empty()) store.emplace(cfg.store_path);
    PipelineResult res = grr_lower_pipeline(cfg, store ? &*store : nullptr);
    Json out = res.stats;
    Json recs = Json::array();
    for (const auto& r : res.records) {
        Json row;
        row["order"] = r.order;
        row["grr"] = r.grr;
        row["aut_order"] = r.aut_order.str();
        recs.push_back(row);
    }
    out["emitted"] = recs;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_five_arc(const PipelineConfig& cfg) {
    std::optional<Store> store;
    if (!cfg.store_path.empty()) store.emplace(cfg.store_path);
    PipelineResult res = five_arc_pipeline(cfg, store ? &*store : nullptr);
    Json out = res.stats;
    Json recs = Json::array();
    for (const auto& r : res.records) {
        Json row;
        row["order"] = r.order;
        row["max_s"] = r.max_s;
        row["aut_order"] = r.aut_order.str();
        recs.push_back(row);
    }
    out["emitted"] = recs;
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact census toolkit: Cayley graphs on involution-generated "
                 "2-groups, subspace counting over GF(2), and arc-transitive covers"};
    app.require_subcommand(1);

    int r = 4, s = 2;
    std::string group_file;
    auto* cs = app.add_subcommand("count-subspaces",
                                  "count codimension-s subspaces moved by a matrix group");
    cs->add_option("-r,--dim", r, "ambient dimension")->required();
    cs->add_option("-s,--codim", s, "codimension")->required();
    cs->add_option("--group-file", group_file,
                   "file of matrices ('rows cols' then 0/1 rows), the full group");

    int d = 3, c = 2, m = -1;
    long cap = kDefaultCosetCap;
    std::string out_file, store_path, census_file;
    int workers = 1, k_max = 1, order_cap = 48;

    auto* bq = app.add_subcommand("build-quotient",
                                  "largest class-c quotient generated by d involutions");
    bq->add_option("-d,--involutions", d, "number of involution generators")->required();
    bq->add_option("-c,--class", c, "nilpotency class bound")->required();
    bq->add_option("--cap", cap, "coset enumeration cap");
    bq->add_option("--out", out_file, "write the multiplication table here");

    auto* se = app.add_subcommand("series", "series terms and ranks inside a quotient");
    se->add_option("-d,--involutions", d)->required();
    se->add_option("-c,--class", c)->required();
    se->add_option("--cap", cap);

    auto* gp = app.add_subcommand("grr-pipeline",
                                  "mass-produce cubic GRRs of 2-power order");
    gp->add_option("-d,--involutions", d);
    gp->add_option("-c,--class", c);
    gp->add_option("-m,--exponent", m, "target order exponent (omit for all achievable)");
    gp->add_option("--cap", cap);
    gp->add_option("--workers", workers);
    gp->add_option("--store", store_path, "persist records in this directory");

    auto* fa = app.add_subcommand("five-arc",
                                  "search voltage covers of the eight-cage for "
                                  "5-arc-transitive graphs");
    fa->add_option("--kmax", k_max, "largest fiber exponent (0..4)");
    fa->add_option("--workers", workers);
    fa->add_option("--store", store_path);

    int gd = 3, gm = 3;
    auto* gc = app.add_subcommand("g-count",
                                  "groups of order 2^m generated by d distinct involutions");
    gc->add_option("-d,--involutions", gd)->required();
    gc->add_option("-m,--exponent", gm)->required();

    auto* rp = app.add_subcommand("report", "tabulate a record store as JSON");
    rp->add_option("--store", store_path)->required();

    auto* cc = app.add_subcommand("crosscheck",
                                  "count |Aut| > n^2 graphs in an external graph6 census");
    cc->add_option("--file", census_file)->required();
    cc->add_option("--order-cap", order_cap);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cs->parsed()) return run_count_subspaces(r, s, group_file);
        if (bq->parsed()) return run_build_quotient(d, c, cap, out_file);
        if (se->parsed()) return run_series(d, c, cap);
        if (gp->parsed()) {
            PipelineConfig cfg;
            cfg.d = d;
            cfg.c = c;
            cfg.m = m;
            cfg.coset_cap = cap;
            cfg.workers = workers;
            cfg.store_path = store_path;
            return run_grr(cfg);
        }
        if (fa->parsed()) {
            PipelineConfig cfg;
            cfg.k_max = k_max;
            cfg.workers = workers;
            cfg.store_path = store_path;
            return run_five_arc(cfg);
        }
        if (gc->parsed()) {
            Json out;
            out["d"] = gd;
            out["m"] = gm;
            out["count"] = g_count(gd, gm);
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (rp->parsed()) {
            std::cout << census_report(store_path).dump(2) << '\n';
            return 0;
        }
        if (cc->parsed()) {
            std::cout << ingest_census_crosscheck(census_file, order_cap).to_json().dump(2)
                      << '\n';
            return 0;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

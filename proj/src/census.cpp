// Store persistence, the small-group catalog, involution-generation counts,
// the census report, and the external graph6 cross-check.

#include "cayley/census.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cayley/presentation.hpp"

namespace cayley {

std::string certificate_hex(const std::vector<std::uint8_t>& cert) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(cert.size() * 2);
    for (auto b : cert) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

namespace {

std::vector<std::uint8_t> hex_to_bytes(const std::string& hex) {
    require(hex.size() % 2 == 0, "odd-length certificate hex");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw PreconditionError("bad certificate hex digit");
    };
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
    return out;
}

std::uint64_t fnv64(const std::vector<std::uint8_t>& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string record_id(const CensusRecord& r) {
    std::ostringstream out;
    out << 'n' << r.order << '-' << std::hex;
    out.width(16);
    out.fill('0');
    out << fnv64(r.certificate);
    return out.str();
}

}  // namespace

Json CensusRecord::to_json(const std::string& id) const {
    Json j;
    j["id"] = id;
    j["order"] = order;
    j["valency"] = valency;
    j["vertex_transitive"] = vertex_transitive;
    j["grr"] = grr;
    j["cayley"] = cayley;
    j["max_s"] = max_s;
    j["aut_order"] = aut_order.str();
    j["certificate"] = certificate_hex(certificate);
    j["provenance"] = provenance;
    return j;
}

Store::Store(const std::filesystem::path& dir) : dir_(dir) {
    std::filesystem::create_directories(dir_ / "records");
    load();
}

void Store::load() {
    auto index_path = dir_ / "index.txt";
    if (!std::filesystem::exists(index_path)) return;
    std::ifstream index(index_path);
    std::string id;
    while (std::getline(index, id)) {
        if (id.empty()) continue;
        auto g6_path = dir_ / "records" / (id + ".g6");
        auto json_path = dir_ / "records" / (id + ".json");
        std::ifstream g6(g6_path), js(json_path);
        if (!g6 || !js) throw IntegrityError("store record " + id + " has missing files");
        std::string line;
        std::getline(g6, line);
        Json j = Json::parse(js, nullptr, true);

        CensusRecord r;
        r.graph = from_graph6(line);
        r.order = j.at("order").get<int>();
        r.valency = j.at("valency").get<int>();
        r.vertex_transitive = j.at("vertex_transitive").get<bool>();
        r.grr = j.at("grr").get<bool>();
        r.cayley = j.at("cayley").get<bool>();
        r.max_s = j.at("max_s").get<int>();
        r.aut_order = BigCount(j.at("aut_order").get<std::string>());
        r.certificate = hex_to_bytes(j.at("certificate").get<std::string>());
        r.provenance = j.at("provenance");

        if (r.graph.order() != r.order)
            throw IntegrityError("store record " + id + " order mismatch");
        if (r.graph.certificate() != r.certificate)
            throw IntegrityError("store record " + id + " fails certificate re-verification");
        records_.push_back(std::move(r));
        ids_.push_back(id);
    }
    for (std::size_t i = 0; i < records_.size(); ++i)
        for (std::size_t j = i + 1; j < records_.size(); ++j)
            if (records_[i].certificate == records_[j].certificate)
                throw IntegrityError("store holds duplicate certificate at " + ids_[i] +
                                     " and " + ids_[j]);
}

void Store::write_index() const {
    auto sorted = ids_;
    std::sort(sorted.begin(), sorted.end());
    std::ofstream index(dir_ / "index.txt", std::ios::trunc);
    for (const auto& id : sorted) index << id << '\n';
}

bool Store::add(const CensusRecord& record) {
    for (const auto& r : records_)
        if (r.certificate == record.certificate) return false;
    std::string id = record_id(record);
    CensusRecord stored = record;
    // Persist the canonical relabeling so identical isomorphism classes give
    // identical bytes regardless of how the graph was constructed.
    stored.graph = record.graph.relabeled(record.graph.canon().canonical_labeling);
    internal_check(stored.graph.certificate() == record.certificate,
                   "canonical relabeling changed the certificate");
    std::ofstream g6(dir_ / "records" / (id + ".g6"), std::ios::trunc);
    g6 << to_graph6(stored.graph) << '\n';
    std::ofstream js(dir_ / "records" / (id + ".json"), std::ios::trunc);
    js << stored.to_json(id).dump(2) << '\n';
    records_.push_back(std::move(stored));
    ids_.push_back(id);
    write_index();
    return true;
}

namespace {

struct NamedPresentation {
    std::string name;
    Presentation pres;
    int order;
};

Presentation pres(int ngens, std::vector<Word> relators) {
    Presentation p;
    p.ngens = ngens;
    p.relators = std::move(relators);
    return p;
}

Word power_word(int gen, int e) {
    Word w;
    for (int i = 0; i < e; ++i) w.push_back(gen);
    return w;
}

Word comm_word(int a, int b) { return {-a, -b, a, b}; }

std::vector<NamedPresentation> exhaustive_presentations(int order) {
    switch (order) {
        case 1: return {{"C1", pres(1, {{1}}), 1}};
        case 2: return {{"C2", pres(1, {power_word(1, 2)}), 2}};
        case 3: return {{"C3", pres(1, {power_word(1, 3)}), 3}};
        case 4:
            return {{"C4", pres(1, {power_word(1, 4)}), 4},
                    {"C2xC2", pres(2, {{1, 1}, {2, 2}, comm_word(1, 2)}), 4}};
        case 5: return {{"C5", pres(1, {power_word(1, 5)}), 5}};
        case 6:
            return {{"C6", pres(1, {power_word(1, 6)}), 6},
                    {"S3", pres(2, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}), 6}};
        case 7: return {{"C7", pres(1, {power_word(1, 7)}), 7}};
        case 8:
            return {{"C8", pres(1, {power_word(1, 8)}), 8},
                    {"C4xC2", pres(2, {power_word(1, 4), {2, 2}, comm_word(1, 2)}), 8},
                    {"C2xC2xC2", pres(3, {{1, 1}, {2, 2}, {3, 3}, comm_word(1, 2),
                                          comm_word(1, 3), comm_word(2, 3)}), 8},
                    {"D8", pres(2, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2, 1, 2}}), 8},
                    {"Q8", pres(2, {power_word(1, 4), {2, 2, -1, -1}, {-2, 1, 2, 1}}), 8}};
        default: return {};
    }
}

}  // namespace

Catalog small_group_catalog(int max_order) {
    require(max_order >= 1 && max_order <= 16, "catalog supports orders 1..16");
    Catalog cat;
    cat.exhaustive.assign(max_order + 1, false);
    static const int kClassCounts[9] = {0, 1, 1, 1, 2, 1, 2, 1, 5};

    for (int order = 1; order <= std::min(max_order, 8); ++order) {
        std::vector<CatalogEntry> entries;
        for (const auto& np : exhaustive_presentations(order)) {
            CosetTable ct = todd_coxeter(np.pres, {});
            internal_check(ct.ncosets == np.order,
                           np.name + " enumerated to the wrong order");
            FiniteGroup g = coset_table_to_group(ct);
            entries.push_back({std::move(g), np.name});
        }
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (std::size_t j = i + 1; j < entries.size(); ++j)
                internal_check(!are_isomorphic(entries[i].group, entries[j].group),
                               "catalog entries collapse at order " + std::to_string(order));
        internal_check(static_cast<int>(entries.size()) == kClassCounts[order],
                       "catalog size is off at order " + std::to_string(order));
        for (auto& e : entries) cat.groups.push_back(std::move(e));
        cat.exhaustive[order] = true;
    }

    // Above 8 only the standard families, flagged non-exhaustive.
    for (int order = 9; order <= max_order; ++order) {
        std::vector<CatalogEntry> entries;
        entries.push_back({cyclic_group(order), "C" + std::to_string(order)});
        if (order % 2 == 0)
            entries.push_back({dihedral_group(order), "D" + std::to_string(order)});
        if ((order & (order - 1)) == 0) {
            int rank = 0;
            while ((1 << rank) < order) ++rank;
            entries.push_back({elementary_abelian_group(rank), "C2^" + std::to_string(rank)});
        }
        for (auto& e : entries) {
            bool dup = false;
            for (const auto& have : cat.groups)
                if (have.group.order() == order && are_isomorphic(have.group, e.group))
                    dup = true;
            if (!dup) cat.groups.push_back(std::move(e));
        }
    }
    return cat;
}

int g_count(int d, int m) {
    require(d >= 1, "need d >= 1");
    if (m < 0 || m > 3)
        throw PreconditionError("g_count is exhaustive only for orders up to 2^3; got m = " +
                                std::to_string(m));
    int order = 1 << m;
    Catalog cat = small_group_catalog(8);
    internal_check(cat.exhaustive[order], "catalog not exhaustive at the requested order");
    int count = 0;
    for (const auto& entry : cat.groups) {
        if (entry.group.order() != order) continue;
        auto invs = entry.group.involutions();
        if (static_cast<int>(invs.size()) < d) continue;
        // d-subsets of the involutions, lexicographic.
        std::vector<int> idx(d);
        for (int i = 0; i < d; ++i) idx[i] = i;
        bool found = false;
        for (;;) {
            std::vector<int> subset;
            for (int i : idx) subset.push_back(invs[i]);
            if (static_cast<int>(subgroup_closure(entry.group, subset).size()) == order) {
                found = true;
                break;
            }
            int i = d - 1;
            while (i >= 0 && idx[i] == static_cast<int>(invs.size()) - d + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (found) ++count;
    }
    return count;
}

Json census_report(const std::string& store_path) {
    Store store{std::filesystem::path(store_path)};
    struct Key {
        int valency, order;
        bool operator<(const Key& o) const {
            return valency != o.valency ? valency < o.valency : order < o.order;
        }
    };
    struct Counts {
        long vt = 0, cay = 0, grr = 0, fiveat = 0, total = 0;
    };
    std::map<Key, Counts> per;
    for (const auto& r : store.records()) {
        Counts& c = per[{r.valency, r.order}];
        ++c.total;
        if (r.vertex_transitive) ++c.vt;
        if (r.cayley) ++c.cay;
        if (r.grr) ++c.grr;
        if (r.max_s == 5) ++c.fiveat;
    }
    Json per_order = Json::array();
    for (const auto& [key, c] : per) {
        Json row;
        row["order"] = key.order;
        row["valency"] = key.valency;
        row["count_vt"] = c.vt;
        row["count_cay_found"] = c.cay;
        row["count_grr"] = c.grr;
        row["count_5at"] = c.fiveat;
        row["count_records"] = c.total;
        per_order.push_back(row);
    }
    // Cumulative per valency: counts of records of order <= n (lower bounds
    // by construction; the store never claims completeness).
    Json cumulative = Json::array();
    std::map<int, Counts> running;
    for (const auto& [key, c] : per) {
        Counts& acc = running[key.valency];
        acc.vt += c.vt;
        acc.cay += c.cay;
        acc.grr += c.grr;
        acc.fiveat += c.fiveat;
        acc.total += c.total;
        Json row;
        row["order"] = key.order;
        row["valency"] = key.valency;
        row["count_vt"] = acc.vt;
        row["count_cay_found"] = acc.cay;
        row["count_grr"] = acc.grr;
        row["count_5at"] = acc.fiveat;
        row["count_records"] = acc.total;
        cumulative.push_back(row);
    }
    Json out;
    out["total_records"] = store.records().size();
    out["per_order"] = per_order;
    out["cumulative"] = cumulative;
    return out;
}

Json CrosscheckReport::to_json() const {
    Json j;
    j["lines"] = lines;
    j["ingested"] = ingested;
    j["large_aut"] = large_aut;
    return j;
}

CrosscheckReport ingest_census_crosscheck(const std::string& path, int order_cap) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open census file " + path);
    CrosscheckReport report;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (line.rfind(">>", 0) == 0) continue;  // format header
        ++report.lines;
        Graph g;
        try {
            g = from_graph6(line);
        } catch (const std::exception& e) {
            throw PreconditionError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (g.order() > order_cap) continue;
        ++report.ingested;
        BigCount aut = automorphism_group(g).order();
        BigCount n2 = BigCount(g.order()) * g.order();
        if (aut > n2) ++report.large_aut;
    }
    return report;
}

}  // namespace cayley

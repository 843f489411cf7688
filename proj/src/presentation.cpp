#include "cayley/presentation.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace cayley {

void Presentation::validate() const {
    require(ngens >= 1, "presentation needs at least one generator");
    for (const auto& w : relators) {
        require(!w.empty(), "empty relator");
        for (int letter : w)
            require(letter != 0 && std::abs(letter) <= ngens, "letter out of range");
    }
}

std::string Presentation::to_text() const {
    require(ngens <= 26, "text format supports at most 26 generators");
    std::ostringstream out;
    out << "gens " << ngens << '\n';
    for (const auto& w : relators) {
        for (int letter : w)
            out << static_cast<char>(letter > 0 ? 'a' + letter - 1 : 'A' - letter - 1);
        out << '\n';
    }
    return out.str();
}

Presentation Presentation::from_text(std::istream& in) {
    std::string tag;
    Presentation p;
    if (!(in >> tag >> p.ngens) || tag != "gens" || p.ngens < 1 || p.ngens > 26)
        throw PreconditionError("presentation text: bad header");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        Word w;
        for (char ch : line) {
            if (ch >= 'a' && ch < 'a' + p.ngens) w.push_back(ch - 'a' + 1);
            else if (ch >= 'A' && ch < 'A' + p.ngens) w.push_back(-(ch - 'A' + 1));
            else throw PreconditionError(std::string("presentation text: bad letter '") + ch + "'");
        }
        p.relators.push_back(std::move(w));
    }
    p.validate();
    return p;
}

namespace {

inline int letter_col(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
}

// HLT enumerator with lazy union-find normalization; validity is established
// by the final verify() call, not by trust in the merge bookkeeping.
class Enumerator {
public:
    Enumerator(const Presentation& pres, int cap) : ng_(pres.ngens), cap_(cap) {
        cols_ = 2 * ng_;
        new_coset();
    }

    int find(int c) {
        while (rep_[c] != c) {
            rep_[c] = rep_[rep_[c]];
            c = rep_[c];
        }
        return c;
    }

    bool alive(int c) { return find(c) == c; }

    int entry(int c, int col) {
        int t = tab_[static_cast<std::size_t>(c) * cols_ + col];
        if (t < 0) return -1;
        t = find(t);
        tab_[static_cast<std::size_t>(c) * cols_ + col] = t;
        return t;
    }

    void set_entry(int c, int col, int t) { tab_[static_cast<std::size_t>(c) * cols_ + col] = t; }

    int new_coset() {
        if (allocated_ >= cap_)
            throw ResourceError("coset enumeration exceeded cap of " + std::to_string(cap_) +
                                " cosets");
        tab_.resize(tab_.size() + cols_, -1);
        rep_.push_back(allocated_);
        ++live_;
        return allocated_++;
    }

    int define(int c, int col) {
        int n = new_coset();
        set_entry(c, col, n);
        set_entry(n, col ^ 1, c);
        progress_ = true;
        return n;
    }

    void coincide(int a, int b) {
        pending_.emplace_back(a, b);
        drain();
    }

    void drain() {
        while (!pending_.empty()) {
            auto [a, b] = pending_.back();
            pending_.pop_back();
            a = find(a);
            b = find(b);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            rep_[b] = a;
            --live_;
            progress_ = true;
            for (int col = 0; col < cols_; ++col) {
                int t = entry(b, col);
                if (t < 0) continue;
                set_entry(b, col, -1);
                int ex = entry(a, col);
                if (ex < 0) {
                    set_entry(a, col, t);
                    int back = entry(t, col ^ 1);
                    if (back < 0) set_entry(t, col ^ 1, a);
                    else if (back != a) pending_.emplace_back(back, a);
                } else if (ex != t) {
                    pending_.emplace_back(ex, t);
                }
            }
        }
    }

    // Scan `word` at coset c, filling gaps with new definitions so the scan
    // always completes.
    void scan_and_fill(int c, const Word& word) {
        c = find(c);
        std::size_t fi = 0, bi = word.size();
        int f = c, b = c;
        for (;;) {
            while (fi < bi) {
                int t = entry(f, letter_col(word[fi]));
                if (t < 0) break;
                f = t;
                ++fi;
            }
            if (fi == bi) {
                if (f != b) coincide(f, b);
                return;
            }
            while (bi > fi) {
                int t = entry(b, letter_col(word[bi - 1]) ^ 1);
                if (t < 0) break;
                b = t;
                --bi;
            }
            if (bi == fi) {
                if (f != b) coincide(f, b);
                return;
            }
            if (bi == fi + 1) {
                int col = letter_col(word[fi]);
                set_entry(f, col, b);
                int back = entry(b, col ^ 1);
                if (back < 0) set_entry(b, col ^ 1, f);
                else if (back != f) coincide(back, f);
                progress_ = true;
                return;
            }
            define(f, letter_col(word[fi]));
            // re-normalize in case definitions triggered nothing but merges did
            f = find(f);
            b = find(b);
        }
    }

    int allocated() const { return allocated_; }
    int live() const { return live_; }
    bool take_progress() {
        bool p = progress_;
        progress_ = false;
        return p;
    }

    CosetTable compact(const Presentation& pres) {
        std::vector<int> new_id(allocated_, -1);
        int next = 0;
        for (int c = 0; c < allocated_; ++c)
            if (find(c) == c) new_id[c] = next++;
        CosetTable out;
        out.ngens = ng_;
        out.ncosets = next;
        out.tab.assign(static_cast<std::size_t>(next) * cols_, -1);
        out.complete = true;
        for (int c = 0; c < allocated_; ++c) {
            if (find(c) != c) continue;
            for (int col = 0; col < cols_; ++col) {
                int t = entry(c, col);
                out.tab[static_cast<std::size_t>(new_id[c]) * cols_ + col] =
                    t < 0 ? -1 : new_id[t];
                if (t < 0) out.complete = false;
            }
        }
        internal_check(!out.complete || out.verify(pres),
                       "completed coset table failed verification");
        return out;
    }

private:
    int ng_, cols_, cap_;
    int allocated_ = 0;
    int live_ = 0;
    bool progress_ = false;
    std::vector<int> tab_;
    std::vector<int> rep_;
    std::vector<std::pair<int, int>> pending_;
};

}  // namespace

int CosetTable::action(int coset, int letter) const {
    return tab[static_cast<std::size_t>(coset) * 2 * ngens + letter_col(letter)];
}

int CosetTable::trace(int coset, const Word& word) const {
    int c = coset;
    for (int letter : word) {
        c = action(c, letter);
        if (c < 0) return -1;
    }
    return c;
}

bool CosetTable::verify(const Presentation& pres) const {
    if (pres.ngens != ngens) return false;
    for (int g = 0; g < ngens; ++g) {
        std::vector<bool> hitf(ncosets, false), hitb(ncosets, false);
        for (int c = 0; c < ncosets; ++c) {
            int f = action(c, g + 1), b = action(c, -(g + 1));
            if (f < 0 || b < 0 || hitf[f] || hitb[b]) return false;
            hitf[f] = hitb[b] = true;
            if (action(f, -(g + 1)) != c) return false;
        }
    }
    for (const auto& rel : pres.relators)
        for (int c = 0; c < ncosets; ++c)
            if (trace(c, rel) != c) return false;
    return true;
}

CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& subgroup_words,
                        int coset_cap) {
    pres.validate();
    require(coset_cap >= 1, "coset cap must be positive");
    for (const auto& w : subgroup_words)
        for (int letter : w)
            require(letter != 0 && std::abs(letter) <= pres.ngens,
                    "subgroup word letter out of range");

    Enumerator en(pres, coset_cap);
    for (const auto& w : subgroup_words) en.scan_and_fill(0, w);

    // One scan-and-fill sweep over live cosets (new cosets join the sweep);
    // repeated until a sweep makes no progress and defines nothing.
    for (;;) {
        en.take_progress();
        for (int c = 0; c < en.allocated(); ++c) {
            if (!en.alive(c)) continue;
            for (const auto& rel : pres.relators) {
                en.scan_and_fill(c, rel);
                if (!en.alive(c)) break;
            }
        }
        // Fill any column never touched by a relator, so free directions
        // surface as unbounded growth (and hit the cap) rather than stalling.
        bool undefined_left = false;
        for (int c = 0; c < en.allocated() && !undefined_left; ++c) {
            if (!en.alive(c)) continue;
            for (int col = 0; col < 2 * pres.ngens; ++col) {
                if (en.entry(c, col) < 0) {
                    undefined_left = true;
                    break;
                }
            }
        }
        bool progressed = en.take_progress();
        if (!undefined_left) break;
        if (!progressed) {
            // No relator scan can ever define these entries; force them so a
            // free direction grows toward the cap instead of stalling.
            for (int c = 0; c < en.allocated(); ++c) {
                if (!en.alive(c)) continue;
                for (int col = 0; col < 2 * pres.ngens; ++col)
                    if (en.entry(c, col) < 0) en.define(c, col);
            }
        }
    }
    return en.compact(pres);
}

Word left_normed_commutator(const std::vector<Word>& parts) {
    require(!parts.empty(), "empty commutator");
    Word acc = parts[0];
    auto inverse_word = [](const Word& w) {
        Word inv;
        inv.reserve(w.size());
        for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(-*it);
        return inv;
    };
    for (std::size_t i = 1; i < parts.size(); ++i) {
        Word next;
        Word acc_inv = inverse_word(acc);
        Word part_inv = inverse_word(parts[i]);
        next.insert(next.end(), acc_inv.begin(), acc_inv.end());
        next.insert(next.end(), part_inv.begin(), part_inv.end());
        next.insert(next.end(), acc.begin(), acc.end());
        next.insert(next.end(), parts[i].begin(), parts[i].end());
        acc = std::move(next);
    }
    return acc;
}

Presentation involution_class_presentation(int d, int c) {
    require(d >= 3, "need at least three involutions");
    require(c >= 1, "class must be at least 1");
    Presentation p;
    p.ngens = d;
    for (int i = 1; i <= d; ++i) p.relators.push_back({i, i});
    // All weight-(c+1) left-normed commutators in the generators.
    std::vector<int> tuple(c + 1, 0);
    for (;;) {
        std::vector<Word> parts;
        for (int v : tuple) parts.push_back({v + 1});
        p.relators.push_back(left_normed_commutator(parts));
        int pos = c;
        while (pos >= 0 && tuple[pos] == d - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        ++tuple[pos];
    }
    return p;
}

namespace {

// BFS word per coset from coset 0, letters as 0-based generator indices.
std::vector<std::vector<int>> coset_words(const CosetTable& ct) {
    int n = ct.ncosets;
    std::vector<std::vector<int>> words(n);
    std::vector<bool> seen(n, false);
    std::vector<int> queue = {0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        for (int g = 0; g < ct.ngens; ++g) {
            int y = ct.action(x, g + 1);
            if (!seen[y]) {
                seen[y] = true;
                words[y] = words[x];
                words[y].push_back(g);
                queue.push_back(y);
            }
        }
    }
    internal_check(static_cast<int>(queue.size()) == n, "coset action is not transitive");
    return words;
}

}  // namespace

FiniteGroup coset_table_to_group(const CosetTable& ct) {
    internal_check(ct.complete, "cannot convert an incomplete coset table");
    int n = ct.ncosets;
    if (n > kMaxTableOrder)
        throw ResourceError("quotient has " + std::to_string(n) +
                            " elements, beyond the multiplication-table cap of " +
                            std::to_string(kMaxTableOrder));
    auto words = coset_words(ct);
    std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
    for (int b = 0; b < n; ++b) {
        // Compute a*b for all a at once by tracing b's word.
        std::vector<int> column(n);
        for (int a = 0; a < n; ++a) column[a] = a;
        for (int g : words[b])
            for (int a = 0; a < n; ++a) column[a] = ct.action(column[a], g + 1);
        for (int a = 0; a < n; ++a)
            table[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(column[a]);
    }
    std::vector<int> gens;
    for (int g = 1; g <= ct.ngens; ++g) gens.push_back(ct.action(0, g));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.size() == 1 && gens[0] == 0) gens.clear();  // trivial group
    return FiniteGroup::from_table(n, std::move(table), gens);
}

MarkedQuotient build_involution_quotient(int d, int c, int coset_cap) {
    Presentation pres = involution_class_presentation(d, c);
    CosetTable ct = todd_coxeter(pres, {}, coset_cap);
    internal_check(ct.complete, "quotient enumeration returned an incomplete table");

    MarkedQuotient q;
    q.d = d;
    q.cls = c;
    q.group = coset_table_to_group(ct);  // throws ResourceError past the table cap
    int n = ct.ncosets;
    internal_check((n & (n - 1)) == 0, "quotient order is not a power of two");
    for (int g = 0; g < d; ++g) q.xgens.push_back(ct.action(0, g + 1));
    for (int x : q.xgens)
        internal_check(q.group.is_involution(x), "marked generator is not an involution");
    internal_check(std::set<int>(q.xgens.begin(), q.xgens.end()).size() == q.xgens.size(),
                   "marked generators are not distinct");
    for (int i = 0; i + 1 < d; ++i)
        q.ygens.push_back(q.group.mul(q.xgens[i], q.xgens[d - 1]));
    q.element_words = coset_words(ct);
    return q;
}

}  // namespace cayley

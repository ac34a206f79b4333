#include "k3lat/gb.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace k3lat {

namespace {

// ---------------------------------------------------------------- geobucket

/// Geobucket accumulator: buckets of geometrically growing capacity, merged
/// lazily, so reducing long tails stays near O(n log n).
class Geobucket {
public:
    explicit Geobucket(const PolyRing& R) : R_(&R) {}

    bool empty() {
        skim();
        return !lead_valid_;
    }
    const Term& lead() const { return lead_; }
    void pop_lead() { lead_valid_ = false; }

    void add(std::vector<Term>&& v) {
        if (v.empty()) return;
        if (lead_valid_) {
            // re-insert the skimmed lead so nothing is lost
            std::vector<Term> l{lead_};
            lead_valid_ = false;
            add_impl(std::move(l));
        }
        add_impl(std::move(v));
    }

    std::vector<Term> drain() {
        compact();
        std::vector<Term> acc;
        if (lead_valid_) {
            acc.push_back(lead_);
            lead_valid_ = false;
        }
        for (auto& b : bk_) {
            if (b.empty()) continue;
            acc = acc.empty() ? std::move(b) : merge(acc, b);
            b.clear();
        }
        return acc;
    }

private:
    void add_impl(std::vector<Term>&& v) {
        size_t k = bucket_index(v.size());
        while (true) {
            if (k >= bk_.size()) {
                bk_.resize(k + 1);
                pos_.resize(k + 1, 0);
            }
            if (bk_[k].empty()) {
                bk_[k] = std::move(v);
                return;
            }
            compact_bucket(k);
            v = merge(bk_[k], v);
            bk_[k].clear();
            if (v.empty()) return;
            k = std::max(k + 1, bucket_index(v.size()));
        }
    }

    static size_t bucket_index(size_t n) {
        size_t k = 0, cap = 4;
        while (n > cap) {
            ++k;
            cap *= 4;
        }
        return k;
    }

    std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b) {
        const FieldSpec& F = R_->field();
        std::vector<Term> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            int c;
            if (i >= a.size())
                c = -1;
            else if (j >= b.size())
                c = 1;
            else
                c = R_->cmp(a[i].m, b[j].m);
            if (c > 0)
                out.push_back(a[i++]);
            else if (c < 0)
                out.push_back(b[j++]);
            else {
                uint32_t v = F.add(a[i].c, b[j].c);
                if (v) out.push_back(Term{a[i].m, v});
                ++i;
                ++j;
            }
        }
        return out;
    }

    void compact_bucket(size_t k) {
        if (pos_[k] > 0) {
            bk_[k].erase(bk_[k].begin(), bk_[k].begin() + pos_[k]);
            pos_[k] = 0;
        }
    }
    void compact() {
        for (size_t k = 0; k < bk_.size(); ++k) compact_bucket(k);
    }

    void skim() {
        if (lead_valid_) return;
        const FieldSpec& F = R_->field();
        for (;;) {
            int best = -1;
            for (size_t k = 0; k < bk_.size(); ++k) {
                if (pos_[k] >= bk_[k].size()) continue;
                if (best < 0 ||
                    R_->cmp(bk_[k][pos_[k]].m, bk_[best][pos_[best]].m) > 0)
                    best = static_cast<int>(k);
            }
            if (best < 0) return;
            Monomial m = bk_[best][pos_[best]].m;
            uint32_t c = 0;
            for (size_t k = 0; k < bk_.size(); ++k) {
                if (pos_[k] < bk_[k].size() && bk_[k][pos_[k]].m == m) {
                    c = F.add(c, bk_[k][pos_[k]].c);
                    ++pos_[k];
                }
            }
            if (c) {
                lead_ = Term{m, c};
                lead_valid_ = true;
                return;
            }
        }
    }

    const PolyRing* R_;
    std::vector<std::vector<Term>> bk_;
    std::vector<size_t> pos_;
    Term lead_;
    bool lead_valid_ = false;
};

// ------------------------------------------------------------ reducer index

struct MonoHash {
    size_t operator()(const Monomial& m) const {
        uint64_t h = 1469598103934665603ULL;
        for (int i = 0; i < kMaxVars; ++i) {
            h ^= m.e[i];
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h ^ (uint64_t(m.deg) << 32));
    }
};

struct Reducer {
    const Poly* poly;
    Monomial lm;
    uint64_t mask;
    uint32_t sugar;
};

/// First-divisor lookup over a growing reducer list.  Memo entries remember
/// how far they scanned, so they stay valid as the list grows.
class ReducerSet {
public:
    void push(const Poly* p, uint32_t sugar) {
        items_.push_back(Reducer{p, p->lead().m, p->lead().m.divmask(), sugar});
    }
    size_t size() const { return items_.size(); }
    const Reducer& operator[](size_t i) const { return items_[i]; }

    int find(const Monomial& m) {
        uint64_t mm = m.divmask();
        auto [it, fresh] = memo_.try_emplace(m, Entry{0, -1});
        (void)fresh;
        Entry& e = it->second;
        if (e.reducer >= 0) return e.reducer;
        for (size_t i = e.scanned; i < items_.size(); ++i) {
            const Reducer& r = items_[i];
            if ((r.mask & ~mm) == 0 && r.lm.deg <= m.deg && mono_divides(r.lm, m)) {
                e.reducer = static_cast<int>(i);
                e.scanned = items_.size();
                return e.reducer;
            }
        }
        e.scanned = items_.size();
        return -1;
    }

private:
    struct Entry {
        size_t scanned;
        int reducer;
    };
    std::vector<Reducer> items_;
    std::unordered_map<Monomial, Entry, MonoHash> memo_;
};

/// Full normal form of the given term stream against the reducer set.
std::vector<Term> reduce_terms(const PolyRing& R, std::vector<Term> f, uint32_t sugar_in,
                               ReducerSet& red, uint32_t* sugar_out) {
    const FieldSpec& F = R.field();
    Geobucket bucket(R);
    bucket.add(std::move(f));
    std::vector<Term> rem;
    uint32_t sugar = sugar_in;
    while (!bucket.empty()) {
        Term lt = bucket.lead();
        bucket.pop_lead();
        int ri = red.find(lt.m);
        if (ri < 0) {
            rem.push_back(lt);
            continue;
        }
        const Reducer& r = red[ri];
        Monomial q = mono_div(lt.m, r.lm);
        sugar = std::max(sugar, r.sugar + q.deg);
        const std::vector<Term>& g = r.poly->terms();
        if (g.size() > 1) {
            std::vector<Term> sub;
            sub.reserve(g.size() - 1);
            uint32_t c = F.neg(lt.c);
            for (size_t i = 1; i < g.size(); ++i)
                sub.push_back(Term{mono_mul(g[i].m, q), F.mul(g[i].c, c)});
            bucket.add(std::move(sub));
        }
    }
    if (sugar_out) *sugar_out = sugar;
    return rem;
}

struct Pair {
    uint32_t i, j;
    Monomial lcm;
    uint64_t mask;  // divmask of lcm
    uint32_t sugar;
};

}  // namespace

GroebnerData buchberger(const PolyRing& ring, const std::vector<Poly>& gens_in,
                        const GBOptions& opt) {
    const FieldSpec& F = ring.field();
    std::deque<Poly> basis;  // deque: stable addresses for the reducer set
    std::vector<uint32_t> sugars;
    ReducerSet reducers;
    // pairs bucketed by sugar degree, processed in FIFO order within a bucket
    std::map<uint32_t, std::deque<Pair>> pairs;
    size_t pair_count = 0;

    auto update_pairs = [&](uint32_t t) {
        const Monomial& lmt = basis[t].lead().m;
        const uint64_t maskt = lmt.divmask();
        std::vector<Pair> fresh;
        fresh.reserve(t);
        for (uint32_t i = 0; i < t; ++i) {
            Pair pr;
            pr.i = i;
            pr.j = t;
            pr.lcm = mono_lcm(basis[i].lead().m, lmt);
            pr.mask = pr.lcm.divmask();
            pr.sugar = std::max(sugars[i] + (pr.lcm.deg - basis[i].lead().m.deg),
                                sugars[t] + (pr.lcm.deg - lmt.deg));
            fresh.push_back(pr);
        }
        std::vector<bool> drop(fresh.size(), false);
        // M criterion: strict divisor among the new lcms wins
        for (size_t a = 0; a < fresh.size(); ++a) {
            if (drop[a]) continue;
            for (size_t b = 0; b < fresh.size(); ++b) {
                if (a == b || drop[b]) continue;
                if (fresh[b].lcm.deg >= fresh[a].lcm.deg) continue;
                if ((fresh[b].mask & ~fresh[a].mask) == 0 &&
                    mono_divides(fresh[b].lcm, fresh[a].lcm)) {
                    drop[a] = true;
                    break;
                }
            }
        }
        // F criterion: one pair per lcm; the B (product) criterion kills a
        // class containing a coprime-lead pair
        for (size_t a = 0; a < fresh.size(); ++a) {
            if (drop[a]) continue;
            bool coprime = mono_coprime(basis[fresh[a].i].lead().m, lmt);
            for (size_t b = a + 1; b < fresh.size(); ++b) {
                if (drop[b] || fresh[b].mask != fresh[a].mask ||
                    !(fresh[b].lcm == fresh[a].lcm))
                    continue;
                drop[b] = true;
                if (mono_coprime(basis[fresh[b].i].lead().m, lmt)) coprime = true;
            }
            if (coprime) drop[a] = true;
        }
        for (auto& [s, bucket] : pairs) {
            (void)s;
            size_t before = bucket.size();
            std::erase_if(bucket, [&](const Pair& pr) {
                if ((maskt & ~pr.mask) != 0) return false;
                if (!mono_divides(lmt, pr.lcm)) return false;
                Monomial l_it = mono_lcm(basis[pr.i].lead().m, lmt);
                Monomial l_jt = mono_lcm(basis[pr.j].lead().m, lmt);
                return !(l_it == pr.lcm) && !(l_jt == pr.lcm);
            });
            pair_count -= before - bucket.size();
        }
        for (size_t a = 0; a < fresh.size(); ++a)
            if (!drop[a]) {
                pairs[fresh[a].sugar].push_back(fresh[a]);
                ++pair_count;
            }
    };

    auto insert_poly = [&](std::vector<Term>&& terms, uint32_t sugar) {
        if (opt.tail_reduce && terms.size() > 1) {
            std::vector<Term> tail(terms.begin() + 1, terms.end());
            uint32_t s = sugar;
            tail = reduce_terms(ring, std::move(tail), sugar, reducers, &s);
            sugar = s;
            std::vector<Term> whole;
            whole.reserve(tail.size() + 1);
            whole.push_back(terms.front());
            whole.insert(whole.end(), tail.begin(), tail.end());
            terms = std::move(whole);
        }
        if (terms.front().c != 1) {
            uint32_t s = F.inv(terms.front().c);
            for (Term& t : terms) t.c = F.mul(t.c, s);
        }
        basis.emplace_back(nullptr, std::move(terms), true);
        sugars.push_back(sugar);
        reducers.push(&basis.back(), sugar);
        update_pairs(static_cast<uint32_t>(basis.size() - 1));
    };

    std::vector<Poly> gens = gens_in;
    std::erase_if(gens, [](const Poly& g) { return g.is_zero(); });
    std::sort(gens.begin(), gens.end(), [&](const Poly& a, const Poly& b) {
        int c = ring.cmp(a.lead().m, b.lead().m);
        if (c) return c < 0;
        return a.size() < b.size();
    });

    for (const Poly& g : gens) {
        uint32_t s = static_cast<uint32_t>(g.degree());
        std::vector<Term> t = g.terms();
        t = reduce_terms(ring, std::move(t), s, reducers, &s);
        if (t.empty()) continue;
        insert_poly(std::move(t), s);
    }

    while (pair_count > 0) {
        auto bit = pairs.begin();
        while (bit != pairs.end() && bit->second.empty()) bit = pairs.erase(bit);
        if (bit == pairs.end()) break;
        Pair pr = bit->second.front();
        bit->second.pop_front();
        --pair_count;
        if (pr.sugar > static_cast<uint32_t>(opt.degree_cap)) throw GBCapExceeded(opt.degree_cap);
        const Poly& f = basis[pr.i];
        const Poly& g = basis[pr.j];
        Monomial qf = mono_div(pr.lcm, f.lead().m);
        Monomial qg = mono_div(pr.lcm, g.lead().m);
        Geobucket bucket(ring);
        {
            std::vector<Term> s;
            s.reserve(f.size() - 1);
            for (size_t k = 1; k < f.size(); ++k)
                s.push_back(Term{mono_mul(f.terms()[k].m, qf), f.terms()[k].c});
            bucket.add(std::move(s));
        }
        {
            std::vector<Term> s;
            s.reserve(g.size() - 1);
            for (size_t k = 1; k < g.size(); ++k)
                s.push_back(Term{mono_mul(g.terms()[k].m, qg), F.neg(g.terms()[k].c)});
            bucket.add(std::move(s));
        }
        std::vector<Term> spoly = bucket.drain();
        uint32_t sugar = pr.sugar;
        spoly = reduce_terms(ring, std::move(spoly), sugar, reducers, &sugar);
        if (spoly.empty()) continue;
        insert_poly(std::move(spoly), sugar);
    }

    // minimal basis: drop leads divisible by other leads
    size_t n = basis.size();
    std::vector<bool> keep(n, true);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            const Monomial& li = basis[i].lead().m;
            const Monomial& lj = basis[j].lead().m;
            if (li == lj) {
                if (j < i) keep[i] = false;
            } else if (mono_divides(lj, li)) {
                keep[i] = false;
            }
        }
    }
    std::vector<Poly> minimal;
    for (size_t i = 0; i < n; ++i)
        if (keep[i]) minimal.push_back(std::move(basis[i]));
    std::sort(minimal.begin(), minimal.end(),
              [&](const Poly& a, const Poly& b) { return ring.cmp(a.lead().m, b.lead().m) < 0; });

    // interreduce tails
    GroebnerData out;
    for (size_t i = 0; i < minimal.size(); ++i) {
        ReducerSet rs;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) rs.push(&minimal[j], 0);
        const std::vector<Term>& t = minimal[i].terms();
        std::vector<Term> tail(t.begin() + 1, t.end());
        tail = reduce_terms(ring, std::move(tail), 0, rs, nullptr);
        std::vector<Term> whole;
        whole.reserve(tail.size() + 1);
        whole.push_back(t.front());
        whole.insert(whole.end(), tail.begin(), tail.end());
        out.basis.emplace_back(nullptr, std::move(whole), true);
    }
    for (const Poly& g : out.basis) out.initial.push_back(g.lead().m);
    return out;
}

namespace {
std::vector<Poly> adopt(const RingPtr& ring, std::vector<Poly>&& raw) {
    std::vector<Poly> out;
    out.reserve(raw.size());
    for (Poly& p : raw) out.emplace_back(ring, std::move(p.terms_mut()), true);
    return out;
}
}  // namespace

Ideal gb(const Ideal& I, const GBOptions& opt) {
    if (I.has_gb()) return I;
    GroebnerData data = buchberger(*I.ring(), I.gens(), opt);
    data.basis = adopt(I.ring(), std::move(data.basis));
    Ideal out(I.ring(), I.gens());
    out.attach_gb(std::make_shared<GroebnerData>(std::move(data)));
    return out;
}

Poly normal_form(const Poly& f, const std::vector<Poly>& reducers) {
    if (f.is_zero() || reducers.empty()) return f;
    const PolyRing& R = *f.ring();
    ReducerSet rs;
    for (const Poly& g : reducers) rs.push(&g, 0);
    std::vector<Term> t = f.terms();
    t = reduce_terms(R, std::move(t), 0, rs, nullptr);
    return Poly(f.ring(), std::move(t), true);
}

Poly normal_form(const Poly& f, const Ideal& I_with_gb) {
    if (!f.ring()->same_as(*I_with_gb.ring()))
        throw std::invalid_argument("normal_form: ring mismatch");
    if (!I_with_gb.has_gb()) {
        Ideal J = gb(I_with_gb);
        return normal_form(f, J.gb_data().basis);
    }
    return normal_form(f, I_with_gb.gb_data().basis);
}

bool ideal_contains(const Ideal& I, const Poly& f) {
    Ideal J = I.has_gb() ? I : gb(I);
    return normal_form(f, J.gb_data().basis).is_zero();
}

Ideal elimination(const Ideal& I, int k, const GBOptions& opt) {
    if (k == 0) return I;
    const PolyRing& R = *I.ring();
    if (R.order() != Order::Elim || R.elim_k() != k)
        throw std::invalid_argument("elimination: ring is not ordered to eliminate first " +
                                    std::to_string(k) + " variables");
    Ideal J = gb(I, opt);
    std::vector<Poly> kept;
    for (const Poly& g : J.gb_data().basis) {
        bool uses_block = false;
        for (int i = 0; i < k && !uses_block; ++i)
            if (g.lead().m.e[i]) uses_block = true;
        if (!uses_block) kept.push_back(g);
    }
    return Ideal(I.ring(), std::move(kept));
}

// ----------------------------------------------------- graded piece algebra

namespace {

struct PieceContext {
    std::vector<Monomial> monos;
    std::unordered_map<Monomial, int, MonoHash> index;
};

PieceContext piece_context(const PolyRing& R, int d) {
    PieceContext ctx;
    ctx.monos = monomials_of_degree(R, d);
    ctx.index.reserve(ctx.monos.size() * 2);
    for (size_t i = 0; i < ctx.monos.size(); ++i) ctx.index[ctx.monos[i]] = static_cast<int>(i);
    return ctx;
}

std::vector<std::vector<uint32_t>> piece_rows(const Ideal& I, int d, const PieceContext& ctx,
                                              std::vector<int>* pivots_out) {
    const PolyRing& R = *I.ring();
    const FieldSpec& F = R.field();
    size_t w = ctx.monos.size();
    std::vector<std::vector<uint32_t>> rref;
    std::vector<int> row_of_pivot(w, -1);
    std::vector<int> pivot_of_row;

    auto insert_row = [&](std::vector<uint32_t> row) {
        for (size_t c = 0; c < w; ++c) {
            if (!row[c]) continue;
            int r = row_of_pivot[c];
            if (r < 0) {
                uint32_t inv = F.inv(row[c]);
                for (size_t k = c; k < w; ++k)
                    if (row[k]) row[k] = F.mul(row[k], inv);
                row_of_pivot[c] = static_cast<int>(rref.size());
                rref.push_back(std::move(row));
                pivot_of_row.push_back(static_cast<int>(c));
                return;
            }
            uint32_t f = row[c];
            const std::vector<uint32_t>& pr = rref[r];
            for (size_t k = c; k < w; ++k)
                if (pr[k]) row[k] = F.sub(row[k], F.mul(f, pr[k]));
        }
    };

    for (const Poly& g : I.gens()) {
        if (g.is_zero()) continue;
        int dg = g.degree();
        if (dg > d) continue;
        for (const Monomial& m : monomials_of_degree(R, d - dg)) {
            std::vector<uint32_t> row(w, 0);
            for (const Term& t : g.terms()) {
                auto it = ctx.index.find(mono_mul(t.m, m));
                if (it == ctx.index.end()) continue;  // inhomogeneous generator
                row[it->second] = F.add(row[it->second], t.c);
            }
            insert_row(std::move(row));
        }
    }
    if (pivots_out) *pivots_out = pivot_of_row;
    return rref;
}

}  // namespace

int graded_piece_dim(const Ideal& I, int d) {
    PieceContext ctx = piece_context(*I.ring(), d);
    return static_cast<int>(piece_rows(I, d, ctx, nullptr).size());
}

std::vector<Poly> graded_piece_basis(const Ideal& I, int d) {
    PieceContext ctx = piece_context(*I.ring(), d);
    auto rows = piece_rows(I, d, ctx, nullptr);
    std::vector<Poly> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<Term> terms;
        for (size_t c = 0; c < row.size(); ++c)
            if (row[c]) terms.push_back(Term{ctx.monos[c], row[c]});
        out.emplace_back(I.ring(), std::move(terms));
    }
    return out;
}

// ------------------------------------------------------ quotient/saturation

Ideal ideal_quotient(const Ideal& I, const Ideal& J, const GBOptions& opt) {
    if (!I.ring()->same_as(*J.ring()))
        throw std::invalid_argument("ideal_quotient: ring mismatch");
    const PolyRing& R = *I.ring();
    const FieldSpec& F = R.field();
    Ideal Igb = gb(I, opt);
    const std::vector<Poly>& red = Igb.gb_data().basis;

    if (J.gens().empty()) return Ideal(I.ring(), {poly_const(I.ring(), 1)});
    bool all_in = true;
    for (const Poly& g : J.gens())
        if (!normal_form(g, red).is_zero()) {
            all_in = false;
            break;
        }
    if (all_in) return Ideal(I.ring(), {poly_const(I.ring(), 1)});

    int cap = std::max(I.max_gen_degree(), 1) + std::max(J.max_gen_degree(), 1);
    std::vector<Poly> found = I.gens();
    for (int d = 1; d <= cap; ++d) {
        std::vector<Monomial> monos = monomials_of_degree(R, d);
        size_t nc = monos.size();
        // rows indexed by (generator of J, support monomial of the normal form)
        std::unordered_map<Monomial, int, MonoHash> row_index;
        std::vector<std::vector<std::pair<int, uint32_t>>> col_entries(nc);
        int row_count = 0;
        for (size_t mi = 0; mi < nc; ++mi) {
            int jtag = 0;
            for (const Poly& gj : J.gens()) {
                Poly nf = normal_form(poly_mul_term(gj, monos[mi], 1), red);
                for (const Term& t : nf.terms()) {
                    Monomial key = t.m;
                    // tag the support monomial with the generator index so the
                    // conditions for different generators stack independently
                    key.deg = static_cast<uint16_t>(key.deg + 1000 * (jtag + 1));
                    auto [it2, _] = row_index.try_emplace(key, row_count);
                    (void)_;
                    if (it2->second == row_count) ++row_count;
                    col_entries[mi].push_back({it2->second, t.c});
                }
                ++jtag;
            }
        }
        if (row_count == 0) {
            for (const Monomial& m : monos) found.push_back(poly_term(I.ring(), m, 1));
            continue;
        }
        std::vector<std::vector<uint32_t>> M(row_count, std::vector<uint32_t>(nc, 0));
        for (size_t mi = 0; mi < nc; ++mi)
            for (auto [r, c] : col_entries[mi]) M[r][mi] = F.add(M[r][mi], c);

        size_t nr = M.size();
        std::vector<int> pivot_col;
        size_t rank = 0;
        for (size_t c = 0; c < nc && rank < nr; ++c) {
            size_t pr = rank;
            while (pr < nr && M[pr][c] == 0) ++pr;
            if (pr == nr) continue;
            std::swap(M[rank], M[pr]);
            uint32_t inv = F.inv(M[rank][c]);
            for (size_t k = c; k < nc; ++k)
                if (M[rank][k]) M[rank][k] = F.mul(M[rank][k], inv);
            for (size_t r2 = 0; r2 < nr; ++r2) {
                if (r2 == rank || M[r2][c] == 0) continue;
                uint32_t f = M[r2][c];
                for (size_t k = c; k < nc; ++k)
                    if (M[rank][k]) M[r2][k] = F.sub(M[r2][k], F.mul(f, M[rank][k]));
            }
            pivot_col.push_back(static_cast<int>(c));
            ++rank;
        }
        std::vector<bool> is_pivot(nc, false);
        for (int c : pivot_col) is_pivot[c] = true;
        for (size_t freec = 0; freec < nc; ++freec) {
            if (is_pivot[freec]) continue;
            std::vector<Term> terms;
            terms.push_back(Term{monos[freec], 1});
            for (size_t r = 0; r < rank; ++r) {
                uint32_t v = M[r][freec];
                if (v) terms.push_back(Term{monos[pivot_col[r]], F.neg(v)});
            }
            Poly cand(I.ring(), std::move(terms));
            if (!normal_form(cand, red).is_zero()) found.push_back(std::move(cand));
        }
    }
    return Ideal(I.ring(), std::move(found));
}

namespace {
bool ideal_subset(const Ideal& A, const Ideal& B_gb) {
    for (const Poly& g : A.gens())
        if (!normal_form(g, B_gb.gb_data().basis).is_zero()) return false;
    return true;
}
}  // namespace

Ideal saturation_by(const Ideal& I, const Poly& f, const GBOptions& opt) {
    Ideal cur = I;
    Ideal J(I.ring(), {f});
    for (int round = 0; round < 64; ++round) {
        Ideal next = ideal_quotient(cur, J, opt);
        Ideal curgb = gb(cur, opt);
        if (ideal_subset(next, curgb)) return curgb;
        cur = next;
    }
    throw std::runtime_error("saturation_by: did not stabilize");
}

Ideal saturation(const Ideal& I, const Ideal& J, const GBOptions& opt) {
    Ideal cur = I;
    for (int round = 0; round < 64; ++round) {
        Ideal next = ideal_quotient(cur, J, opt);
        Ideal curgb = gb(cur, opt);
        if (ideal_subset(next, curgb)) return curgb;
        cur = next;
    }
    throw std::runtime_error("saturation: did not stabilize");
}

Ideal saturate_last_variable(const Ideal& I, const GBOptions& opt) {
    const PolyRing& R = *I.ring();
    if (R.order() != Order::GrevLex)
        throw std::invalid_argument("saturate_last_variable: needs grevlex order");
    int last = R.nvars() - 1;
    Ideal J = gb(I, opt);
    std::vector<Poly> divided;
    bool changed = false;
    for (const Poly& g : J.gb_data().basis) {
        int k = poly_var_min_power(g, last);
        if (k > 0) {
            divided.push_back(poly_shift_var_down(g, last, k));
            changed = true;
        } else {
            divided.push_back(g);
        }
    }
    if (!changed) return J;
    Ideal out = gb(Ideal(I.ring(), std::move(divided)), opt);
    bool again = false;
    for (const Poly& g : out.gb_data().basis)
        if (poly_var_min_power(g, last) > 0) {
            again = true;
            break;
        }
    return again ? saturate_last_variable(out, opt) : out;
}

}  // namespace k3lat

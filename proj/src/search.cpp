#include "isoeq/search.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <thread>

namespace isoeq {
namespace {

using u64 = std::uint64_t;

u64 weight_pow(int q, int exp) {
    u64 r = 1;
    for (int i = 0; i < exp; ++i) {
        require(r <= (u64{1} << 48) / static_cast<u64>(q), Errc::TooLarge,
                "indicator weight exceeds supported range");
        r *= static_cast<u64>(q);
    }
    return r;
}

struct Bitset {
    std::vector<u64> words;

    explicit Bitset(std::size_t bits) : words((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words[i / 64] |= u64{1} << (i % 64); }
};

std::size_t popcount_or(const Bitset& a, const Bitset& b, Bitset& out) {
    std::size_t cnt = 0;
    for (std::size_t w = 0; w < a.words.size(); ++w) {
        out.words[w] = a.words[w] | b.words[w];
        cnt += static_cast<std::size_t>(__builtin_popcountll(out.words[w]));
    }
    return cnt;
}

// Tuple shaped as q copies of one space plus a single member of
// codimension 2 inside it.
struct RepeatedPlusLow {
    Subspace repeated;
    Subspace low;
};

std::optional<RepeatedPlusLow> match_repeated_plus_low(const SpaceTuple& t) {
    const int q = t.ambient().field.q();
    const int n = t.max_dim();
    std::vector<Subspace> tall;
    std::vector<Subspace> low;
    for (const Subspace& s : t.spaces()) (s.dim() == n ? tall : low).push_back(s);
    if (static_cast<int>(tall.size()) != q || low.size() != 1) return std::nullopt;
    for (const Subspace& s : tall) {
        if (s != tall.front()) return std::nullopt;
    }
    if (low.front().dim() != n - 2 || !tall.front().contains(low.front())) return std::nullopt;
    return RepeatedPlusLow{tall.front(), low.front()};
}

SpaceTuple sorted_tuple(std::vector<Subspace> spaces) {
    std::sort(spaces.begin(), spaces.end());
    return SpaceTuple(std::move(spaces));
}

// Candidate evaluation shared by the partner search paths.
struct PartnerSearch {
    const SpaceTuple& v;
    bool trivial_excluded;
    const SearchCaps& caps;
    PartnerStats* stats;
    std::vector<SpaceTuple> found;

    void test(std::vector<Subspace> u_spaces) {
        SpaceTuple u = sorted_tuple(std::move(u_spaces));
        if (trivial_excluded && tuples_equivalent(u, v)) return;
        if (stats) ++stats->pairs_tested;
        SolutionPair p(u, v);
        VerifyOptions opts;
        opts.max_points = caps.max_points;
        if (verify_equation(p, opts)) found.push_back(std::move(u));
    }
};

// Structure-constrained search for nontrivial partners at m = q+1. The
// three branches follow the trichotomy of the tuple maxima; each enabled
// constraint holds for every nontrivial minimal-length solution, so the
// pruned result set matches the generic path exactly.
void partners_structural(PartnerSearch& ps) {
    const SpaceTuple& v = ps.v;
    const Ambient& amb = v.ambient();
    const int m = v.size();
    const int q = amb.field.q();

    // Partner maximum below ours: our tuple must be the repeated space plus
    // core, the partner is forced to be the hyperplane pencil.
    if (auto shape = match_repeated_plus_low(v); shape && shape->repeated.dim() >= 2) {
        ps.test(hyperplanes_through(shape->repeated, shape->low));
    }

    // Partner maximum above ours: our tuple must be a hyperplane pencil,
    // the partner is forced to be its repeated space plus core.
    {
        const int h = v.max_dim();
        bool all_h = true;
        for (const Subspace& s : v.spaces()) all_h = all_h && s.dim() == h;
        if (all_h && h >= 1) {
            const Subspace joint = v.join();
            const Subspace core = v.meet();
            if (joint.dim() == h + 1 && core.dim() == h - 1) {
                std::vector<std::vector<Elem>> want;
                for (const Subspace& s : hyperplanes_through(joint, core)) {
                    want.push_back(s.encoding());
                }
                std::sort(want.begin(), want.end());
                if (want == v.sorted_encodings()) {
                    std::vector<Subspace> u(static_cast<std::size_t>(q), joint);
                    u.push_back(core);
                    ps.test(std::move(u));
                }
            }
        }
    }

    // Equal maxima: dimension profile, containments and the common core of
    // dimension n-2 pin the candidate lists down hard.
    const int n = v.max_dim();
    if (n < 2) return;
    std::vector<int> shorts;
    for (int i = 0; i < m; ++i) {
        const int d = v[i].dim();
        if (d == n - 1) {
            shorts.push_back(i);
        } else if (d != n) {
            return;  // dimension outside {n-1, n}
        }
    }
    if (shorts.size() > 1) return;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i != j && v[j].contains(v[i])) return;  // nesting rules out equal-max partners
        }
    }
    const Subspace core_bound = v.meet();
    if (core_bound.dim() < n - 2) return;

    const Subspace joint = v.join();
    const std::vector<Subspace> cands = enumerate_subspaces_within(joint, ps.caps.max_subspaces);

    const auto in_v = [&](const Subspace& s) {
        for (const Subspace& w : v.spaces()) {
            if (w == s) return true;
        }
        return false;
    };

    std::vector<Subspace> tall_c;
    std::vector<Subspace> short_c;
    for (const Subspace& u : cands) {
        if (u.dim() != n && u.dim() != n - 1) continue;
        if (in_v(u)) continue;
        if (intersect(u, core_bound).dim() < n - 2) continue;
        if (u.dim() == n) {
            // A tall partner member meets every tuple member in dimension
            // exactly n-1 (grid cells of the tall rows).
            bool ok = true;
            for (int i : shorts) ok = ok && u.contains(v[i]);
            for (int j = 0; j < m && ok; ++j) {
                ok = intersect(u, v[j]).dim() == n - 1;
            }
            if (ok) tall_c.push_back(u);
        } else if (shorts.size() == 1) {
            bool ok = true;
            for (int j = 0; j < m && ok; ++j) {
                if (v[j].dim() == n) ok = v[j].contains(u);
            }
            if (ok) short_c.push_back(u);
        }
    }

    std::vector<Subspace> chosen;
    std::vector<Subspace> chosen_talls;
    chosen.reserve(static_cast<std::size_t>(m));

    // Pairwise constraint between tall partner members: with no short
    // members they meet exactly in the common core (dimension n-2); with a
    // short member present they meet exactly in the short V member.
    const auto tall_pair_ok = [&](const Subspace& u) {
        for (const Subspace& prev : chosen_talls) {
            const Subspace z = intersect(u, prev);
            if (shorts.empty()) {
                if (z.dim() != n - 2) return false;
            } else if (z != v[shorts.front()]) {
                return false;
            }
        }
        return true;
    };

    // Members of an equal-max partner are pairwise non-nested, so indices
    // strictly increase.
    auto recurse = [&](auto&& self, std::size_t start, const Subspace& meet_so_far) -> void {
        if (static_cast<int>(chosen.size()) == m) {
            if (meet_so_far.dim() != n - 2) return;
            std::vector<Subspace> u = chosen;
            ps.test(std::move(u));
            return;
        }
        for (std::size_t i = start; i < tall_c.size(); ++i) {
            if (!tall_pair_ok(tall_c[i])) continue;
            const Subspace r = intersect(meet_so_far, tall_c[i]);
            if (r.dim() < n - 2) continue;
            chosen.push_back(tall_c[i]);
            chosen_talls.push_back(tall_c[i]);
            self(self, i + 1, r);
            chosen_talls.pop_back();
            chosen.pop_back();
        }
    };

    if (shorts.empty()) {
        recurse(recurse, 0, core_bound);
    } else {
        for (const Subspace& s : short_c) {
            const Subspace r = intersect(core_bound, s);
            if (r.dim() < n - 2) continue;
            chosen.push_back(s);
            recurse(recurse, 0, r);
            chosen.pop_back();
        }
    }
}

// Unconstrained enumeration over subspaces of join(V), optionally pruned by
// the origin-value identity (a pure counting constraint, sound for every
// solution).
void partners_generic(PartnerSearch& ps, const Pruning& pruning) {
    const SpaceTuple& v = ps.v;
    const int m = v.size();
    const int q = v.ambient().field.q();
    const Subspace joint = v.join();
    const int dj = joint.dim();

    // Candidates are sorted by encoding, whose leading entry is the
    // dimension, so members of equal dimension form contiguous runs.
    const std::vector<Subspace> cands = enumerate_subspaces_within(joint, ps.caps.max_subspaces);
    u64 target = 0;
    for (int i = 0; i < m; ++i) target += weight_pow(q, dj - v[i].dim());

    std::vector<Subspace> chosen;
    chosen.reserve(static_cast<std::size_t>(m));

    if (pruning.dim_multiset) {
        // Fix a feasible dimension multiset first, then fill members of
        // those dimensions.
        std::vector<std::size_t> dim_lo(static_cast<std::size_t>(dj) + 1, cands.size());
        for (std::size_t i = cands.size(); i-- > 0;) {
            dim_lo[static_cast<std::size_t>(cands[i].dim())] = i;
        }
        std::vector<u64> dim_weight(static_cast<std::size_t>(dj) + 1);
        for (int d = 0; d <= dj; ++d) dim_weight[static_cast<std::size_t>(d)] = weight_pow(q, dj - d);

        std::vector<int> dims;
        dims.reserve(static_cast<std::size_t>(m));

        auto fill = [&](auto&& self, std::size_t slot, std::size_t start) -> void {
            if (slot == dims.size()) {
                ps.test(chosen);
                return;
            }
            const int want = dims[slot];
            const std::size_t lo = (slot > 0 && dims[slot - 1] == want)
                                       ? start
                                       : dim_lo[static_cast<std::size_t>(want)];
            for (std::size_t i = lo; i < cands.size() && cands[i].dim() == want; ++i) {
                chosen.push_back(cands[i]);
                self(self, slot + 1, i);
                chosen.pop_back();
            }
        };

        // Dimensions are chosen nondecreasing; each dimension d contributes
        // the fixed weight q^(dj - d), so feasibility bounds are exact.
        auto choose_dims = [&](auto&& self, int from, u64 sum) -> void {
            const u64 remaining = static_cast<u64>(m) - dims.size();
            if (remaining == 0) {
                if (sum == target) fill(fill, 0, 0);
                return;
            }
            if (sum + remaining > target) return;  // every weight is >= 1
            if (sum + remaining * dim_weight[static_cast<std::size_t>(from)] < target) return;
            for (int d = from; d <= dj; ++d) {
                dims.push_back(d);
                self(self, d, sum + dim_weight[static_cast<std::size_t>(d)]);
                dims.pop_back();
            }
        };
        choose_dims(choose_dims, 0, 0);
        return;
    }

    std::vector<u64> weights;
    weights.reserve(cands.size());
    for (const Subspace& c : cands) weights.push_back(weight_pow(q, dj - c.dim()));
    const u64 wmax = weight_pow(q, dj);

    auto recurse = [&](auto&& self, std::size_t start, u64 sum) -> void {
        const u64 remaining = static_cast<u64>(m) - chosen.size();
        if (remaining == 0) {
            if (!pruning.value_at_zero || sum == target) ps.test(chosen);
            return;
        }
        if (pruning.value_at_zero) {
            if (sum + remaining > target) return;
            if (sum + remaining * wmax < target) return;
        }
        for (std::size_t i = start; i < cands.size(); ++i) {
            chosen.push_back(cands[i]);
            self(self, i, sum + weights[i]);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0, 0);
}

}  // namespace

std::vector<std::vector<Subspace>> enumerate_coverings(const Subspace& V, int m,
                                                       const SearchCaps& caps) {
    require(V.dim() >= 1, Errc::Precondition, "coverings are defined for nonzero spaces");
    require(m >= 1, Errc::Precondition, "covering size must be positive");

    const std::vector<Vec> points = enumerate_points(V, caps.max_points);
    const std::size_t total = points.size();

    std::vector<Subspace> cands;
    for (const Subspace& s : enumerate_subspaces_within(V, caps.max_subspaces)) {
        if (s.dim() < V.dim()) cands.push_back(s);
    }

    std::vector<Bitset> masks;
    masks.reserve(cands.size());
    std::size_t max_cover = 0;
    for (const Subspace& c : cands) {
        Bitset b(total);
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (c.contains(points[i])) {
                b.set(i);
                ++cnt;
            }
        }
        max_cover = std::max(max_cover, cnt);
        masks.push_back(std::move(b));
    }

    std::vector<std::vector<Subspace>> out;
    std::vector<std::size_t> chosen;

    auto recurse = [&](auto&& self, std::size_t start, const Bitset& covered,
                       std::size_t covered_cnt) -> void {
        const std::size_t remaining = static_cast<std::size_t>(m) - chosen.size();
        if (remaining == 0) {
            if (covered_cnt == total) {
                std::vector<Subspace> cover;
                cover.reserve(chosen.size());
                for (std::size_t i : chosen) cover.push_back(cands[i]);
                out.push_back(std::move(cover));
            }
            return;
        }
        if (covered_cnt + remaining * max_cover < total) return;
        for (std::size_t i = start; i < cands.size(); ++i) {
            Bitset next(total);
            const std::size_t cnt = popcount_or(covered, masks[i], next);
            chosen.push_back(i);
            self(self, i, next, cnt);
            chosen.pop_back();
        }
    };

    recurse(recurse, 0, Bitset(total), 0);
    return out;
}

CoveringCertificate verify_covering_structure(const Subspace& V, const std::vector<Subspace>& cover) {
    const int q = V.ambient().field.q();
    require(static_cast<int>(cover.size()) == q + 1, Errc::NotACovering,
            "expected q + 1 = " + std::to_string(q + 1) + " members, got " +
                std::to_string(cover.size()));
    for (const Subspace& w : cover) {
        require(V.contains(w) && w.dim() < V.dim(), Errc::NotACovering,
                "covering member is not a proper subspace of the covered space");
    }
    const std::vector<Vec> points = enumerate_points(V);
    for (const Vec& x : points) {
        const bool hit = std::any_of(cover.begin(), cover.end(),
                                     [&](const Subspace& w) { return w.contains(x); });
        require(hit, Errc::NotACovering, "members do not cover the space");
    }

    Subspace core = cover.front();
    for (std::size_t i = 1; i < cover.size(); ++i) core = intersect(core, cover[i]);
    require(core.dim() == V.dim() - 2, Errc::StructureViolation,
            "covering core has dimension " + std::to_string(core.dim()) + ", expected " +
                std::to_string(V.dim() - 2));

    std::vector<std::vector<Elem>> want;
    for (const Subspace& h : hyperplanes_through(V, core)) want.push_back(h.encoding());
    std::sort(want.begin(), want.end());
    std::vector<std::vector<Elem>> got;
    for (const Subspace& w : cover) got.push_back(w.encoding());
    std::sort(got.begin(), got.end());
    require(want == got, Errc::StructureViolation,
            "covering members are not the hyperplanes through the core");

    for (const Vec& x : points) {
        std::uint64_t lhs = 0;
        for (const Subspace& w : cover) {
            if (w.contains(x)) ++lhs;
        }
        const std::uint64_t rhs = 1 + (core.contains(x) ? static_cast<std::uint64_t>(q) : 0);
        require(lhs == rhs, Errc::StructureViolation, "covering identity fails at a point");
    }
    return CoveringCertificate{core, static_cast<int>(cover.size()),
                               static_cast<std::uint64_t>(points.size())};
}

std::vector<SpaceTuple> find_partners(const SpaceTuple& V, bool trivial_excluded,
                                      const Pruning& pruning, const SearchCaps& caps,
                                      PartnerStats* stats) {
    PartnerSearch ps{V, trivial_excluded, caps, stats, {}};
    const int q = V.ambient().field.q();
    const bool structural =
        pruning.structure_constraints && trivial_excluded && V.size() == q + 1;
    if (structural) {
        partners_structural(ps);
    } else {
        partners_generic(ps, pruning);
    }
    std::sort(ps.found.begin(), ps.found.end(),
              [](const SpaceTuple& a, const SpaceTuple& b) {
                  return a.sorted_encodings() < b.sorted_encodings();
              });
    return std::move(ps.found);
}

namespace {

using PairKey = std::vector<std::uint32_t>;
constexpr std::uint32_t kKeySeparator = 0x10000;  // above any element index

PairKey tuple_key(const SpaceTuple& t) {
    PairKey out;
    for (const auto& e : t.sorted_encodings()) {
        out.insert(out.end(), e.begin(), e.end());
        out.push_back(kKeySeparator);
    }
    return out;
}

// Representative form of a pair-equivalence class: members sorted within
// each tuple, tuples oriented so the smaller key comes first. Equivalent
// pairs normalize to the identical value.
SolutionPair canonical_pair(SpaceTuple u, SpaceTuple v) {
    SpaceTuple su = u.sorted();
    SpaceTuple sv = v.sorted();
    if (tuple_key(sv) < tuple_key(su)) std::swap(su, sv);
    return SolutionPair(std::move(su), std::move(sv));
}

PairKey pair_key(const SolutionPair& p) {
    PairKey a = tuple_key(p.U);
    PairKey b = tuple_key(p.V);
    if (b < a) std::swap(a, b);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

struct FoundEntry {
    PairKey key;
    SolutionPair pair;
    std::optional<Classification> cls;
};

}  // namespace

SearchReport search_nontrivial(const SearchConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const Ambient amb = make_ambient(cfg.field, cfg.dim);
    require(cfg.m >= 1, Errc::Precondition, "tuple length must be positive");
    const int jobs = std::max(1, cfg.jobs);
    const int q = cfg.field.q();

    std::vector<Subspace> subs = enumerate_all_subspaces(amb, cfg.caps.max_subspaces);
    std::sort(subs.begin(), subs.end());
    const std::size_t ns = subs.size();

    std::vector<std::vector<FoundEntry>> worker_found(static_cast<std::size_t>(jobs));
    std::vector<SearchCounts> worker_counts(static_cast<std::size_t>(jobs));

    auto work = [&](int w) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(cfg.m), 0);
        u64 rank = 0;
        while (true) {
            if (rank % static_cast<u64>(jobs) == static_cast<u64>(w)) {
                ++worker_counts[static_cast<std::size_t>(w)].tuples_scanned;
                std::vector<Subspace> members;
                members.reserve(idx.size());
                for (std::size_t i : idx) members.push_back(subs[i]);
                SpaceTuple v(std::move(members));

                PartnerStats stats;
                const std::vector<SpaceTuple> partners =
                    find_partners(v, /*trivial_excluded=*/true, cfg.pruning, cfg.caps, &stats);
                worker_counts[static_cast<std::size_t>(w)].pairs_tested += stats.pairs_tested;
                for (const SpaceTuple& u : partners) {
                    SolutionPair p = canonical_pair(u, v);
                    std::optional<Classification> cls;
                    if (cfg.m == q + 1) {
                        VerifyOptions opts;
                        opts.max_points = cfg.caps.max_points;
                        cls = classify(p, opts);
                    }
                    worker_found[static_cast<std::size_t>(w)].push_back(
                        FoundEntry{pair_key(p), std::move(p), std::move(cls)});
                }
            }
            // Next nondecreasing index tuple.
            int i = cfg.m - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == ns - 1) --i;
            if (i < 0) break;
            const std::size_t next = idx[static_cast<std::size_t>(i)] + 1;
            for (int j = i; j < cfg.m; ++j) idx[static_cast<std::size_t>(j)] = next;
            ++rank;
        }
    };

    std::vector<std::exception_ptr> worker_errors(static_cast<std::size_t>(jobs));
    auto guarded = [&](int w) {
        try {
            work(w);
        } catch (...) {
            worker_errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs) - 1);
    for (int w = 1; w < jobs; ++w) threads.emplace_back(guarded, w);
    guarded(0);
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& err : worker_errors) {
        if (err) std::rethrow_exception(err);
    }

    std::vector<FoundEntry> all;
    for (auto& wf : worker_found) {
        for (auto& e : wf) all.push_back(std::move(e));
    }
    std::sort(all.begin(), all.end(),
              [](const FoundEntry& a, const FoundEntry& b) { return a.key < b.key; });

    SearchReport rep;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (i > 0 && all[i].key == all[i - 1].key) continue;
        rep.solutions.push_back(std::move(all[i].pair));
        rep.classifications.push_back(std::move(all[i].cls));
    }
    for (const SearchCounts& c : worker_counts) {
        rep.counts.tuples_scanned += c.tuples_scanned;
        rep.counts.pairs_tested += c.pairs_tested;
    }
    rep.counts.classes_found = rep.solutions.size();
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace isoeq

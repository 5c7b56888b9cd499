#include "favres/resolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace favres {

std::vector<Axes> subsets_of_size(const Axes& axes, int size) {
    std::vector<Axes> out;
    int n = (int)axes.size();
    if (size < 0 || size > n) return out;
    if (size == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        Axes s(size);
        for (int i = 0; i < size; ++i) s[i] = axes[idx[i]];
        out.push_back(std::move(s));
        int i = size - 1;
        while (i >= 0 && idx[i] == n - size + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace {

Int cech_sign(const Axes& I, int j) {
    int count = 0;
    for (int i : I)
        if (i < j) ++count;
    return count % 2 == 0 ? 1 : -1;
}

int index_of(const std::vector<Axes>& list, const Axes& s) {
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) throw InternalError("subset index lookup failed");
    return (int)(it - list.begin());
}

Axes with_axis(const Axes& I, int j) {
    Axes out = I;
    out.insert(std::upper_bound(out.begin(), out.end(), j), j);
    return out;
}

void check_level(const Params& params, Int level, const char* who) {
    if (level <= 0 || level % params.step != 0)
        throw std::invalid_argument(std::string(who) + ": level must be a positive step multiple");
}

} // namespace

TermResolution koszul_stratum_resolution(const Params& params, const Term& t,
                                         const Tuple& n_on_J) {
    validate_term(params, t);
    Axes J = support(t.orders);
    if (n_on_J.size() != J.size())
        throw std::invalid_argument("koszul resolution: exponent count does not match the support");
    for (Int n : n_on_J)
        if (n <= 0 || n % params.step != 0)
            throw std::invalid_argument("koszul resolution: exponents must be positive step multiples");

    TermResolution res;
    res.source = t;
    res.uniform = false;
    res.J = J;
    res.exponents = n_on_J;
    res.in_shift.assign(params.g, 0);
    for (size_t i = 0; i < J.size(); ++i) res.in_shift[J[i]] = n_on_J[i];

    Weight shifted{add_tuples(t.weight.k, weight_shift_of(params, res.in_shift)), t.weight.w};

    AdmissibleComplex& br = res.bracket;
    br.w = t.weight.w;
    br.lo = 0;
    int len = (int)J.size() + 1;
    br.terms.resize(len);
    if (len > 1) br.diffs.resize(len - 1);
    std::vector<std::vector<Axes>> comps(len);
    for (int s = 0; s < len; ++s) {
        comps[s] = subsets_of_size(J, s);
        for (const Axes& I : comps[s]) {
            Orders M = t.orders;
            for (int i : I) M[i] += res.in_shift[i];
            br.terms[s].push_back({shifted, M});
        }
    }
    Tuple zero(params.g, 0);
    for (int s = 0; s + 1 < len; ++s)
        for (int c = 0; c < (int)comps[s].size(); ++c)
            for (int j : J) {
                if (std::binary_search(comps[s][c].begin(), comps[s][c].end(), j)) continue;
                int row = index_of(comps[s + 1], with_axis(comps[s][c], j));
                br.diffs[s].push_back(
                    {row, c, normalize_mod(cech_sign(comps[s][c], j), params.pm), zero});
            }
    return res;
}

TermResolution lower_dim_resolution(const Params& params, const Term& t, Int level) {
    validate_term(params, t);
    check_level(params, level, "uniform resolution");

    TermResolution res;
    res.source = t;
    res.uniform = true;
    res.level = level;
    res.in_shift.assign(params.g, level);

    Weight shifted{add_tuples(t.weight.k, weight_shift_of(params, res.in_shift)), t.weight.w};

    Axes all(params.g);
    std::iota(all.begin(), all.end(), 0);

    AdmissibleComplex& br = res.bracket;
    br.w = t.weight.w;
    br.lo = 0;
    int len = params.g + 1;
    br.terms.resize(len);
    br.diffs.resize(len - 1);
    std::vector<std::vector<Axes>> comps(len);
    for (int s = 0; s < len; ++s) {
        comps[s] = subsets_of_size(all, s);
        for (const Axes& L : comps[s]) {
            Orders M(params.g, 0);
            for (int l = 0; l < params.g; ++l) {
                if (std::binary_search(L.begin(), L.end(), l))
                    M[l] = level;
                else if (t.orders[l] > 0)
                    M[l] = t.orders[l] + level;
            }
            br.terms[s].push_back({shifted, M});
        }
    }
    Tuple zero(params.g, 0);
    for (int s = 0; s + 1 < len; ++s)
        for (int c = 0; c < (int)comps[s].size(); ++c)
            for (int j : all) {
                if (std::binary_search(comps[s][c].begin(), comps[s][c].end(), j)) continue;
                int row = index_of(comps[s + 1], with_axis(comps[s][c], j));
                br.diffs[s].push_back(
                    {row, c, normalize_mod(cech_sign(comps[s][c], j), params.pm), zero});
            }
    return res;
}

std::vector<std::vector<HomEntry>> connect_resolutions(const Params& params,
                                                       const TermResolution& source_res,
                                                       const TermResolution& target_res,
                                                       const Hom& f) {
    if (!(f.source == source_res.source) || !(f.target == target_res.source))
        throw std::invalid_argument("connect: hom endpoints do not match the resolutions");
    if (!is_admissible(params, f)) throw std::invalid_argument("connect: hom not admissible");
    if (is_zero_map(params, f.target, f.alpha, f.shift))
        throw std::invalid_argument("connect: hom must be nontrivial");
    if (source_res.uniform && !target_res.uniform)
        throw std::invalid_argument("connect: cannot lift from a uniform row into a Koszul row");

    Tuple shift = f.shift;
    if (!source_res.uniform && !target_res.uniform) {
        if (source_res.J != target_res.J || source_res.exponents != target_res.exponents)
            throw std::invalid_argument("connect: Koszul rows must share a plan");
    } else if (!source_res.uniform && target_res.uniform) {
        for (int i = 0; i < params.g; ++i) shift[i] += target_res.level;
        for (size_t i = 0; i < source_res.J.size(); ++i)
            shift[source_res.J[i]] -= source_res.exponents[i];
        for (Int x : shift)
            if (x < 0)
                throw std::invalid_argument("connect: level too small for the Koszul exponents");
    } else {
        if (source_res.level != target_res.level)
            throw std::invalid_argument("connect: uniform rows must share the level");
    }

    Axes all(params.g);
    std::iota(all.begin(), all.end(), 0);
    const Axes& src_axes = source_res.uniform ? all : source_res.J;
    const Axes& tgt_axes = target_res.uniform ? all : target_res.J;

    std::vector<std::vector<HomEntry>> maps(source_res.bracket.terms.size());
    for (int s = 0; s < (int)maps.size(); ++s) {
        std::vector<Axes> src_comps = subsets_of_size(src_axes, s);
        std::vector<Axes> tgt_comps = subsets_of_size(tgt_axes, s);
        if (src_comps.empty()) continue;
        if (s >= (int)target_res.bracket.terms.size())
            throw InternalError("connect: target row too short");
        for (int c = 0; c < (int)src_comps.size(); ++c) {
            int row = index_of(tgt_comps, src_comps[c]);
            Hom induced{source_res.bracket.terms[s][c], target_res.bracket.terms[s][row], f.alpha,
                        shift};
            if (!is_admissible(params, induced))
                throw std::invalid_argument("connect: induced entry not admissible");
            maps[s].push_back({row, c, f.alpha, shift});
        }
    }
    return maps;
}

namespace {

struct SlotRef {
    int deg = 0; // array index into the complex (lo is always 0)
    int row = 0;

    bool operator<(const SlotRef& o) const { return deg != o.deg ? deg < o.deg : row < o.row; }
};

} // namespace

FavorableResolutionResult favorable_resolution(const Params& params, const Weight& wt) {
    if ((int)wt.k.size() != params.g)
        throw std::invalid_argument("favorable_resolution: weight size mismatch");
    if (!is_paritious(wt))
        throw std::invalid_argument("favorable_resolution: weight must be paritious");

    FavorableResolutionResult out;
    out.g1_degenerate = params.g == 1;

    Term t0{wt, Tuple(params.g, 0)};
    out.complex.w = wt.w;
    out.complex.lo = 0;
    out.complex.terms = {{t0}};
    out.augmentation = Hom{t0, t0, 1, Tuple(params.g, 0)};
    out.aug_row = 0;

    std::vector<std::vector<char>> fav = {{0}};
    {
        Favorability f0 = is_favorable(params, t0);
        if (f0.budget_exhausted)
            throw BudgetExhausted("favorable_resolution: favorability search budget exhausted");
        fav[0][0] = f0.favorable ? 1 : 0;
    }

    for (int pass = 0;; ++pass) {
        normalize_zero_entries(params, out.complex);
        std::vector<SlotRef> rem;
        for (int d = 0; d < (int)out.complex.terms.size(); ++d)
            for (int i = 0; i < (int)out.complex.terms[d].size(); ++i)
                if (!fav[d][i]) rem.push_back({d, i});
        if (rem.empty()) break;
        if (pass > params.g) throw InternalError("favorable_resolution: did not terminate");

        auto term_of = [&](const SlotRef& s) -> const Term& {
            return out.complex.terms[s.deg][s.row];
        };

        int r = 0;
        for (const SlotRef& s : rem) r = std::max(r, dimension(term_of(s).orders));

        // group the top-dimensional slots by support
        std::map<Axes, std::vector<SlotRef>> classes;
        for (const SlotRef& s : rem)
            if (dimension(term_of(s).orders) == r) classes[support(term_of(s).orders)].push_back(s);

        IterationPlan plan;
        plan.r = r;
        std::map<Axes, ClassPlan> class_plans;
        Int max_exp = 0;
        for (const auto& [J, slots] : classes) {
            Tuple mmax(params.g, 0);
            std::vector<Weight> weights;
            for (const SlotRef& s : slots) {
                const Term& t = term_of(s);
                for (int i = 0; i < params.g; ++i) mmax[i] = std::max(mmax[i], t.orders[i]);
                weights.push_back(t.weight);
            }
            FavorableExponents fe = make_favorable_exponents(params, J, mmax, weights);
            ClassPlan cp{J, fe.n_on_J, fe.n_off_J, fe.total};
            for (Int x : fe.n_on_J) max_exp = std::max(max_exp, x);
            plan.classes.push_back(cp);
            class_plans[J] = cp;
        }
        Int level = max_exp + params.step;
        plan.lower_level = level;
        out.plans.push_back(plan);

        // resolve every remaining slot; assemble the rows into a grid
        int d_min = rem.front().deg, d_max = rem.back().deg;
        int nrows = d_max - d_min + 1, ncols = params.g + 1;

        DoubleComplex dc;
        dc.w = wt.w;
        dc.row_lo = d_min;
        dc.col_lo = 0;
        dc.cells.assign(nrows, std::vector<std::vector<Term>>(ncols));
        dc.horiz.assign(nrows, std::vector<std::vector<HomEntry>>(ncols - 1));
        if (nrows > 1) dc.vert.assign(nrows - 1, std::vector<std::vector<HomEntry>>(ncols));

        std::map<SlotRef, TermResolution> res_map;
        std::map<SlotRef, std::vector<int>> block_off;
        std::vector<std::vector<std::vector<char>>> cellfav(
            nrows, std::vector<std::vector<char>>(ncols));

        for (const SlotRef& s : rem) {
            const Term& t = term_of(s);
            bool top = dimension(t.orders) == r;
            TermResolution res =
                top ? koszul_stratum_resolution(params, t, class_plans[support(t.orders)].exponents)
                    : lower_dim_resolution(params, t, level);
            int i = s.deg - d_min;
            int len = (int)res.bracket.terms.size();
            std::vector<int> offs(len, 0);
            for (int j = 0; j < len; ++j) {
                offs[j] = (int)dc.cells[i][j].size();
                for (const Term& bt : res.bracket.terms[j]) {
                    dc.cells[i][j].push_back(bt);
                    cellfav[i][j].push_back(top && j == 0 ? 1 : 0);
                }
            }
            for (int j = 0; j + 1 < len; ++j)
                for (const HomEntry& e : res.bracket.diffs[j])
                    dc.horiz[i][j].push_back(
                        {e.row + offs[j + 1], e.col + offs[j], e.alpha, e.shift});
            block_off[s] = std::move(offs);
            res_map[s] = std::move(res);
        }

        // vertical maps from the differential entries between remaining slots
        for (int d = 0; d + 1 < (int)out.complex.terms.size(); ++d)
            for (const HomEntry& e : out.complex.diffs[d]) {
                SlotRef src{d, e.col}, tgt{d + 1, e.row};
                bool src_rem = !fav[d][e.col], tgt_rem = !fav[d + 1][e.row];
                if (!src_rem || !tgt_rem) continue;
                Hom h{term_of(src), term_of(tgt), e.alpha, e.shift};
                auto maps = connect_resolutions(params, res_map[src], res_map[tgt], h);
                for (int j = 0; j < (int)maps.size(); ++j)
                    for (const HomEntry& me : maps[j])
                        dc.vert[d - d_min][j].push_back({me.row + block_off[tgt][j],
                                                         me.col + block_off[src][j], me.alpha,
                                                         me.shift});
            }

        validate_double_complex(params, dc);
        Totalization tot = total(params, dc);

        // merge: favorable slots keep their degrees; grid summands follow the
        // totalization placements
        int old_len = (int)out.complex.terms.size();
        int tot_hi = tot.complex.lo + (int)tot.complex.terms.size() - 1;
        int new_len = std::max(old_len, tot_hi + 1);
        std::vector<std::vector<Term>> nt(new_len);
        std::vector<std::vector<char>> nfav(new_len);
        std::vector<std::vector<int>> fav_newidx(old_len);
        for (int d = 0; d < old_len; ++d) {
            fav_newidx[d].assign(out.complex.terms[d].size(), -1);
            for (int i = 0; i < (int)out.complex.terms[d].size(); ++i)
                if (fav[d][i]) {
                    fav_newidx[d][i] = (int)nt[d].size();
                    nt[d].push_back(out.complex.terms[d][i]);
                    nfav[d].push_back(1);
                }
        }
        std::vector<int> base(new_len, 0);
        for (int n = tot.complex.lo; n <= tot_hi; ++n) {
            base[n] = (int)nt[n].size();
            for (const Term& t : tot.complex.terms[n - tot.complex.lo]) {
                nt[n].push_back(t);
                nfav[n].push_back(0);
            }
        }
        for (const TotalIndex& p : tot.placements)
            nfav[p.degree][base[p.degree] + p.index] = cellfav[p.row - d_min][p.col][p.comp];

        // locate bracket degree-0 summands for retargeting incoming entries
        std::map<std::pair<int, int>, std::pair<int, int>> col0; // (row, comp) -> (degree, index)
        for (const TotalIndex& p : tot.placements)
            if (p.col == 0) col0[{p.row, p.comp}] = {p.degree, base[p.degree] + p.index};
        std::map<SlotRef, std::pair<int, int>> head; // slot -> (degree, new index)
        for (const auto& [s, offs] : block_off) head[s] = col0.at({s.deg, offs[0]});

        std::vector<std::vector<HomEntry>> nd(new_len > 1 ? new_len - 1 : 0);
        for (int d = 0; d + 1 < old_len; ++d)
            for (const HomEntry& e : out.complex.diffs[d]) {
                bool src_fav = fav[d][e.col], tgt_fav = fav[d + 1][e.row];
                if (src_fav && tgt_fav) {
                    nd[d].push_back({fav_newidx[d + 1][e.row], fav_newidx[d][e.col], e.alpha,
                                     e.shift});
                } else if (src_fav && !tgt_fav) {
                    SlotRef tgt{d + 1, e.row};
                    auto [deg, idx] = head.at(tgt);
                    if (deg != d + 1) throw InternalError("resolved head moved degree");
                    nd[d].push_back({idx, fav_newidx[d][e.col], e.alpha,
                                     add_tuples(e.shift, res_map[tgt].in_shift)});
                } else if (!src_fav && tgt_fav) {
                    throw InternalError("favorable_resolution: entry from remainder into the favorable part");
                }
            }
        for (int n = tot.complex.lo; n < tot_hi; ++n)
            for (const HomEntry& e : tot.complex.diffs[n - tot.complex.lo])
                nd[n].push_back({base[n + 1] + e.row, base[n] + e.col, e.alpha, e.shift});

        while (nt.size() > 1 && nt.back().empty()) {
            nt.pop_back();
            nd.pop_back();
            nfav.pop_back();
        }

        AdmissibleComplex nc;
        nc.w = wt.w;
        nc.lo = 0;
        nc.terms = std::move(nt);
        nc.diffs = std::move(nd);
        // lifting a composite that vanished only on a stratum can leave a
        // nonzero composite between the resolved terms; cancel those groups
        strictify_d_squared(params, nc);
        validate_complex(params, nc);
        if (auto bad = check_d_squared(params, nc); !bad.empty()) {
            std::string msg = "favorable_resolution: differential square check failed (pass " +
                              std::to_string(pass) + ", " + std::to_string(bad.size()) +
                              " violations; first at degree " + std::to_string(bad[0].degree) +
                              ", row " + std::to_string(bad[0].row) + ", col " +
                              std::to_string(bad[0].col) + ", shift";
            for (Int x : bad[0].shift) msg += " " + std::to_string(x);
            throw InternalError(msg + ")");
        }

        // the plan must make every Koszul head favorable; verify independently
        for (const auto& [s, res] : res_map) {
            if (res.uniform) continue;
            Favorability f = is_favorable(params, res.bracket.terms[0][0]);
            if (f.budget_exhausted)
                throw BudgetExhausted("favorable_resolution: favorability search budget exhausted");
            if (!f.favorable)
                throw InternalError("favorable_resolution: plan failed to make a head favorable");
        }

        // retarget the augmentation when its target was just resolved
        SlotRef aug_slot{0, out.aug_row};
        if (!fav[0][out.aug_row]) {
            out.augmentation.shift =
                add_tuples(out.augmentation.shift, res_map[aug_slot].in_shift);
            auto [deg, idx] = head.at(aug_slot);
            if (deg != 0) throw InternalError("augmentation target moved degree");
            out.augmentation.target = nc.terms[0][idx];
            out.aug_row = idx;
        } else {
            out.aug_row = fav_newidx[0][out.aug_row];
        }

        out.complex = std::move(nc);
        fav = std::move(nfav);
        ++out.iterations;
    }

    return out;
}

} // namespace favres

#include "favres/complexes.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace favres {

bool is_admissible(const Params& params, const Hom& h) {
    validate_term(params, h.source);
    validate_term(params, h.target);
    if ((int)h.shift.size() != params.g) return false;
    if (h.alpha < 0 || h.alpha >= params.pm) return false;
    if (h.alpha == 0) return true;
    if (h.source.weight.w != h.target.weight.w) return false;
    for (Int r : h.shift)
        if (r < 0 || r % params.step != 0) return false;
    if (sub_tuples(h.target.weight.k, h.source.weight.k) != weight_shift_of(params, h.shift))
        return false;
    for (int i = 0; i < params.g; ++i) {
        if (h.source.orders[i] == 0) continue;
        if (h.target.orders[i] == 0) return false;
        if (h.source.orders[i] + h.shift[i] < h.target.orders[i]) return false;
    }
    return true;
}

bool is_zero_map(const Params& params, const Term& target, Int alpha, const Tuple& shift) {
    if (normalize_mod(alpha, params.pm) == 0) return true;
    for (int i = 0; i < params.g; ++i)
        if (target.orders[i] > 0 && shift[i] >= target.orders[i]) return true;
    return false;
}

Hom compose(const Params& params, const Hom& g, const Hom& f) {
    if (!(f.target == g.source)) throw std::invalid_argument("compose: homs are not composable");
    Hom out;
    out.source = f.source;
    out.target = g.target;
    out.alpha = mul_mod(f.alpha, g.alpha, params.pm);
    out.shift = add_tuples(f.shift, g.shift);
    return out;
}

void validate_complex(const Params& params, const AdmissibleComplex& c) {
    for (const auto& degree : c.terms)
        for (const Term& t : degree) {
            validate_term(params, t);
            if (t.weight.w != c.w) throw std::invalid_argument("complex: parallel components differ");
        }
    size_t want = c.terms.size() > 0 ? c.terms.size() - 1 : 0;
    if (c.diffs.size() != want) throw std::invalid_argument("complex: differential count mismatch");
    for (size_t d = 0; d < c.diffs.size(); ++d)
        for (const HomEntry& e : c.diffs[d]) {
            if (e.col < 0 || e.col >= (int)c.terms[d].size() || e.row < 0 ||
                e.row >= (int)c.terms[d + 1].size())
                throw std::invalid_argument("complex: entry index out of range");
            Hom h{c.terms[d][e.col], c.terms[d + 1][e.row], e.alpha, e.shift};
            if (!is_admissible(params, h))
                throw std::invalid_argument("complex: entry not admissible");
        }
}

namespace {

// key: (row in the far target, col in the source); value: shift -> coefficient
using Groups = std::map<std::pair<int, int>, std::map<Tuple, Int>>;

void accumulate_composites(Groups& g, const std::vector<HomEntry>& first,
                           const std::vector<HomEntry>& second, Int pm, Int sign = 1) {
    for (const HomEntry& a : first)
        for (const HomEntry& b : second) {
            if (b.col != a.row) continue;
            Int prod = mul_mod(mul_mod(a.alpha, b.alpha, pm), normalize_mod(sign, pm), pm);
            Tuple shift = add_tuples(a.shift, b.shift);
            auto& slot = g[{b.row, a.col}][shift];
            slot = add_mod(slot, prod, pm);
        }
}

} // namespace

std::vector<DSquareViolation> check_d_squared(const Params& params, const AdmissibleComplex& c) {
    std::vector<DSquareViolation> out;
    for (size_t d = 0; d + 1 < c.diffs.size(); ++d) {
        Groups g;
        accumulate_composites(g, c.diffs[d], c.diffs[d + 1], params.pm);
        for (const auto& [rc, shifts] : g)
            for (const auto& [shift, sum] : shifts) {
                const Term& target = c.terms[d + 2][rc.first];
                if (!is_zero_map(params, target, sum, shift))
                    out.push_back({c.lo + (int)d, rc.first, rc.second, shift});
            }
    }
    return out;
}

void normalize_zero_entries(const Params& params, AdmissibleComplex& c) {
    for (size_t d = 0; d < c.diffs.size(); ++d) {
        auto& entries = c.diffs[d];
        entries.erase(std::remove_if(entries.begin(), entries.end(),
                                     [&](const HomEntry& e) {
                                         return is_zero_map(params, c.terms[d + 1][e.row], e.alpha,
                                                            e.shift);
                                     }),
                      entries.end());
    }
}

namespace {

// Cancels one residual composite group (src column at degree d, far row at
// degree d + 2, total shift, nonzero non-killed coefficient sum) by factoring
// through an existing entry adjacent to the group. Returns the degree whose
// groups gained new composites besides d itself, or -1 when only degree d is
// affected; throws when no admissible factorization exists.
int cancel_residual_group(const Params& params, AdmissibleComplex& c, size_t d, int far_row,
                          int src_col, const Tuple& shift, Int sum) {
    const Term& far = c.terms[d + 2][far_row];
    auto fits = [](const Tuple& t) {
        return std::all_of(t.begin(), t.end(), [](Int x) { return x >= 0; });
    };
    // preferred: factor through e: src -> mid at degree d, append w: mid -> far
    for (const HomEntry& e : c.diffs[d]) {
        if (e.col != src_col) continue;
        Int ea = normalize_mod(e.alpha, params.pm);
        if (ea == 0 || ea % params.p == 0) continue;
        Tuple ws = sub_tuples(shift, e.shift);
        if (!fits(ws)) continue;
        Int wa = normalize_mod(-mul_mod(sum, inv_mod(ea, params.pm), params.pm), params.pm);
        if (is_zero_map(params, far, wa, ws)) continue;
        if (!is_admissible(params, Hom{c.terms[d + 1][e.row], far, wa, ws})) continue;
        c.diffs[d + 1].push_back({far_row, e.row, wa, ws});
        return d + 2 < c.diffs.size() ? (int)d + 1 : -1;
    }
    // fallback: factor through e: mid -> far at degree d + 1, append w: src -> mid
    for (const HomEntry& e : c.diffs[d + 1]) {
        if (e.row != far_row) continue;
        Int ea = normalize_mod(e.alpha, params.pm);
        if (ea == 0 || ea % params.p == 0) continue;
        Tuple ws = sub_tuples(shift, e.shift);
        if (!fits(ws)) continue;
        Int wa = normalize_mod(-mul_mod(sum, inv_mod(ea, params.pm), params.pm), params.pm);
        const Term& mid = c.terms[d + 1][e.col];
        if (is_zero_map(params, mid, wa, ws)) continue;
        if (!is_admissible(params, Hom{c.terms[d][src_col], mid, wa, ws})) continue;
        c.diffs[d].push_back({e.col, src_col, wa, ws});
        return d > 0 ? (int)d - 1 : -1;
    }
    std::string msg = "strictify_d_squared: no admissible correction (degree " +
                      std::to_string(c.lo + (int)d) + ", row " + std::to_string(far_row) +
                      ", col " + std::to_string(src_col) + ", shift";
    for (Int x : shift) msg += " " + std::to_string(x);
    throw InternalError(msg + ")");
}

} // namespace

void strictify_d_squared(const Params& params, AdmissibleComplex& c) {
    if (c.diffs.size() < 2) return;
    std::set<size_t> dirty;
    for (size_t d = 0; d + 1 < c.diffs.size(); ++d) dirty.insert(d);
    int budget = 1 << 16;
    while (!dirty.empty()) {
        size_t d = *dirty.begin();
        bool corrected = false;
        Groups g;
        accumulate_composites(g, c.diffs[d], c.diffs[d + 1], params.pm);
        for (const auto& [rc, shifts] : g) {
            for (const auto& [shift, sum] : shifts) {
                if (is_zero_map(params, c.terms[d + 2][rc.first], sum, shift)) continue;
                if (--budget < 0)
                    throw InternalError("strictify_d_squared: correction budget exhausted");
                int touched = cancel_residual_group(params, c, d, rc.first, rc.second, shift, sum);
                if (touched >= 0) dirty.insert((size_t)touched);
                corrected = true;
                break;
            }
            if (corrected) break;
        }
        // re-examine the degree after each correction; drop it once clean
        if (!corrected) dirty.erase(dirty.begin());
    }
}

namespace {

const std::vector<Term>* terms_at(const AdmissibleComplex& c, int n) {
    int i = n - c.lo;
    if (i < 0 || i >= (int)c.terms.size()) return nullptr;
    return &c.terms[i];
}

const std::vector<HomEntry>* diff_at(const AdmissibleComplex& c, int n) {
    int i = n - c.lo;
    if (i < 0 || i >= (int)c.diffs.size()) return nullptr;
    return &c.diffs[i];
}

std::vector<HomEntry> map_at(const ChainMap& phi, int n) {
    int i = n - phi.source.lo;
    if (i < 0 || i >= (int)phi.maps.size()) return {};
    return phi.maps[i];
}

} // namespace

void validate_chain_map(const Params& params, const ChainMap& phi) {
    validate_complex(params, phi.source);
    validate_complex(params, phi.target);
    if (phi.maps.size() != phi.source.terms.size())
        throw std::invalid_argument("chain map: matrix count mismatch");
    for (size_t i = 0; i < phi.maps.size(); ++i) {
        int n = phi.source.lo + (int)i;
        const std::vector<Term>* tgt = terms_at(phi.target, n);
        for (const HomEntry& e : phi.maps[i]) {
            if (!tgt || e.row < 0 || e.row >= (int)tgt->size() || e.col < 0 ||
                e.col >= (int)phi.source.terms[i].size())
                throw std::invalid_argument("chain map: entry index out of range");
            Hom h{phi.source.terms[i][e.col], (*tgt)[e.row], e.alpha, e.shift};
            if (!is_admissible(params, h)) throw std::invalid_argument("chain map: entry not admissible");
        }
    }
    // commutation: d_target . phi == phi . d_source, groupwise up to zero maps
    for (size_t i = 0; i < phi.source.terms.size(); ++i) {
        int n = phi.source.lo + (int)i;
        Groups g;
        const std::vector<HomEntry>* dt = diff_at(phi.target, n);
        if (dt) accumulate_composites(g, map_at(phi, n), *dt, params.pm);
        const std::vector<HomEntry>* ds = diff_at(phi.source, n);
        if (ds) accumulate_composites(g, *ds, map_at(phi, n + 1), params.pm, -1);
        const std::vector<Term>* far = terms_at(phi.target, n + 1);
        for (const auto& [rc, shifts] : g)
            for (const auto& [shift, sum] : shifts) {
                if (!far) throw InternalError("chain map: composite lands outside target");
                if (!is_zero_map(params, (*far)[rc.first], sum, shift))
                    throw std::invalid_argument("chain map: does not commute with differentials");
            }
    }
}

AdmissibleComplex cone(const Params& params, const ChainMap& phi) {
    const AdmissibleComplex& src = phi.source;
    const AdmissibleComplex& tgt = phi.target;
    AdmissibleComplex out;
    out.w = tgt.terms.empty() && !src.terms.empty() ? src.w : tgt.w;
    int lo = std::min(tgt.lo, src.lo - 1);
    int hi = std::max(tgt.hi(), src.hi() - 1);
    if (tgt.terms.empty() && src.terms.empty()) return out;
    if (tgt.terms.empty()) {
        lo = src.lo - 1;
        hi = src.hi() - 1;
    } else if (src.terms.empty()) {
        lo = tgt.lo;
        hi = tgt.hi();
    }
    out.lo = lo;
    out.terms.resize(hi - lo + 1);
    for (int n = lo; n <= hi; ++n) {
        auto& slot = out.terms[n - lo];
        if (const auto* a = terms_at(tgt, n)) slot.insert(slot.end(), a->begin(), a->end());
        if (const auto* b = terms_at(src, n + 1)) slot.insert(slot.end(), b->begin(), b->end());
    }
    if (out.terms.size() > 1) out.diffs.resize(out.terms.size() - 1);
    auto tgt_count = [&](int n) {
        const auto* a = terms_at(tgt, n);
        return a ? (int)a->size() : 0;
    };
    for (int n = lo; n < hi; ++n) {
        auto& mat = out.diffs[n - lo];
        if (const auto* d = diff_at(tgt, n))
            for (HomEntry e : *d) mat.push_back(e);
        for (HomEntry e : map_at(phi, n + 1)) {
            e.col += tgt_count(n);
            mat.push_back(e);
        }
        if (const auto* d = diff_at(src, n + 1))
            for (HomEntry e : *d) {
                e.row += tgt_count(n + 1);
                e.col += tgt_count(n);
                e.alpha = normalize_mod(-e.alpha, params.pm);
                mat.push_back(e);
            }
    }
    return out;
}

AdmissibleComplex shift_complex(const Params& params, const AdmissibleComplex& c, int s) {
    AdmissibleComplex out = c;
    out.lo = c.lo - s;
    if (s % 2 != 0)
        for (auto& mat : out.diffs)
            for (HomEntry& e : mat) e.alpha = normalize_mod(-e.alpha, params.pm);
    return out;
}

AdmissibleComplex direct_sum(const Params& params, const AdmissibleComplex& a,
                             const AdmissibleComplex& b) {
    (void)params;
    if (a.terms.empty()) return b;
    if (b.terms.empty()) return a;
    AdmissibleComplex out;
    out.w = a.w;
    out.lo = std::min(a.lo, b.lo);
    int hi = std::max(a.hi(), b.hi());
    out.terms.resize(hi - out.lo + 1);
    if (out.terms.size() > 1) out.diffs.resize(out.terms.size() - 1);
    for (int n = out.lo; n <= hi; ++n) {
        auto& slot = out.terms[n - out.lo];
        if (const auto* x = terms_at(a, n)) slot.insert(slot.end(), x->begin(), x->end());
        if (const auto* y = terms_at(b, n)) slot.insert(slot.end(), y->begin(), y->end());
    }
    auto a_count = [&](int n) {
        const auto* x = terms_at(a, n);
        return x ? (int)x->size() : 0;
    };
    for (int n = out.lo; n < hi; ++n) {
        auto& mat = out.diffs[n - out.lo];
        if (const auto* d = diff_at(a, n))
            for (HomEntry e : *d) mat.push_back(e);
        if (const auto* d = diff_at(b, n))
            for (HomEntry e : *d) {
                e.row += a_count(n + 1);
                e.col += a_count(n);
                mat.push_back(e);
            }
    }
    return out;
}

void validate_double_complex(const Params& params, const DoubleComplex& dc) {
    size_t nrows = dc.cells.size();
    size_t ncols = nrows ? dc.cells[0].size() : 0;
    if (dc.horiz.size() != nrows || (nrows && dc.vert.size() != nrows - 1))
        throw std::invalid_argument("double complex: grid shape mismatch");
    for (size_t i = 0; i < nrows; ++i) {
        if (dc.cells[i].size() != ncols ||
            dc.horiz[i].size() != (ncols ? ncols - 1 : 0) ||
            (i + 1 < nrows && dc.vert[i].size() != ncols))
            throw std::invalid_argument("double complex: grid shape mismatch");
        for (const auto& cell : dc.cells[i])
            for (const Term& t : cell) {
                validate_term(params, t);
                if (t.weight.w != dc.w)
                    throw std::invalid_argument("double complex: parallel components differ");
            }
    }

    auto check_entries = [&](const std::vector<HomEntry>& entries, const std::vector<Term>& src,
                             const std::vector<Term>& tgt) {
        for (const HomEntry& e : entries) {
            if (e.col < 0 || e.col >= (int)src.size() || e.row < 0 || e.row >= (int)tgt.size())
                throw std::invalid_argument("double complex: entry index out of range");
            if (!is_admissible(params, Hom{src[e.col], tgt[e.row], e.alpha, e.shift}))
                throw std::invalid_argument("double complex: entry not admissible");
        }
    };
    for (size_t i = 0; i < nrows; ++i)
        for (size_t j = 0; j + 1 < dc.cells[i].size(); ++j)
            check_entries(dc.horiz[i][j], dc.cells[i][j], dc.cells[i][j + 1]);
    for (size_t i = 0; i + 1 < nrows; ++i)
        for (size_t j = 0; j < dc.vert[i].size(); ++j)
            check_entries(dc.vert[i][j], dc.cells[i][j], dc.cells[i + 1][j]);

    // squares commute: vert . horiz == horiz . vert into cell (i+1, j+1)
    for (size_t i = 0; i + 1 < nrows; ++i)
        for (size_t j = 0; j + 1 < ncols; ++j) {
            Groups g;
            accumulate_composites(g, dc.horiz[i][j], dc.vert[i][j + 1], params.pm);
            accumulate_composites(g, dc.vert[i][j], dc.horiz[i + 1][j], params.pm, -1);
            for (const auto& [rc, shifts] : g)
                for (const auto& [shift, sum] : shifts) {
                    const Term& target = dc.cells[i + 1][j + 1][rc.first];
                    if (!is_zero_map(params, target, sum, shift))
                        throw std::invalid_argument("double complex: squares do not commute");
                }
        }
}

Totalization total(const Params& params, const DoubleComplex& dc) {
    Totalization out;
    out.complex.w = dc.w;
    int nrows = (int)dc.cells.size();
    if (nrows == 0) return out;
    int ncols = 0;
    for (const auto& row : dc.cells) ncols = std::max(ncols, (int)row.size());
    if (ncols == 0) return out;
    int lo = dc.row_lo + dc.col_lo;
    int hi = dc.row_lo + nrows - 1 + dc.col_lo + ncols - 1;
    out.complex.lo = lo;
    out.complex.terms.resize(hi - lo + 1);
    if (out.complex.terms.size() > 1) out.complex.diffs.resize(out.complex.terms.size() - 1);

    // block start of cell (i, j) within its total degree
    std::vector<std::vector<int>> start(nrows);
    for (int i = 0; i < nrows; ++i) start[i].assign(dc.cells[i].size(), 0);
    for (int n = lo; n <= hi; ++n) {
        int off = 0;
        for (int i = 0; i < nrows; ++i) {
            int j = n - dc.row_lo - i - dc.col_lo;
            if (j < 0 || j >= (int)dc.cells[i].size()) continue;
            start[i][j] = off;
            auto& slot = out.complex.terms[n - lo];
            for (int comp = 0; comp < (int)dc.cells[i][j].size(); ++comp) {
                out.placements.push_back(
                    {dc.row_lo + i, dc.col_lo + j, comp, n, off + comp});
                slot.push_back(dc.cells[i][j][comp]);
            }
            off += (int)dc.cells[i][j].size();
        }
    }
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < (int)dc.cells[i].size(); ++j) {
            int n = dc.row_lo + i + dc.col_lo + j;
            if (j + 1 < (int)dc.cells[i].size())
                for (HomEntry e : dc.horiz[i][j]) {
                    e.col += start[i][j];
                    e.row += start[i][j + 1];
                    out.complex.diffs[n - lo].push_back(e);
                }
            if (i + 1 < nrows && j < (int)dc.vert[i].size())
                for (HomEntry e : dc.vert[i][j]) {
                    e.col += start[i][j];
                    e.row += start[i + 1][j];
                    if ((dc.col_lo + j) % 2 != 0) e.alpha = normalize_mod(-e.alpha, params.pm);
                    out.complex.diffs[n - lo].push_back(e);
                }
        }
    return out;
}

DimensionSplit split_by_dimension(const Params& params, const AdmissibleComplex& c, int r) {
    validate_complex(params, c);
    int max_dim = -1;
    for (const auto& degree : c.terms)
        for (const Term& t : degree) max_dim = std::max(max_dim, dimension(t.orders));
    if (max_dim != r) throw std::invalid_argument("split_by_dimension: r is not the top dimension");

    // per degree: classify columns
    struct Slot {
        bool eq = false;
        Axes supp;
        int local = 0; // index within its side
    };
    std::vector<std::vector<Slot>> slots(c.terms.size());
    std::vector<Axes> supports; // lex-ordered distinct dimension-r supports
    for (size_t d = 0; d < c.terms.size(); ++d)
        for (const Term& t : c.terms[d]) {
            if (dimension(t.orders) == r) {
                Axes s = support(t.orders);
                if (std::find(supports.begin(), supports.end(), s) == supports.end())
                    supports.push_back(s);
            }
        }
    std::sort(supports.begin(), supports.end());

    DimensionSplit out;
    std::vector<AdmissibleComplex> cls(supports.size());
    std::vector<std::vector<std::vector<int>>> cls_index(supports.size());
    for (size_t s = 0; s < supports.size(); ++s) {
        cls[s].w = c.w;
        cls[s].lo = c.lo;
        cls[s].terms.resize(c.terms.size());
        cls_index[s].resize(c.terms.size());
    }
    AdmissibleComplex rest;
    rest.w = c.w;
    rest.lo = c.lo - 1;
    rest.terms.resize(c.terms.size());
    std::vector<std::vector<int>> rest_index(c.terms.size());

    for (size_t d = 0; d < c.terms.size(); ++d) {
        slots[d].resize(c.terms[d].size());
        for (size_t t = 0; t < c.terms[d].size(); ++t) {
            const Term& term = c.terms[d][t];
            Slot& slot = slots[d][t];
            if (dimension(term.orders) == r) {
                slot.eq = true;
                slot.supp = support(term.orders);
                size_t s = std::find(supports.begin(), supports.end(), slot.supp) - supports.begin();
                slot.local = (int)cls[s].terms[d].size();
                cls[s].terms[d].push_back(term);
                cls_index[s][d].push_back((int)t);
            } else {
                slot.local = (int)rest.terms[d].size();
                rest.terms[d].push_back(term);
                rest_index[d].push_back((int)t);
            }
        }
    }
    for (auto& k : cls)
        if (k.terms.size() > 1) k.diffs.resize(k.terms.size() - 1);
    if (rest.terms.size() > 1) rest.diffs.resize(rest.terms.size() - 1);

    // connecting map entries per source degree (columns in the eq direct sum)
    std::vector<std::vector<HomEntry>> connecting(c.terms.size());

    for (size_t d = 0; d + 1 < c.terms.size(); ++d) {
        std::vector<int> offs(supports.size(), 0);
        {
            int acc = 0;
            for (size_t s = 0; s < supports.size(); ++s) {
                offs[s] = acc;
                acc += (int)cls[s].terms[d].size();
            }
        }
        for (const HomEntry& e : c.diffs[d]) {
            const Slot& sc = slots[d][e.col];
            const Slot& st = slots[d + 1][e.row];
            const Term& target = c.terms[d + 1][e.row];
            bool zero = is_zero_map(params, target, e.alpha, e.shift);
            if (sc.eq && st.eq) {
                if (sc.supp != st.supp) {
                    if (!zero)
                        throw std::invalid_argument(
                            "split_by_dimension: nonzero map between distinct top supports");
                    continue;
                }
                size_t s = std::find(supports.begin(), supports.end(), sc.supp) - supports.begin();
                cls[s].diffs[d].push_back({st.local, sc.local, e.alpha, e.shift});
            } else if (sc.eq && !st.eq) {
                size_t s = std::find(supports.begin(), supports.end(), sc.supp) - supports.begin();
                connecting[d].push_back(
                    {st.local, offs[s] + sc.local, normalize_mod(-e.alpha, params.pm), e.shift});
            } else if (!sc.eq && st.eq) {
                if (!zero)
                    throw std::invalid_argument(
                        "split_by_dimension: nonzero map from lower dimension into the top");
            } else {
                rest.diffs[d].push_back(
                    {st.local, sc.local, normalize_mod(-e.alpha, params.pm), e.shift});
            }
        }
    }

    for (size_t s = 0; s < supports.size(); ++s)
        out.classes.push_back({supports[s], std::move(cls[s])});
    out.rest = rest;

    AdmissibleComplex eq_sum;
    for (const auto& [supp, k] : out.classes) eq_sum = direct_sum(params, eq_sum, k);
    if (eq_sum.terms.empty()) {
        eq_sum.w = c.w;
        eq_sum.lo = c.lo;
    }
    out.connecting.source = eq_sum;
    out.connecting.target = rest;
    out.connecting.maps.assign(eq_sum.terms.size(), {});
    for (size_t d = 0; d < eq_sum.terms.size() && d < connecting.size(); ++d)
        out.connecting.maps[d] = connecting[d];
    return out;
}

} // namespace favres

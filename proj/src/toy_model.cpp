#include "favres/toy_model.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <thread>
#include <unordered_map>

namespace favres {

MonomialQuotient realize_term(const Params& params, const Term& t) {
    validate_term(params, t);
    return {t.orders};
}

namespace {

long long sat_mul(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<long long>::max() / b)
        return std::numeric_limits<long long>::max();
    return a * b;
}

AdmissibleComplex augmented_complex(const Params& params, const AdmissibleComplex& c,
                                    const Hom& aug, int aug_row) {
    if (c.terms.empty()) throw std::invalid_argument("augment: empty complex");
    if (aug_row < 0 || aug_row >= (int)c.terms[0].size())
        throw std::invalid_argument("augment: row out of range");
    if (!(aug.target == c.terms[0][aug_row]))
        throw std::invalid_argument("augment: target term mismatch");
    if (!is_admissible(params, aug)) throw std::invalid_argument("augment: entry not admissible");
    AdmissibleComplex out;
    out.w = c.w;
    out.lo = c.lo - 1;
    out.terms.reserve(c.terms.size() + 1);
    out.terms.push_back({aug.source});
    out.terms.insert(out.terms.end(), c.terms.begin(), c.terms.end());
    out.diffs.reserve(c.diffs.size() + 1);
    out.diffs.push_back({HomEntry{aug_row, 0, aug.alpha, aug.shift}});
    out.diffs.insert(out.diffs.end(), c.diffs.begin(), c.diffs.end());
    return out;
}

} // namespace

ToyComplex realize_complex(const Params& params, const AdmissibleComplex& input) {
    validate_complex(params, input);
    AdmissibleComplex c = input;
    normalize_zero_entries(params, c);

    ToyComplex tc;
    tc.lo = c.lo;
    tc.modules.resize(c.terms.size());
    tc.windows.resize(c.terms.size());
    tc.diffs = c.diffs;
    for (size_t d = 0; d < c.terms.size(); ++d)
        for (const Term& t : c.terms[d]) tc.modules[d].push_back(realize_term(params, t));

    // realizability: multiplication must carry each source relation into one
    // of the target's (the admissibility carrying condition)
    for (size_t d = 0; d < c.diffs.size(); ++d)
        for (const HomEntry& e : c.diffs[d]) {
            const Tuple& A = tc.modules[d][e.col].bounds;
            const Tuple& B = tc.modules[d + 1][e.row].bounds;
            for (int i = 0; i < params.g; ++i) {
                if (e.shift[i] < 0) throw InternalError("realize: negative exponent");
                if (A[i] > 0 && (B[i] == 0 || A[i] + e.shift[i] < B[i]))
                    throw InternalError("realize: entry does not carry the relations");
            }
        }

    // solve the windows: summand ids, edges from entries
    std::vector<int> first(c.terms.size() + 1, 0);
    for (size_t d = 0; d < c.terms.size(); ++d)
        first[d + 1] = first[d] + (int)c.terms[d].size();
    int n = first.back();
    struct Edge {
        int to;
        Tuple delta; // window[to] = window[from] + delta
    };
    std::vector<std::vector<Edge>> adj(n);
    for (size_t d = 0; d < c.diffs.size(); ++d)
        for (const HomEntry& e : c.diffs[d]) {
            int s = first[d] + e.col, t = first[d + 1] + e.row;
            Tuple neg(params.g);
            for (int i = 0; i < params.g; ++i) neg[i] = -e.shift[i];
            adj[s].push_back({t, neg});      // window[t] = window[s] - shift
            adj[t].push_back({s, e.shift}); // window[s] = window[t] + shift
        }

    std::vector<Tuple> win(n);
    std::vector<int> seen(n, 0);
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<int> comp;
        win[root] = Tuple(params.g, 0);
        seen[root] = 1;
        std::vector<int> queue = {root};
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            comp.push_back(v);
            for (const Edge& e : adj[v]) {
                Tuple w = add_tuples(win[v], e.delta);
                if (!seen[e.to]) {
                    seen[e.to] = 1;
                    win[e.to] = w;
                    queue.push_back(e.to);
                } else if (win[e.to] != w) {
                    throw InternalError("realize: inconsistent multigrading windows");
                }
            }
        }
        Tuple low(params.g, std::numeric_limits<Int>::max());
        for (int v : comp)
            for (int i = 0; i < params.g; ++i) low[i] = std::min(low[i], win[v][i]);
        for (int v : comp)
            for (int i = 0; i < params.g; ++i) win[v][i] -= low[i];
    }
    for (size_t d = 0; d < c.terms.size(); ++d)
        for (int i = 0; i < (int)c.terms[d].size(); ++i)
            tc.windows[d].push_back(win[first[d] + i]);
    return tc;
}

ToyComplex realize_augmented(const Params& params, const AdmissibleComplex& c, const Hom& aug,
                             int aug_row) {
    return realize_complex(params, augmented_complex(params, c, aug, aug_row));
}

StrandComplex strand(const Params& params, const ToyComplex& tc, const Tuple& a) {
    for (Int x : a)
        if (x < 0) throw std::invalid_argument("strand: multidegree must be nonnegative");
    StrandComplex out;
    out.lo = tc.lo;
    int len = (int)tc.modules.size();
    out.dims.assign(len, 0);
    std::vector<std::vector<int>> pos(len);
    for (int d = 0; d < len; ++d) {
        pos[d].assign(tc.modules[d].size(), -1);
        for (size_t i = 0; i < tc.modules[d].size(); ++i) {
            bool alive = true;
            for (int j = 0; j < params.g && alive; ++j) {
                Int u = a[j] - tc.windows[d][i][j];
                alive = u >= 0 && (tc.modules[d][i].bounds[j] == 0 ||
                                   u < tc.modules[d][i].bounds[j]);
            }
            if (alive) pos[d][i] = out.dims[d]++;
        }
    }
    for (int d = 0; d + 1 < len; ++d) {
        Mat mat(out.dims[d + 1], out.dims[d]);
        for (const HomEntry& e : tc.diffs[d]) {
            int cs = pos[d][e.col], rt = pos[d + 1][e.row];
            if (cs < 0 || rt < 0) continue;
            mat.at(rt, cs) = add_mod(mat.at(rt, cs), e.alpha, params.pm);
        }
        out.mats.push_back(std::move(mat));
    }
    return out;
}

namespace {

struct FlatSummand {
    int deg = 0; // array index, absolute degree = lo + deg
    int idx = 0;
    Tuple window;
    Tuple bounds;
};

struct StrandVerdict {
    bool exact = true;
    std::vector<std::pair<int, std::vector<int>>> bad; // (degree array index, divisors)
};

class MaskChecker {
public:
    MaskChecker(const Params& params, const ToyComplex& tc) : params_(params), tc_(tc) {
        len_ = (int)tc.modules.size();
        for (int d = 0; d < len_; ++d)
            for (size_t i = 0; i < tc.modules[d].size(); ++i)
                flats_.push_back({d, (int)i, tc.windows[d][i], tc.modules[d][i].bounds});
        flat_of_.resize(len_);
        int id = 0;
        for (int d = 0; d < len_; ++d) {
            flat_of_[d].resize(tc.modules[d].size());
            for (size_t i = 0; i < tc.modules[d].size(); ++i) flat_of_[d][i] = id++;
        }
    }

    const std::vector<FlatSummand>& flats() const { return flats_; }
    int words() const { return (int)((flats_.size() + 63) / 64); }

    StrandVerdict check(const std::vector<std::uint64_t>& mask) const {
        auto alive = [&](int flat) {
            return (mask[flat >> 6] >> (flat & 63)) & 1u;
        };
        std::vector<int> dims(len_, 0);
        std::vector<std::vector<int>> pos(len_);
        for (int d = 0; d < len_; ++d) {
            pos[d].assign(tc_.modules[d].size(), -1);
            for (size_t i = 0; i < tc_.modules[d].size(); ++i)
                if (alive(flat_of_[d][i])) pos[d][i] = dims[d]++;
        }
        std::vector<Mat> mats;
        for (int d = 0; d + 1 < len_; ++d) {
            Mat mat(dims[d + 1], dims[d]);
            for (const HomEntry& e : tc_.diffs[d]) {
                int cs = pos[d][e.col], rt = pos[d + 1][e.row];
                if (cs < 0 || rt < 0) continue;
                mat.at(rt, cs) = add_mod(mat.at(rt, cs), e.alpha, params_.pm);
            }
            mats.push_back(std::move(mat));
        }
        StrandVerdict v;
        if (params_.m == 1) {
            std::vector<int> rk(len_ + 1, 0);
            for (int d = 0; d + 1 < len_; ++d) rk[d + 1] = rank_mod_p(mats[d], params_.p);
            // rk[d+1] = rank of the map out of degree d; rk[0] = rank into lo = 0
            for (int d = 0; d < len_; ++d) {
                int in = rk[d];
                int out = d + 1 < len_ ? rk[d + 1] : 0;
                int h = dims[d] - in - out;
                if (h < 0) throw InternalError("strand check: rank inconsistency");
                if (h > 0) {
                    v.exact = false;
                    v.bad.push_back({d, std::vector<int>(h, 1)});
                }
            }
        } else {
            for (int d = 0; d < len_; ++d) {
                Mat din = d > 0 ? mats[d - 1] : Mat(dims[d], 0);
                Mat dout = d + 1 < len_ ? mats[d] : Mat(0, dims[d]);
                std::vector<int> div = homology_over_Zpm(din, dout, params_.p, params_.m);
                if (!div.empty()) {
                    v.exact = false;
                    v.bad.push_back({d, div});
                }
            }
        }
        return v;
    }

private:
    const Params& params_;
    const ToyComplex& tc_;
    int len_ = 0;
    std::vector<FlatSummand> flats_;
    std::vector<std::vector<int>> flat_of_;
};

struct AxisIntervals {
    std::vector<Int> starts;                         // interval k = [starts[k], starts[k+1])
    std::vector<std::vector<std::uint64_t>> masks; // summands alive across interval k
};

AxisIntervals build_axis(const MaskChecker& mc, int axis, Int box) {
    AxisIntervals out;
    std::vector<Int> cuts = {0, box};
    for (const FlatSummand& f : mc.flats()) {
        Int lo = f.window[axis];
        if (lo > 0 && lo < box) cuts.push_back(lo);
        if (f.bounds[axis] > 0) {
            Int hi = f.window[axis] + f.bounds[axis];
            if (hi > 0 && hi < box) cuts.push_back(hi);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    out.starts = cuts;
    int w = mc.words();
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        std::vector<std::uint64_t> mask(w, 0);
        Int a = cuts[k], b = cuts[k + 1];
        for (size_t f = 0; f < mc.flats().size(); ++f) {
            const FlatSummand& s = mc.flats()[f];
            bool alive = a >= s.window[axis] &&
                         (s.bounds[axis] == 0 || b <= s.window[axis] + s.bounds[axis]);
            if (alive) mask[f >> 6] |= std::uint64_t(1) << (f & 63);
        }
        out.masks.push_back(std::move(mask));
    }
    return out;
}

struct WorkerResult {
    long long strands = 0;
    long long cells = 0;
    long long failed = 0;
    std::vector<StrandFailure> failures;
};

void record_failures(WorkerResult& r, const StrandVerdict& v, const Tuple& corner, int lo,
                     long long volume) {
    r.failed += volume;
    for (const auto& [deg, div] : v.bad)
        if ((int)r.failures.size() < 4 * kMaxReportedFailures)
            r.failures.push_back({corner, lo + deg, div});
}

void run_cells(const Params& params, const MaskChecker& mc,
               const std::vector<AxisIntervals>& axes, int lo, int first_lo, int first_hi,
               WorkerResult& res) {
    int g = params.g;
    int w = mc.words();
    std::vector<std::vector<std::uint64_t>> level(g + 1, std::vector<std::uint64_t>(w));
    for (int i = 0; i < w; ++i) level[0][i] = ~std::uint64_t(0);
    std::vector<long long> tail_volume(g + 1, 1);
    for (int i = g - 1; i >= 0; --i)
        tail_volume[i] =
            sat_mul(tail_volume[i + 1], axes[i].starts.back() - axes[i].starts.front());

    std::unordered_map<std::string, int> memo;
    std::vector<StrandVerdict> verdicts;
    Tuple corner(g, 0);
    std::vector<long long> widths(g, 1);

    // iterative depth-first product over axis intervals
    std::vector<int> pick(g, 0);
    int depth = 0;
    while (true) {
        if (depth == g) {
            long long volume = 1;
            for (int i = 0; i < g; ++i) volume = sat_mul(volume, widths[i]);
            res.strands += volume;
            res.cells += 1;
            const auto& mask = level[g];
            std::string key((const char*)mask.data(), mask.size() * sizeof(std::uint64_t));
            auto it = memo.find(key);
            int vi;
            if (it == memo.end()) {
                verdicts.push_back(mc.check(mask));
                vi = (int)verdicts.size() - 1;
                memo.emplace(std::move(key), vi);
            } else {
                vi = it->second;
            }
            if (!verdicts[vi].exact) record_failures(res, verdicts[vi], corner, lo, volume);
            --depth;
            ++pick[depth];
            continue;
        }
        int count = (int)axes[depth].masks.size();
        int begin = depth == 0 ? first_lo : 0;
        int end = depth == 0 ? first_hi : count;
        if (pick[depth] == 0 && depth == 0) pick[depth] = begin;
        if (pick[depth] >= end) {
            if (depth == 0) break;
            --depth;
            ++pick[depth];
            continue;
        }
        int k = pick[depth];
        corner[depth] = axes[depth].starts[k];
        widths[depth] = axes[depth].starts[k + 1] - axes[depth].starts[k];
        bool empty = true;
        for (int i = 0; i < w; ++i) {
            level[depth + 1][i] = level[depth][i] & axes[depth].masks[k][i];
            if (level[depth + 1][i]) empty = false;
        }
        if (empty) {
            // nothing contributes anywhere in this block: exact by emptiness
            long long volume = 1;
            for (int i = 0; i <= depth; ++i) volume = sat_mul(volume, widths[i]);
            res.strands += sat_mul(volume, tail_volume[depth + 1]);
            res.cells += 1;
            ++pick[depth];
            continue;
        }
        pick[depth + 1] = 0;
        ++depth;
    }
}

Tuple checked_box(const Params& params, const ToyComplex& tc, const VerifyOptions& options) {
    Tuple box = options.box ? *options.box : default_box(params, tc);
    if ((int)box.size() != params.g) throw std::invalid_argument("box size mismatch");
    for (int i = 0; i < params.g; ++i) {
        Int need = 0;
        for (const auto& degree : tc.modules)
            for (const MonomialQuotient& q : degree) need = std::max(need, q.bounds[i]);
        for (const auto& degree : tc.diffs)
            for (const HomEntry& e : degree) need = std::max(need, e.shift[i]);
        if (box[i] <= need)
            throw BoxTooSmall("box axis " + std::to_string(i) + " must exceed " +
                              std::to_string(need));
    }
    return box;
}

} // namespace

Tuple default_box(const Params& params, const ToyComplex& tc) {
    Tuple box(params.g, 1);
    for (int i = 0; i < params.g; ++i) {
        Int b = 0;
        for (size_t d = 0; d < tc.modules.size(); ++d)
            for (size_t s = 0; s < tc.modules[d].size(); ++s) {
                Int lo = tc.windows[d][s][i];
                b = std::max(b, lo);
                if (tc.modules[d][s].bounds[i] > 0)
                    b = std::max(b, lo + tc.modules[d][s].bounds[i]);
            }
        for (const auto& degree : tc.diffs)
            for (const HomEntry& e : degree) b = std::max(b, e.shift[i]);
        for (size_t d = 0; d + 1 < tc.diffs.size(); ++d)
            for (const HomEntry& e1 : tc.diffs[d])
                for (const HomEntry& e2 : tc.diffs[d + 1])
                    if (e2.col == e1.row) b = std::max(b, e1.shift[i] + e2.shift[i]);
        box[i] = b + 1;
    }
    return box;
}

VerificationReport verify_exactness(const Params& params, const ToyComplex& tc,
                                    const VerifyOptions& options) {
    VerificationReport report;
    report.box = checked_box(params, tc, options);
    MaskChecker mc(params, tc);

    if (options.direct) {
        // independent slow path: walk every multidegree in the box
        Tuple a(params.g, 0);
        while (true) {
            StrandComplex sc = strand(params, tc, a);
            StrandVerdict v;
            if (params.m == 1) {
                std::vector<int> rk(sc.dims.size() + 1, 0);
                for (size_t d = 0; d + 1 < sc.dims.size(); ++d)
                    rk[d + 1] = rank_mod_p(sc.mats[d], params.p);
                for (size_t d = 0; d < sc.dims.size(); ++d) {
                    int out = d + 1 < sc.dims.size() ? rk[d + 1] : 0;
                    int h = sc.dims[d] - rk[d] - out;
                    if (h > 0) v.bad.push_back({(int)d, std::vector<int>(h, 1)});
                }
            } else {
                for (size_t d = 0; d < sc.dims.size(); ++d) {
                    Mat din = d > 0 ? sc.mats[d - 1] : Mat(sc.dims[d], 0);
                    Mat dout = d + 1 < sc.dims.size() ? sc.mats[d] : Mat(0, sc.dims[d]);
                    std::vector<int> div = homology_over_Zpm(din, dout, params.p, params.m);
                    if (!div.empty()) v.bad.push_back({(int)d, div});
                }
            }
            v.exact = v.bad.empty();
            ++report.strands_checked;
            ++report.cells;
            if (!v.exact) {
                report.failed_strands += 1;
                for (const auto& [deg, div] : v.bad)
                    if ((int)report.failures.size() < 4 * kMaxReportedFailures)
                        report.failures.push_back({a, tc.lo + deg, div});
            }
            int i = params.g - 1;
            while (i >= 0 && a[i] + 1 >= report.box[i]) a[i--] = 0;
            if (i < 0) break;
            ++a[i];
        }
    } else {
        std::vector<AxisIntervals> axes;
        for (int i = 0; i < params.g; ++i) axes.push_back(build_axis(mc, i, report.box[i]));
        int first_count = (int)axes[0].masks.size();
        int jobs = std::max(1, std::min(options.jobs, first_count));
        std::vector<WorkerResult> results(jobs);
        if (jobs == 1) {
            run_cells(params, mc, axes, tc.lo, 0, first_count, results[0]);
        } else {
            std::vector<std::thread> threads;
            for (int t = 0; t < jobs; ++t) {
                int lo = (int)((long long)first_count * t / jobs);
                int hi = (int)((long long)first_count * (t + 1) / jobs);
                threads.emplace_back([&, t, lo, hi] {
                    run_cells(params, mc, axes, tc.lo, lo, hi, results[t]);
                });
            }
            for (auto& th : threads) th.join();
        }
        for (const WorkerResult& r : results) {
            report.strands_checked += r.strands;
            report.cells += r.cells;
            report.failed_strands += r.failed;
            report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
        }
    }

    std::sort(report.failures.begin(), report.failures.end(),
              [](const StrandFailure& x, const StrandFailure& y) {
                  if (x.multidegree != y.multidegree) return x.multidegree < y.multidegree;
                  return x.degree < y.degree;
              });
    if ((int)report.failures.size() > kMaxReportedFailures)
        report.failures.resize(kMaxReportedFailures);
    report.ok = report.failed_strands == 0;
    return report;
}

VerificationReport verify_exactness(const Params& params, const AdmissibleComplex& c,
                                    const VerifyOptions& options) {
    return verify_exactness(params, realize_complex(params, c), options);
}

VerificationReport verify_quasi_isomorphism(const Params& params, const AdmissibleComplex& c,
                                            const Hom& aug, int aug_row,
                                            const VerifyOptions& options) {
    return verify_exactness(params, realize_augmented(params, c, aug, aug_row), options);
}

} // namespace favres

#include "favres/cli.hpp"

#include "favres/serialization.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace favres {

namespace {

void emit(const Json& j, const std::string& out_path) {
    std::cout << dump_json(j);
    if (!out_path.empty()) write_json_file(out_path, j);
}

Tuple json_values(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError("missing key '" + std::string(key) + "'");
    const Json& arr = j.at(key);
    if (!arr.is_array()) throw ParseError(std::string(key) + " must be an array");
    Tuple out;
    for (const Json& x : arr) {
        if (!x.is_number_integer()) throw ParseError(std::string(key) + " must hold integers");
        out.push_back(x.get<Int>());
    }
    return out;
}

int cmd_resolve(const RunConfig& cfg, const Tuple& k, Int w) {
    Params params(cfg.p, cfg.g, cfg.m, cfg.delta_threshold);
    if ((int)k.size() != params.g)
        throw std::invalid_argument("resolve: --k must list one entry per axis");
    FavorableResolutionResult result = favorable_resolution(params, Weight{k, w});
    emit(complex_file_to_json(to_complex_file(params, result)), cfg.out);
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& input, const std::string& mode,
               bool direct) {
    ComplexFile file = complex_file_from_json(parse_json_file(input));
    const Params& params = file.params;
    validate_complex(params, file.complex);
    {
        AdmissibleComplex probe = file.complex;
        normalize_zero_entries(params, probe);
        auto violations = check_d_squared(params, probe);
        if (!violations.empty()) {
            std::cerr << "verify: d^2 != 0 at degree " << violations[0].degree << " (row "
                      << violations[0].row << ", col " << violations[0].col << ")\n";
            return 4;
        }
    }
    VerifyOptions options;
    options.box = cfg.box;
    options.jobs = cfg.jobs;
    options.direct = direct;
    VerificationReport report;
    if (mode == "exactness") {
        report = verify_exactness(params, file.complex, options);
    } else {
        if (!file.augmentation)
            throw std::invalid_argument("verify: quasi-iso mode needs an augmentation");
        report = verify_quasi_isomorphism(params, file.complex, *file.augmentation,
                                          file.aug_row, options);
    }
    emit(report_to_json(report), cfg.out);
    return report.ok ? 0 : 5;
}

int cmd_koszul(const RunConfig& cfg, const std::string& kind, const Tuple& k, Int w,
               const Tuple& orders, const Tuple& exponents, Int level) {
    Params params(cfg.p, cfg.g, cfg.m, cfg.delta_threshold);
    if ((int)k.size() != params.g)
        throw std::invalid_argument("koszul: --k must list one entry per axis");
    if ((int)orders.size() != params.g)
        throw std::invalid_argument("koszul: --M must list one entry per axis");
    Term t{Weight{k, w}, orders};
    TermResolution res = kind == "stratum" ? koszul_stratum_resolution(params, t, exponents)
                                           : lower_dim_resolution(params, t, level);
    ComplexFile file;
    file.params = params;
    file.complex = res.bracket;
    file.augmentation = Hom{res.source, res.bracket.terms[0][0], 1, res.in_shift};
    file.aug_row = 0;
    emit(complex_file_to_json(file), cfg.out);
    return 0;
}

int cmd_pseudorep_check(const RunConfig& cfg, const std::string& group_path,
                        const std::string& tau_path, int d) {
    GroupFile gf = group_file_from_json(parse_json_file(group_path));
    Params params(cfg.p, 1, cfg.m, cfg.delta_threshold);
    PseudoRep pr;
    pr.modulus = params.pm;
    pr.d = d;
    for (Int v : json_values(parse_json_file(tau_path), "values"))
        pr.values.push_back(normalize_mod(v, pr.modulus));
    PseudoRepVerdict v = check_pseudo_rep(gf.group, pr, cfg.budget, cfg.seed);
    emit(verdict_to_json(v), cfg.out);
    return verdict_ok(v) ? 0 : 5;
}

int cmd_pseudorep_relations(const RunConfig& cfg, const std::string& group_path,
                            const std::string& tau_path) {
    GroupFile gf = group_file_from_json(parse_json_file(group_path));
    std::vector<Polynomial> rels = universal_ring_relations(gf.group);
    Json j;
    j["count"] = rels.size();
    Json raw = Json::array();
    for (const Polynomial& p : rels) raw.push_back(p.to_string(gf.group.names));
    j["relations"] = std::move(raw);
    Json reduced = Json::array();
    for (const Polynomial& p : rels) {
        Polynomial q = substitute_two(p, gf.group.identity);
        if (!q.is_zero()) reduced.push_back(q.to_string(gf.group.names));
    }
    j["reduced"] = std::move(reduced);
    int status = 0;
    if (!tau_path.empty()) {
        Params params(cfg.p, 1, cfg.m, cfg.delta_threshold);
        Tuple tau = json_values(parse_json_file(tau_path), "values");
        std::vector<Int> residuals = evaluate_relations(rels, tau, params.pm);
        j["residuals"] = residuals;
        for (Int r : residuals)
            if (r != 0) status = 5;
    }
    emit(j, cfg.out);
    return status;
}

int cmd_pseudorep_from_rep(const RunConfig& cfg, const std::string& group_path,
                           const std::string& rep_path) {
    GroupFile gf = group_file_from_json(parse_json_file(group_path));
    Params params(cfg.p, 1, cfg.m, cfg.delta_threshold);
    Json rj = parse_json_file(rep_path);
    if (!rj.is_object() || !rj.contains("matrices") || !rj.at("matrices").is_array())
        throw ParseError("rep file needs a 'matrices' array");
    std::vector<Mat> rho;
    for (const Json& mj : rj.at("matrices")) {
        if (!mj.is_array() || mj.empty()) throw ParseError("matrix must be a nonempty array");
        int n = (int)mj.size();
        Mat mt(n, n);
        for (int r = 0; r < n; ++r) {
            const Json& row = mj.at(r);
            if (!row.is_array() || (int)row.size() != n)
                throw ParseError("matrix rows must all have the same length");
            for (int c = 0; c < n; ++c) {
                if (!row.at(c).is_number_integer())
                    throw ParseError("matrix entries must be integers");
                mt.at(r, c) = row.at(c).get<Int>();
            }
        }
        rho.push_back(std::move(mt));
    }
    PseudoRep pr = trace_of_rep(gf.group, rho, params.pm);
    PseudoRepVerdict v = check_pseudo_rep(gf.group, pr, cfg.budget, cfg.seed);
    Json j;
    j["tau"] = pr.values;
    j["d"] = pr.d;
    j["verdict"] = verdict_to_json(v);
    emit(j, cfg.out);
    return verdict_ok(v) ? 0 : 5;
}

int cmd_pseudorep_hecke(const RunConfig& cfg, const std::string& group_path,
                        const std::string& table_path) {
    GroupFile gf = group_file_from_json(parse_json_file(group_path));
    if (gf.labels.empty())
        throw std::invalid_argument("hecke: group file carries no class labels");
    Params params(cfg.p, 1, cfg.m, cfg.delta_threshold);
    Json tj = parse_json_file(table_path);
    if (!tj.is_object()) throw ParseError("eigenvalue table must be an object");
    std::map<std::string, Int> table;
    for (const auto& [key, value] : tj.items()) {
        if (!value.is_number_integer()) throw ParseError("eigenvalues must be integers");
        table[key] = value.get<Int>();
    }
    PseudoRep pr;
    PseudoRepVerdict v =
        hecke_assignment(gf.group, gf.labels, table, params.pm, &pr, cfg.budget, cfg.seed);
    Json j;
    j["tau"] = pr.values;
    j["verdict"] = verdict_to_json(v);
    emit(j, cfg.out);
    return verdict_ok(v) ? 0 : 5;
}

int run_impl(const std::vector<std::string>& args) {
    CLI::App app{"weight resolution calculus: favorable complexes, exactness checks, traces"};
    app.require_subcommand(1);

    RunConfig cfg;
    Tuple k, orders, exponents, box_flag;
    Int w = 0, level = 0;
    std::string input, mode, kind, group_path, tau_path, rep_path, table_path;
    bool direct = false;
    int d = 2, jobs_flag = 0;

    auto add_ring = [&](CLI::App* sub, bool with_g) {
        sub->add_option("--p", cfg.p, "prime")->required();
        if (with_g) sub->add_option("--g", cfg.g, "number of axes")->required();
        sub->add_option("--m", cfg.m, "coefficient precision: ring Z/p^m")->required();
        sub->add_option("--threshold", cfg.delta_threshold, "positivity-cone threshold");
        sub->add_option("--out", cfg.out, "also write the JSON output to this file");
    };

    CLI::App* resolve = app.add_subcommand("resolve", "build a favorable resolution");
    add_ring(resolve, true);
    resolve->add_option("--k", k, "weight components")->required()->delimiter(',');
    resolve->add_option("--w", w, "parallel weight component")->required();

    CLI::App* verify = app.add_subcommand("verify", "check exactness strand by strand");
    verify->add_option("--input", input, "complex JSON file")->required();
    verify->add_option("--mode", mode, "exactness | quasi-iso")
        ->required()
        ->check(CLI::IsMember({"exactness", "quasi-iso"}));
    verify->add_option("--box", box_flag, "verification box override")->delimiter(',');
    verify->add_option("--jobs", jobs_flag, "worker threads (default: FAVRES_JOBS or 1)");
    verify->add_flag("--direct", direct, "enumerate every multidegree (slow cross-check)");
    verify->add_option("--out", cfg.out, "also write the report to this file");

    CLI::App* koszul = app.add_subcommand("koszul", "emit one termwise resolution");
    add_ring(koszul, true);
    koszul->add_option("--kind", kind, "stratum | lower")
        ->required()
        ->check(CLI::IsMember({"stratum", "lower"}));
    koszul->add_option("--k", k, "weight components")->required()->delimiter(',');
    koszul->add_option("--w", w, "parallel weight component")->required();
    koszul->add_option("--M", orders, "vanishing orders")->required()->delimiter(',');
    koszul->add_option("--exponents", exponents, "stratum kind: exponents along the support")
        ->delimiter(',');
    koszul->add_option("--level", level, "lower kind: uniform level");

    CLI::App* prep = app.add_subcommand("pseudorep", "trace-function checks");
    prep->require_subcommand(1);
    CLI::App* pc = prep->add_subcommand("check", "validate a candidate trace function");
    CLI::App* prl = prep->add_subcommand("relations", "emit the universal ring relations");
    CLI::App* pfr = prep->add_subcommand("from-rep", "trace of an explicit matrix rep");
    CLI::App* ph = prep->add_subcommand("hecke", "pull back an eigenvalue table");
    for (CLI::App* sub : {pc, prl, pfr, ph}) {
        add_ring(sub, false);
        sub->add_option("--group", group_path, "group table JSON")->required();
        sub->add_option("--budget", cfg.budget, "exhaustive sweep budget");
        sub->add_option("--seed", cfg.seed, "seed for sampled sweeps");
    }
    pc->add_option("--tau", tau_path, "trace values JSON")->required();
    pc->add_option("--d", d, "claimed dimension")->required();
    prl->add_option("--eval", tau_path, "evaluate the relations at these trace values");
    pfr->add_option("--rep", rep_path, "matrix representation JSON")->required();
    ph->add_option("--table", table_path, "label -> eigenvalue JSON")->required();

    std::vector<const char*> argv;
    argv.push_back("favres");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints help text or the flag error
        return code == 0 ? 0 : 2;
    }

    cfg.jobs = effective_jobs(jobs_flag);
    if (!box_flag.empty()) cfg.box = box_flag;

    if (*resolve) return cmd_resolve(cfg, k, w);
    if (*verify) return cmd_verify(cfg, input, mode, direct);
    if (*koszul) {
        if (kind == "stratum" && koszul->count("--level"))
            throw std::invalid_argument("koszul: --level applies to the lower kind only");
        if (kind == "lower" && koszul->count("--exponents"))
            throw std::invalid_argument("koszul: --exponents applies to the stratum kind only");
        return cmd_koszul(cfg, kind, k, w, orders, exponents, level);
    }
    if (*pc) return cmd_pseudorep_check(cfg, group_path, tau_path, d);
    if (*prl) return cmd_pseudorep_relations(cfg, group_path, tau_path);
    if (*pfr) return cmd_pseudorep_from_rep(cfg, group_path, rep_path);
    if (*ph) return cmd_pseudorep_hecke(cfg, group_path, table_path);
    throw InternalError("cli: no subcommand dispatched");
}

} // namespace

int effective_jobs(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("FAVRES_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

int run_cli(const std::vector<std::string>& args) {
    try {
        return run_impl(args);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const BoxTooSmall& e) {
        std::cerr << "box error: " << e.what() << "\n";
        return 4;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 6;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace favres

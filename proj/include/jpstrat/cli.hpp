#ifndef JPSTRAT_CLI_HPP
#define JPSTRAT_CLI_HPP

#include <jpstrat/efficiency.hpp>
#include <jpstrat/io.hpp>
#include <jpstrat/mcverify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace jps::cli {

using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 20240801;
    std::string out = "-";
    std::string format;  // per-command default when empty
    int threads = 0;     // 0: hardware concurrency
};

namespace detail {

inline void add_global(CLI::App* cmd, GlobalOpts& g) {
    cmd->set_help_flag("--help", "print help");  // frees -h/--h for the class size
    cmd->add_option("--seed", g.seed, "rng seed recorded in output metadata");
    cmd->add_option("--out", g.out, "output path ('-' = stdout)");
    cmd->add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", g.threads, "worker threads (does not affect results)");
    // consumed by expand_config before parsing; registered so --help lists it
    cmd->add_option("--config", "key=value file mirroring the flags; flags win");
}

// Expands `--config FILE` into leading flags so explicit flags override file
// values.  Accepted entries: `key=value`, optional `[subcommand]` headers and
// `subcommand.key=value`; entries for other subcommands are ignored.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
    }
    if (path.empty() || args.empty()) return args;
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    const std::string sub = args[0];
    auto given = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag) return true;
        return false;
    };
    std::vector<std::string> injected;
    std::string line, section;
    while (std::getline(is, line)) {
        auto l = line.find_first_not_of(" \t");
        if (l == std::string::npos || line[l] == '#' || line[l] == ';') continue;
        line = line.substr(l, line.find_last_not_of(" \t\r") - l + 1);
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto dot = key.find('.');
        std::string scope = section;
        if (dot != std::string::npos) {
            scope = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        if (!scope.empty() && scope != sub) continue;
        if (val.size() >= 2 && ((val.front() == '"' && val.back() == '"') ||
                                (val.front() == '\'' && val.back() == '\'')))
            val = val.substr(1, val.size() - 2);
        std::string flag = "--" + key;
        if (!given(flag)) {
            injected.push_back(flag);
            injected.push_back(val);
        }
    }
    std::vector<std::string> out;
    out.push_back(sub);
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

inline int threads_of(const GlobalOpts& g) { return g.threads > 0 ? g.threads : default_threads(); }

inline json meta_json(const GlobalOpts& g, const std::string& command) {
    return json{{"version", kVersion}, {"seed", g.seed}, {"command", command}};
}

inline std::string format_or(const GlobalOpts& g, const char* dflt) {
    return g.format.empty() ? dflt : g.format;
}

inline void emit_json(const GlobalOpts& g, const json& doc) {
    OutputTarget out(g.out);
    out.stream() << doc.dump(2) << "\n";
}

inline std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto comma = spec.find(',', pos);
        grid.push_back(std::stod(spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return grid;
}

// Shrinkage-weight moments have no closed form; commands without an explicit
// --method pick enumeration while it fits the budget and fall back to a
// seeded Monte Carlo estimate beyond it.
inline CoeffOptions auto_ff_options(int n, int H, const GlobalOpts& g) {
    CoeffOptions opt;
    if (composition_count(n, H) > BigInt(kEnumBudget)) {
        opt.ff_method = FfMethod::MonteCarlo;
        opt.mc.reps = 2'000'000;
        opt.mc.seed = g.seed;
        opt.mc.threads = threads_of(g);
    }
    return opt;
}

inline std::vector<int> parse_n_list(const std::string& spec) {
    std::vector<int> ns;
    auto c1 = spec.find(':');
    if (c1 != std::string::npos) {
        auto c2 = spec.find(':', c1 + 1);
        int start = std::stoi(spec.substr(0, c1));
        int stop = std::stoi(spec.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
        int step = c2 == std::string::npos ? 1 : std::stoi(spec.substr(c2 + 1));
        if (step < 1) throw std::invalid_argument("n-list: step must be >= 1");
        for (int n = start; n <= stop; n += step) ns.push_back(n);
        return ns;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto comma = spec.find(',', pos);
        ns.push_back(std::stoi(spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ns;
}

}  // namespace detail

// --------------------------------------------------------------------------
// simulate

struct SimulateOpts {
    GlobalOpts g;
    std::string design;
    std::string dist;
    int n = 10;
    int h = 1;
    int m = 1;
    std::string ranker = "perfect";
    int reps = 1;
};

inline int run_simulate(const SimulateOpts& o) {
    if (o.design.empty()) throw std::invalid_argument("simulate: --design is required");
    if (o.dist.empty()) throw std::invalid_argument("simulate: --dist is required");
    auto dist = parse_distribution(o.dist);
    auto ranker = parse_ranker(o.ranker);
    SampleFile sf;
    sf.design = o.design;
    sf.seed = o.g.seed;
    sf.H = o.design == "srs" ? 1 : o.h;
    for (int rep = 0; rep < o.reps; ++rep) {
        CounterRng rng(o.g.seed, static_cast<std::uint64_t>(rep));
        JpsSample s;
        if (o.design == "srs") {
            s.H = 1;
            for (double x : draw_srs(rng, dist, o.n)) s.pairs.push_back({x, 1});
        } else if (o.design == "jps") {
            s = draw_jps(rng, dist, o.n, o.h, ranker);
        } else {
            auto b = draw_brss(rng, dist, o.m, o.h, ranker);
            s.H = o.h;
            for (int c = 0; c < b.cycles; ++c) {
                for (int r = 1; r <= o.h; ++r) s.pairs.push_back({b.at(c, r), r});
            }
        }
        sf.replicates.push_back(std::move(s));
    }
    std::string command = "simulate --design " + o.design + " --dist " + o.dist + " --n " +
                          std::to_string(o.n) + " --h " + std::to_string(o.h) + " --m " +
                          std::to_string(o.m) + " --ranker " + o.ranker + " --reps " +
                          std::to_string(o.reps) + " --seed " + std::to_string(o.g.seed);
    if (detail::format_or(o.g, "csv") == "csv") {
        OutputTarget out(o.g.out);
        write_sample_csv(out.stream(), sf, command);
    } else {
        json rows = json::array();
        for (std::size_t rep = 0; rep < sf.replicates.size(); ++rep) {
            for (const auto& p : sf.replicates[rep].pairs) {
                json row{{"replicate", rep}, {"x", p.x}};
                if (o.design != "srs") row["rank"] = p.rank;
                rows.push_back(row);
            }
        }
        detail::emit_json(o.g, json{{"meta", detail::meta_json(o.g, command)},
                                    {"design", o.design},
                                    {"h", sf.H},
                                    {"rows", rows}});
    }
    return 0;
}

// --------------------------------------------------------------------------
// estimate

struct EstimateOpts {
    GlobalOpts g;
    std::string in;
    std::string scheme = "jps";
    std::string target = "mean";
    std::string gfun = "identity";
    std::string grid;
    int h_override = 0;
};

inline int run_estimate(const EstimateOpts& o) {
    if (o.in.empty()) throw std::invalid_argument("estimate: --in is required");
    std::ifstream is(o.in);
    if (!is) throw std::runtime_error("cannot open sample file: " + o.in);
    auto sf = read_sample_csv(is);
    if (o.h_override > 0) {
        sf.H = o.h_override;
        for (auto& s : sf.replicates) s.H = o.h_override;
    }
    auto scheme = parse_scheme(o.scheme);
    std::string command = "estimate --in " + o.in + " --scheme " + o.scheme + " --target " +
                          o.target + " --g " + o.gfun +
                          (o.grid.empty() ? "" : " --grid " + o.grid);

    json results = json::array();
    for (std::size_t rep = 0; rep < sf.replicates.size(); ++rep) {
        const auto& s = sf.replicates[rep];
        json entry{{"replicate", rep}};
        if (o.target == "mean") {
            auto r = estimate_g_mean(s, parse_gfunction(o.gfun), scheme);
            entry["value"] = r.value;
            entry["weights_used"] = r.weights_used;
            entry["h_n"] = r.h_n;
            entry["full_rank"] = r.full_rank;
        } else if (o.target == "var") {
            auto r = estimate_variance(s, scheme);
            entry["value"] = r.value;
            entry["weights_used"] = r.weights_used;
            entry["h_n"] = r.h_n;
            entry["full_rank"] = r.full_rank;
        } else if (o.target == "cdf") {
            if (o.grid.empty()) throw std::invalid_argument("estimate --target cdf requires --grid");
            auto grid = detail::parse_grid(o.grid);
            auto rs = estimate_cdf(s, scheme, grid);
            json values = json::array();
            for (std::size_t i = 0; i < grid.size(); ++i)
                values.push_back(json{{"x", grid[i]}, {"value", rs[i].value}});
            entry["values"] = values;
            entry["weights_used"] = rs.front().weights_used;
            entry["h_n"] = rs.front().h_n;
            entry["full_rank"] = rs.front().full_rank;
        } else {
            throw std::invalid_argument("estimate: unknown target '" + o.target + "'");
        }
        results.push_back(entry);
    }
    if (detail::format_or(o.g, "json") == "json") {
        detail::emit_json(o.g, json{{"meta", detail::meta_json(o.g, command)},
                                    {"h", sf.H},
                                    {"design", sf.design},
                                    {"results", results}});
    } else {
        OutputTarget out(o.g.out);
        auto& os = out.stream();
        os << metadata_line(o.g.seed, command) << "\n";
        if (o.target == "cdf") {
            os << "replicate,x,value\n";
            for (const auto& e : results) {
                for (const auto& v : e["values"]) {
                    os << e["replicate"].get<std::size_t>() << "," << fmt_double(v["x"].get<double>())
                       << "," << fmt_double(v["value"].get<double>()) << "\n";
                }
            }
        } else {
            os << "replicate,value,h_n,full_rank\n";
            for (const auto& e : results) {
                os << e["replicate"].get<std::size_t>() << "," << fmt_double(e["value"].get<double>())
                   << "," << e["h_n"].get<int>() << "," << (e["full_rank"].get<bool>() ? 1 : 0)
                   << "\n";
            }
        }
    }
    return 0;
}

// --------------------------------------------------------------------------
// coeffs

struct CoeffsOpts {
    GlobalOpts g;
    std::string scheme;
    int n = 0;
    int h = 0;
    std::string method = "enum";
    std::uint64_t reps = 10'000'000;
};

inline int run_coeffs(const CoeffsOpts& o) {
    if (o.scheme.empty()) throw std::invalid_argument("coeffs: --scheme is required");
    if (o.n < 1) throw std::invalid_argument("coeffs: --n must be >= 1");
    if (o.h < 1) throw std::invalid_argument("coeffs: --h must be >= 1");
    auto scheme = parse_scheme(o.scheme);
    CoeffOptions copt;
    copt.ff_method = o.method == "mc" ? FfMethod::MonteCarlo : FfMethod::Enumerate;
    copt.mc.reps = o.reps;
    copt.mc.seed = o.g.seed;
    copt.mc.threads = detail::threads_of(o.g);
    auto cs = coefficient_set(scheme, o.n, o.h, copt);
    std::string command = "coeffs --scheme " + o.scheme + " --n " + std::to_string(o.n) + " --h " +
                          std::to_string(o.h) + " --method " + o.method +
                          (o.method == "mc" ? " --reps " + std::to_string(o.reps) + " --seed " +
                                                  std::to_string(o.g.seed)
                                            : "");
    const char* exact = cs.exactness == Exactness::ClosedForm   ? "closed_form"
                        : cs.exactness == Exactness::Enumerated ? "enumerated"
                                                                : "monte_carlo";
    if (detail::format_or(o.g, "json") == "json") {
        json doc{{"meta", detail::meta_json(o.g, command)},
                 {"scheme", o.scheme},
                 {"n", o.n},
                 {"h", o.h},
                 {"e_c1", cs.e_c1},
                 {"v_c1", cs.v_c1},
                 {"cov_c1c2", cs.cov_c1c2},
                 {"e_j1c1sq", cs.e_j1c1sq},
                 {"m1", cs.m1},
                 {"m2", cs.m2},
                 {"k1", cs.k1},
                 {"k2", cs.k2},
                 {"exactness", exact}};
        if (cs.exactness == Exactness::MonteCarlo) {
            doc["se_v_c1"] = cs.se_v_c1;
            doc["se_e_j1c1sq"] = cs.se_e_j1c1sq;
        }
        detail::emit_json(o.g, doc);
    } else {
        OutputTarget out(o.g.out);
        auto& os = out.stream();
        os << metadata_line(o.g.seed, command) << "\n";
        os << "scheme,n,h,e_c1,v_c1,cov_c1c2,e_j1c1sq,m1,m2,k1,k2,exactness\n";
        os << o.scheme << "," << o.n << "," << o.h << "," << fmt_double(cs.e_c1) << ","
           << fmt_double(cs.v_c1) << "," << fmt_double(cs.cov_c1c2) << ","
           << fmt_double(cs.e_j1c1sq) << "," << fmt_double(cs.m1) << "," << fmt_double(cs.m2)
           << "," << fmt_double(cs.k1) << "," << fmt_double(cs.k2) << "," << exact << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------------
// moments

struct MomentsOpts {
    GlobalOpts g;
    std::string dist;
    std::string gfun = "identity";
    int h = 0;
    std::string rank_by = "x";
    std::uint64_t reps = 10'000'000;  // rank-by-y Monte Carlo only
};

inline int run_moments(const MomentsOpts& o) {
    if (o.dist.empty()) throw std::invalid_argument("moments: --dist is required");
    if (o.h < 1) throw std::invalid_argument("moments: --h must be >= 1");
    auto dist = parse_distribution(o.dist);
    auto g = parse_gfunction(o.gfun);
    YRankMcOptions mc;
    mc.reps = o.reps;
    mc.seed = o.g.seed;
    auto sm = transformed_stratum_moments(dist, g, o.h,
                                          o.rank_by == "y" ? RankBy::Y : RankBy::X, mc);
    std::string command = "moments --dist " + o.dist + " --g " + o.gfun + " --h " +
                          std::to_string(o.h) + " --rank-by " + o.rank_by +
                          (o.rank_by == "y" ? " --reps " + std::to_string(o.reps) : "");
    if (detail::format_or(o.g, "csv") == "csv") {
        OutputTarget out(o.g.out);
        auto& os = out.stream();
        os << metadata_line(o.g.seed, command) << "\n";
        os << "h,r,mu,sigma2,delta\n";
        for (int r = 1; r <= o.h; ++r) {
            os << o.h << "," << r << "," << fmt_double(sm.mu_r[static_cast<std::size_t>(r - 1)])
               << "," << fmt_double(sm.sigma2_r[static_cast<std::size_t>(r - 1)]) << ",\n";
        }
        os << o.h << ",," << fmt_double(sm.mu_g) << "," << fmt_double(sm.sigma2_g) << ","
           << fmt_double(sm.delta_g) << "\n";
    } else {
        json strata = json::array();
        for (int r = 1; r <= o.h; ++r) {
            strata.push_back(json{{"r", r},
                                  {"mu", sm.mu_r[static_cast<std::size_t>(r - 1)]},
                                  {"sigma2", sm.sigma2_r[static_cast<std::size_t>(r - 1)]}});
        }
        detail::emit_json(o.g, json{{"meta", detail::meta_json(o.g, command)},
                                    {"h", o.h},
                                    {"strata", strata},
                                    {"mu", sm.mu_g},
                                    {"sigma2", sm.sigma2_g},
                                    {"delta", sm.delta_g}});
    }
    return 0;
}

// --------------------------------------------------------------------------
// re

struct ReOpts {
    GlobalOpts g;
    std::string vs;
    std::string scheme = "jps";
    std::string dist;
    int n = 0;
    int hj = 0;
    int hb = 0;
};

inline int run_re(const ReOpts& o) {
    if (o.vs.empty()) throw std::invalid_argument("re: --vs is required");
    if (o.dist.empty()) throw std::invalid_argument("re: --dist is required");
    if (o.n < 1) throw std::invalid_argument("re: --n must be >= 1");
    if (o.hj < 1) throw std::invalid_argument("re: --hj must be >= 1");
    auto dist = parse_distribution(o.dist);
    REReport rep;
    rep.n = o.n;
    rep.h_j = o.hj;
    std::string regime;
    if (o.vs == "srs") {
        auto scheme = parse_scheme(o.scheme);
        auto cs = coefficient_set(scheme, o.n, o.hj, detail::auto_ff_options(o.n, o.hj, o.g));
        rep.delta_g = delta_identity(dist, o.hj);
        rep.m1 = cs.m1;
        rep.m2 = cs.m2;
        rep.re = re_vs_srs(cs, rep.delta_g);
        rep.regime = ReRegime::VsSrs;
        regime = "vs_srs";
    } else if (o.vs == "brss") {
        if (o.hb < 1) throw std::invalid_argument("re --vs brss requires --hb");
        auto cs = coefficient_set(parse_scheme(o.scheme), o.n, o.hj,
                                  detail::auto_ff_options(o.n, o.hj, o.g));
        auto sm_j = stratum_moments(dist, GFunction::identity(), o.hj);
        auto sm_b = o.hb == o.hj ? sm_j : stratum_moments(dist, GFunction::identity(), o.hb);
        rep.h_b = o.hb;
        rep.delta_g = sm_j.delta_g;
        rep.m1 = cs.m1;
        rep.m2 = cs.m2;
        rep.re = re_vs_brss(cs, sm_j, sm_b, o.n);
        rep.regime = o.hb == o.hj ? ReRegime::VsBrssEqualH : ReRegime::VsBrssCrossH;
        regime = o.hb == o.hj ? "vs_brss_equal_h" : "vs_brss_cross_h";
    } else if (o.vs == "ff") {
        rep.delta_g = delta_identity(dist, o.hj);
        auto cs = coefficient_set(WeightScheme::StandardJps, o.n, o.hj);
        rep.m1 = cs.m1;
        rep.m2 = cs.m2;
        rep.re = re_ff_vs_std(o.n, o.hj, rep.delta_g, detail::auto_ff_options(o.n, o.hj, o.g));
        rep.regime = ReRegime::FfVsStdJps;
        regime = "ff_vs_std";
    } else {
        throw std::invalid_argument("re: unknown --vs '" + o.vs + "'");
    }
    std::string command = "re --vs " + o.vs + " --scheme " + o.scheme + " --dist " + o.dist +
                          " --n " + std::to_string(o.n) + " --hj " + std::to_string(o.hj) +
                          (o.hb > 0 ? " --hb " + std::to_string(o.hb) : "");
    json doc{{"meta", detail::meta_json(o.g, command)},
             {"re", rep.re},
             {"regime", regime},
             {"n", rep.n},
             {"h_j", rep.h_j},
             {"m1", rep.m1},
             {"m2", rep.m2},
             {"delta", rep.delta_g}};
    if (rep.h_b > 0) doc["h_b"] = rep.h_b;
    if (detail::format_or(o.g, "json") == "json") {
        detail::emit_json(o.g, doc);
    } else {
        OutputTarget out(o.g.out);
        auto& os = out.stream();
        os << metadata_line(o.g.seed, command) << "\n";
        os << "re,regime,n,h_j,h_b,m1,m2,delta\n";
        os << fmt_double(rep.re) << "," << regime << "," << rep.n << "," << rep.h_j << ","
           << (rep.h_b > 0 ? std::to_string(rep.h_b) : "") << "," << fmt_double(rep.m1) << ","
           << fmt_double(rep.m2) << "," << fmt_double(rep.delta_g) << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------------
// re-table / optimal-h

struct ReTableOpts {
    GlobalOpts g;
    std::string which;
    std::string dist;  // empty: all catalog rows
    int h_max = 25;
};

inline int run_re_table(const ReTableOpts& o) {
    if (o.which.empty()) throw std::invalid_argument("re-table: --which is required");
    std::string command = "re-table --which " + o.which +
                          (o.dist.empty() ? "" : " --dist " + o.dist);
    auto keep = [&](const std::string& dist_name) { return o.dist.empty() || o.dist == dist_name; };
    if (!o.dist.empty()) (void)parse_distribution(o.dist);  // validate the filter
    OutputTarget out(o.g.out);
    auto& os = out.stream();
    if (o.which == "table1" || o.which == "table2") {
        int n = o.which == "table1" ? 15 : 60;
        auto cells = re_table_brss(n);
        os << metadata_line(o.g.seed, command) << "\n";
        os << "dist,n,h_b,h_j,re,re_2dp\n";
        for (const auto& c : cells) {
            if (!keep(c.dist)) continue;
            os << c.dist << "," << n << "," << c.h_b << "," << c.h_j << "," << fmt_double(c.re)
               << "," << fmt_fixed2(c.re) << "\n";
        }
    } else if (o.which == "table3") {
        auto rows = optimal_h_table(o.h_max);
        os << metadata_line(o.g.seed, command) << "\n";
        os << "dist,n,h_opt,mre_2dp\n";
        for (const auto& r : rows) {
            if (!keep(r.dist)) continue;
            os << r.dist << "," << r.n << "," << r.h_opt << "," << fmt_fixed2(r.mre) << "\n";
        }
    } else if (o.which == "table4") {
        auto rows = recommended_h_table(o.h_max);
        os << metadata_line(o.g.seed, command) << "\n";
        os << "n,h_recommended\n";
        for (const auto& [n, h] : rows) os << n << "," << h << "\n";
    } else {
        throw std::invalid_argument("re-table: unknown table '" + o.which + "'");
    }
    return 0;
}

struct OptimalHOpts {
    GlobalOpts g;
    std::string dist;
    std::string n_list = "5:50:5";
    std::string scheme = "jps";
    int h_max = 25;
};

inline int run_optimal_h(const OptimalHOpts& o) {
    if (o.dist.empty()) throw std::invalid_argument("optimal-h: --dist is required");
    auto dist = parse_distribution(o.dist);
    auto scheme = parse_scheme(o.scheme);
    auto ns = detail::parse_n_list(o.n_list);
    std::string command = "optimal-h --dist " + o.dist + " --n-list " + o.n_list + " --scheme " +
                          o.scheme + " --h-max " + std::to_string(o.h_max);
    OutputTarget out(o.g.out);
    auto& os = out.stream();
    os << metadata_line(o.g.seed, command) << "\n";
    os << "n,h_opt,mre\n";
    for (int n : ns) {
        auto r = optimal_h(n, dist, scheme, o.h_max, detail::auto_ff_options(n, o.h_max, o.g));
        os << n << "," << r.h_opt << "," << fmt_fixed2(r.mre) << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------------
// verify

struct VerifyOpts {
    GlobalOpts g;
    std::string suite = "all";
    std::uint64_t reps = 0;  // 0: per-suite default
};

namespace detail {

struct Check {
    std::string name;
    bool pass;
    double measured;
    double bound;
};

inline void verify_coeffs(std::vector<Check>& checks, const VerifyOpts& o) {
    // exact equality between closed forms and the enumeration oracle
    bool exact_ok = true;
    for (int n = 1; n <= 6 && exact_ok; ++n) {
        for (int H = 1; H <= 4 && exact_ok; ++H) {
            exact_ok = jps::std_v_coeff(n, H) ==
                           enumerate_oracle(WeightScheme::StandardJps, n, H, CoeffFunctional::VC1) &&
                       jps::std_j_coeff(n, H) ==
                           enumerate_oracle(WeightScheme::StandardJps, n, H, CoeffFunctional::EJ1C1Sq);
        }
    }
    checks.push_back({"coeffs/oracle-exact-equality", exact_ok, exact_ok ? 0.0 : 1.0, 0.0});

    std::uint64_t reps = o.reps ? o.reps : 2'000'000;
    int threads = threads_of(o.g);
    auto mc = mc_coefficient(WeightScheme::StandardJps, 2, 2, CoeffFunctional::VC1, reps, o.g.seed, threads);
    double dev = std::abs(mc.value - 0.125) / mc.se;
    checks.push_back({"coeffs/mc-vc1-jps-2-2", dev < 3.0, dev, 3.0});
    auto mc2 = mc_coefficient(WeightScheme::Srs, 4, 2, CoeffFunctional::VC1, reps, o.g.seed + 1, threads);
    double dev2 = std::abs(mc2.value - 0.0625) / mc2.se;
    checks.push_back({"coeffs/mc-vc1-srs-4-2", dev2 < 3.0, dev2, 3.0});
}

inline void verify_unbiased(std::vector<Check>& checks, const VerifyOpts& o) {
    std::uint64_t reps = o.reps ? o.reps : 200'000;
    int threads = threads_of(o.g);
    struct Cell {
        const char* dist;
        const char* g;
        WeightScheme scheme;
        int n, H;
    };
    const Cell cells[] = {
        {"uniform", "identity", WeightScheme::StandardJps, 5, 2},
        {"normal", "pow:2", WeightScheme::FreyFeeman, 5, 3},
        {"exp", "ind:1", WeightScheme::StandardJps, 10, 3},
    };
    std::uint64_t stream = 0;
    for (const auto& c : cells) {
        auto dist = parse_distribution(c.dist);
        auto g = parse_gfunction(c.g);
        auto sm = stratum_moments(dist, g, c.H);
        auto mc = mc_estimator_stats(c.scheme, dist, g, c.n, c.H, Ranker::perfect(), reps,
                                     o.g.seed + stream++, threads);
        double dev = std::abs(mc.mean - sm.mu_g) / mc.se_mean;
        checks.push_back({std::string("unbiased/") + c.dist + "-" + c.g + "-" + scheme_name(c.scheme),
                          dev < 4.0, dev, 4.0});
    }
}

inline void verify_variance(std::vector<Check>& checks, const VerifyOpts& o) {
    std::uint64_t reps = o.reps ? o.reps : 400'000;
    int threads = threads_of(o.g);
    struct Cell {
        const char* dist;
        WeightScheme scheme;
        int n, H;
    };
    const Cell cells[] = {
        {"uniform", WeightScheme::StandardJps, 3, 2},
        {"normal", WeightScheme::FreyFeeman, 5, 3},
        {"exp", WeightScheme::Srs, 10, 2},
    };
    std::uint64_t stream = 100;
    for (const auto& c : cells) {
        auto dist = parse_distribution(c.dist);
        auto sm = stratum_moments(dist, GFunction::identity(), c.H);
        auto cs = coefficient_set(c.scheme, c.n, c.H);
        double v_theory = theoretical_variance(cs, sm);
        auto mc = mc_estimator_stats(c.scheme, dist, GFunction::identity(), c.n, c.H,
                                     Ranker::perfect(), reps, o.g.seed + stream++, threads);
        double dev = std::abs(mc.var - v_theory) / mc.se_var;
        checks.push_back({std::string("variance/") + c.dist + "-" + scheme_name(c.scheme), dev < 3.0,
                          dev, 3.0});
    }
}

inline void verify_normality(std::vector<Check>& checks, const VerifyOpts& o) {
    std::uint64_t reps = o.reps ? o.reps : 10'000;
    auto rep = mc_normality(Distribution::normal(0, 1), 2000, 5, reps, o.g.seed + 1000,
                            threads_of(o.g));
    checks.push_back({"normality/ks-standard-jps", rep.ks_std < 0.02, rep.ks_std, 0.02});
    checks.push_back({"normality/ks-frey-feeman", rep.ks_ff < 0.02, rep.ks_ff, 0.02});
    checks.push_back({"normality/rms-scheme-gap", rep.rms_diff_scaled < 0.05 * rep.asym_sd,
                      rep.rms_diff_scaled, 0.05 * rep.asym_sd});
}

}  // namespace detail

inline int run_verify(const VerifyOpts& o) {
    std::vector<detail::Check> checks;
    if (o.suite == "coeffs" || o.suite == "all") detail::verify_coeffs(checks, o);
    if (o.suite == "unbiased" || o.suite == "all") detail::verify_unbiased(checks, o);
    if (o.suite == "variance" || o.suite == "all") detail::verify_variance(checks, o);
    if (o.suite == "normality" || o.suite == "all") detail::verify_normality(checks, o);
    if (checks.empty()) throw std::invalid_argument("verify: unknown suite '" + o.suite + "'");

    std::string command = "verify --suite " + o.suite + " --seed " + std::to_string(o.g.seed) +
                          (o.reps ? " --reps " + std::to_string(o.reps) : "");
    bool all_pass = true;
    json rows = json::array();
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        rows.push_back(json{{"check", c.name}, {"pass", c.pass}, {"measured", c.measured},
                            {"bound", c.bound}});
    }
    if (detail::format_or(o.g, "json") == "json") {
        detail::emit_json(o.g, json{{"meta", detail::meta_json(o.g, command)},
                                    {"checks", rows},
                                    {"all_pass", all_pass}});
    } else {
        OutputTarget out(o.g.out);
        auto& os = out.stream();
        os << metadata_line(o.g.seed, command) << "\n";
        os << "check,pass,measured,bound\n";
        for (const auto& c : checks) {
            os << c.name << "," << (c.pass ? 1 : 0) << "," << fmt_double(c.measured) << ","
               << fmt_double(c.bound) << "\n";
        }
    }
    return all_pass ? 0 : 2;
}

// --------------------------------------------------------------------------

inline int run(std::vector<std::string> args) {
    try {
        args = detail::expand_config(std::move(args));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    CLI::App app{"judgment post-stratification estimation toolkit"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* c_sim = app.add_subcommand("simulate", "draw SRS, JPS or BRSS samples");
    c_sim->add_option("--design", sim.design, "sampling design")
        ->check(CLI::IsMember({"srs", "jps", "brss"}));
    c_sim->add_option("--dist", sim.dist, "population distribution");
    c_sim->add_option("--n", sim.n, "sample size (srs/jps)");
    c_sim->add_option("--h", sim.h, "ranking class size");
    c_sim->add_option("--m", sim.m, "cycles (brss)");
    c_sim->add_option("--ranker", sim.ranker, "perfect | concomitant:RHO");
    c_sim->add_option("--reps", sim.reps, "replicate samples to draw");
    detail::add_global(c_sim, sim.g);

    EstimateOpts est;
    auto* c_est = app.add_subcommand("estimate", "class estimators on a sample file");
    c_est->add_option("--in", est.in, "sample csv");
    c_est->add_option("--scheme", est.scheme, "srs | jps | ff");
    c_est->add_option("--target", est.target, "mean | var | cdf");
    c_est->add_option("--g", est.gfun, "identity | pow:K | ind:C");
    c_est->add_option("--grid", est.grid, "comma-separated x grid (cdf)");
    c_est->add_option("--h", est.h_override, "override ranking class size");
    detail::add_global(c_est, est.g);

    CoeffsOpts cf;
    auto* c_cf = app.add_subcommand("coeffs", "weight-scheme coefficient moments");
    c_cf->add_option("--scheme", cf.scheme, "srs | jps | ff");
    c_cf->add_option("--n", cf.n, "sample size");
    c_cf->add_option("--h", cf.h, "ranking class size");
    c_cf->add_option("--method", cf.method, "enum | mc")->check(CLI::IsMember({"enum", "mc"}));
    c_cf->add_option("--reps", cf.reps, "monte carlo replicates");
    detail::add_global(c_cf, cf.g);

    MomentsOpts mo;
    auto* c_mo = app.add_subcommand("moments", "per-stratum moments of g(X)");
    c_mo->add_option("--dist", mo.dist, "population distribution");
    c_mo->add_option("--g", mo.gfun, "identity | pow:K | ind:C");
    c_mo->add_option("--h", mo.h, "ranking class size");
    c_mo->add_option("--rank-by", mo.rank_by, "x | y")->check(CLI::IsMember({"x", "y"}));
    c_mo->add_option("--reps", mo.reps, "monte carlo replicates for --rank-by y");
    detail::add_global(c_mo, mo.g);

    ReOpts re;
    auto* c_re = app.add_subcommand("re", "relative efficiency of a class estimator");
    c_re->add_option("--vs", re.vs, "srs | brss | ff");
    c_re->add_option("--scheme", re.scheme, "srs | jps | ff");
    c_re->add_option("--dist", re.dist, "population distribution");
    c_re->add_option("--n", re.n, "sample size");
    c_re->add_option("--hj", re.hj, "JPS ranking class size");
    c_re->add_option("--hb", re.hb, "BRSS ranking class size");
    detail::add_global(c_re, re.g);

    ReTableOpts rt;
    auto* c_rt = app.add_subcommand("re-table", "study tables as csv");
    c_rt->add_option("--which", rt.which, "table1 | table2 | table3 | table4");
    c_rt->add_option("--dist", rt.dist, "restrict rows to one distribution");
    c_rt->add_option("--h-max", rt.h_max, "largest class size searched");
    detail::add_global(c_rt, rt.g);

    OptimalHOpts oh;
    auto* c_oh = app.add_subcommand("optimal-h", "class size minimizing the mean-estimator variance");
    c_oh->add_option("--dist", oh.dist, "population distribution");
    c_oh->add_option("--n-list", oh.n_list, "START:STOP:STEP or comma list");
    c_oh->add_option("--scheme", oh.scheme, "srs | jps | ff");
    c_oh->add_option("--h-max", oh.h_max, "largest class size searched");
    detail::add_global(c_oh, oh.g);

    VerifyOpts vf;
    auto* c_vf = app.add_subcommand("verify", "monte carlo verification suites");
    c_vf->add_option("--suite", vf.suite, "coeffs | unbiased | variance | normality | all");
    c_vf->add_option("--reps", vf.reps, "replicates per check (0: per-suite default)");
    detail::add_global(c_vf, vf.g);

    std::vector<const char*> argv;
    argv.push_back("jpstrat");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_est->parsed()) return run_estimate(est);
        if (c_cf->parsed()) return run_coeffs(cf);
        if (c_mo->parsed()) return run_moments(mo);
        if (c_re->parsed()) return run_re(re);
        if (c_rt->parsed()) return run_re_table(rt);
        if (c_oh->parsed()) return run_optimal_h(oh);
        if (c_vf->parsed()) return run_verify(vf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace jps::cli

#endif  // JPSTRAT_CLI_HPP

#include "mmentropy/entropy.hpp"
#include "mmentropy/families.hpp"
#include "mmentropy/map_io.hpp"
#include "mmentropy/oracle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <thread>

namespace {

using namespace mme;

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

struct MapArgs {
    std::string family;
    std::string map_file;
    double alpha = 2.8, beta = -0.5;
    double v1 = 0.9, v2 = 0.1, v3 = 1.0;
};

void add_map_options(CLI::App* cmd, MapArgs& m) {
    cmd->add_option("--family", m.family, "map family")
        ->required()
        ->check(CLI::IsMember({"gaussian", "cubic2", "quartic3", "pl4", "pl5", "file"}));
    cmd->add_option("--map-file", m.map_file, "JSON map description (family=file)");
    cmd->add_option("--alpha", m.alpha, "gaussian width parameter");
    cmd->add_option("--beta", m.beta, "gaussian offset parameter");
    cmd->add_option("--v1", m.v1, "first critical value (cubic2)");
    cmd->add_option("--v2", m.v2, "critical value (cubic2, quartic3)");
    cmd->add_option("--v3", m.v3, "outer critical value (quartic3)");
}

MapModel build_map(const MapArgs& m) {
    if (m.family == "gaussian") return make_gaussian(m.alpha, m.beta);
    if (m.family == "cubic2") return make_bimodal_cubic(m.v1, m.v2);
    if (m.family == "quartic3") return make_trimodal_quartic(m.v2, m.v3);
    if (m.family == "pl4") return make_pl4();
    if (m.family == "pl5") return make_pl5();
    if (m.family == "file") {
        if (m.map_file.empty())
            throw std::invalid_argument("--family file needs --map-file");
        return map_from_file(m.map_file);
    }
    throw std::invalid_argument("unknown family: " + m.family);
}

Unit parse_unit(const std::string& s) {
    return s == "bits" ? Unit::bits : Unit::nats;
}

HaltVariant parse_halt(const std::string& s) {
    return s == "h2" ? HaltVariant::scaled_gap : HaltVariant::consecutive;
}

int max_threads() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("MMENTROPY_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

std::string fmt_h(double h) {
    if (std::isnan(h)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", h);
    return buf;
}

void write_history_csv(const std::string& path, const EntropyEstimate& est) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << "nu,s_nu,S_nu,lap,h_nu\n";
    const auto& st = est.state;
    for (long nu = 1; nu <= st.nu; ++nu) {
        auto u = static_cast<std::size_t>(nu);
        out << nu << ',' << st.s_total[u].str() << ',' << st.S_total[u].str()
            << ',' << st.laps[u].str() << ','
            << double_to_string(est.history[u - 1]) << '\n';
    }
}

int cmd_entropy(const MapArgs& margs, double eps, long nmax,
                const std::string& unit, const std::string& halt, bool anchor,
                bool trace, const std::string& out_path) {
    MapModel map = build_map(margs);
    RunOptions opts;
    opts.eps = eps;
    opts.n_max = nmax;
    opts.unit = parse_unit(unit);
    opts.halt = parse_halt(halt);
    opts.anchor_first = anchor;
    if (trace)
        opts.trace = [](long nu, int line, const MinMaxSymbol& w, double pt) {
            std::fprintf(stderr, "%ld %d %s %s\n", nu, line, w.str().c_str(),
                         double_to_string(pt).c_str());
        };
    EntropyEstimate est = run(map, opts);

    nlohmann::json rec{{"map", map.name()},
                       {"eps", eps},
                       {"unit", unit},
                       {"h", est.value},
                       {"loops", est.loops},
                       {"converged", est.converged},
                       {"halt_variant", halt},
                       {"elapsed_ms", est.elapsed_ms}};
    std::cout << rec.dump(2) << '\n';
    if (!out_path.empty()) write_history_csv(out_path, est);
    if (!est.converged) {
        std::cerr << "Algorithm failed\n";
        return 2;
    }
    return 0;
}

struct SweepAxis {
    std::string name;
    double start = 0, stop = 0, step = 1;
    long count = 0;
};

SweepAxis parse_axis(const std::string& spec) {
    auto eq = spec.find('=');
    auto c1 = spec.find(':', eq == std::string::npos ? 0 : eq);
    auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (eq == std::string::npos || c1 == std::string::npos ||
        c2 == std::string::npos)
        throw std::invalid_argument("sweep axis must look like name=start:stop:step");
    SweepAxis ax;
    ax.name = spec.substr(0, eq);
    ax.start = std::stod(spec.substr(eq + 1, c1 - eq - 1));
    ax.stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    ax.step = std::stod(spec.substr(c2 + 1));
    if (!(ax.step > 0))
        throw std::invalid_argument("sweep axis needs step > 0");
    // stop < start is an empty axis, not an error: the sweep emits just the
    // CSV header.  The 1e-6 slack keeps endpoints like 0.999/0.001 inside.
    ax.count = ax.stop < ax.start
                   ? 0
                   : static_cast<long>(
                         std::floor((ax.stop - ax.start) / ax.step + 1e-6)) + 1;
    return ax;
}

MapModel sweep_map(const MapArgs& base, const std::vector<SweepAxis>& axes,
                   const std::vector<double>& vals) {
    MapArgs m = base;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const std::string& p = axes[k].name;
        double v = vals[k];
        if (p == "alpha") m.alpha = v;
        else if (p == "beta") m.beta = v;
        else if (p == "v1") m.v1 = v;
        else if (p == "v2") m.v2 = v;
        else if (p == "v3") m.v3 = v;
        else throw std::invalid_argument("unknown sweep parameter: " + p);
    }
    return build_map(m);
}

int cmd_sweep(const MapArgs& margs, const std::vector<std::string>& axis_specs,
              double eps, long nmax, const std::string& unit,
              const std::string& halt, bool anchor, int threads,
              const std::string& out_path) {
    if (axis_specs.empty() || axis_specs.size() > 2)
        throw std::invalid_argument("sweep needs one or two --sweep axes");
    std::vector<SweepAxis> axes;
    for (const auto& s : axis_specs) axes.push_back(parse_axis(s));

    long total = 1;
    for (const auto& ax : axes) total *= ax.count;

    struct Row {
        std::vector<double> params;
        double h = std::nan("");
        long loops = 0;
        bool converged = false;
    };
    std::vector<std::optional<Row>> rows(static_cast<std::size_t>(total));

    RunOptions base_opts;
    base_opts.eps = eps;
    base_opts.n_max = nmax;
    base_opts.unit = parse_unit(unit);
    base_opts.halt = parse_halt(halt);
    base_opts.anchor_first = anchor;

    std::signal(SIGINT, on_sigint);
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            if (g_interrupted.load()) return;
            long idx = next.fetch_add(1);
            if (idx >= total) return;
            Row row;
            std::vector<double> vals;
            long rem = idx;
            for (std::size_t k = axes.size(); k-- > 0;) {
                long j = rem % axes[k].count;
                rem /= axes[k].count;
                vals.insert(vals.begin(), axes[k].start + j * axes[k].step);
            }
            row.params = vals;
            try {
                MapModel map = sweep_map(margs, axes, vals);
                EntropyEstimate est = run(map, base_opts);
                row.h = est.value;
                row.loops = est.loops;
                row.converged = est.converged;
            } catch (const std::invalid_argument&) {
                // out-of-domain grid point, row stays nan
            }
            rows[static_cast<std::size_t>(idx)] = std::move(row);
        }
    };

    int nthreads = std::min<long>(threads > 0 ? threads : max_threads(), total);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ofstream fout;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        fout.open(out_path);
        if (!fout) throw std::invalid_argument("cannot open output file: " + out_path);
        os = &fout;
    }
    for (const auto& ax : axes) *os << ax.name << ',';
    *os << "h,loops,converged\n";
    for (long idx = 0; idx < total; ++idx) {
        const auto& r = rows[static_cast<std::size_t>(idx)];
        if (!r) break;  // interrupted before this cell finished
        for (double v : r->params) *os << double_to_string(v) << ',';
        *os << fmt_h(r->h) << ',' << r->loops << ',' << (r->converged ? 1 : 0)
            << '\n';
    }
    os->flush();
    return g_interrupted.load() ? 130 : 0;
}

struct BenchRef {
    const char* label;
    Unit unit;
    double h[4];
    long n[4];
};

MapModel bench_map(int table) {
    switch (table) {
        case 1: return make_gaussian(2.8, -0.5);
        case 2: return make_bimodal_cubic(0.9, 0.1);
        case 3: return make_trimodal_quartic(0.7, 1.0);
        case 4: return make_pl4();
        default: return make_pl5();
    }
}

const BenchRef kBenchRefs[5] = {
    {"1", Unit::nats, {0.534106, 0.527305, 0.525142, 0.524456}, {101, 318, 1004, 3174}},
    {"2", Unit::bits, {0.622100, 0.607310, 0.602622, 0.601137}, {218, 688, 2173, 6871}},
    {"3", Unit::bits, {0.711709, 0.699793, 0.696000, 0.694798}, {177, 557, 1759, 5561}},
    {"4", Unit::nats, {0.422215, 0.410776, 0.407147, 0.405997}, {169, 533, 1683, 5321}},
    {"5", Unit::nats, {0.420542, 0.410239, 0.406978, 0.405944}, {152, 480, 1515, 4788}},
};

int cmd_bench(std::vector<int> tables, int depth, const std::string& halt,
              const std::string& json_path) {
    if (tables.empty()) tables = {1, 2, 3, 4, 5};
    nlohmann::json cells = nlohmann::json::array();
    for (int t : tables) {
        const BenchRef& ref = kBenchRefs[t - 1];
        MapModel map = bench_map(t);
        std::printf("table %s: %s (%s)\n", ref.label, map.name().c_str(),
                    ref.unit == Unit::bits ? "bits" : "nats");
        std::printf("  %-8s %-10s %-10s %-9s %7s %7s %5s %9s\n", "eps", "h",
                    "h_ref", "dh", "loops", "n_ref", "dn", "ms");
        for (int k = 0; k <= depth - 4 && k < 4; ++k) {
            double eps = std::pow(10.0, -(4 + k));
            RunOptions opts;
            opts.eps = eps;
            opts.unit = ref.unit;
            opts.halt = parse_halt(halt);
            EntropyEstimate est = run(map, opts);
            std::printf("  %-8.0e %-10.6f %-10.6f %-9.2e %7ld %7ld %5ld %9.1f\n",
                        eps, est.value, ref.h[k], std::abs(est.value - ref.h[k]),
                        est.loops, ref.n[k], est.loops - ref.n[k],
                        est.elapsed_ms);
            cells.push_back({{"table", t},
                             {"eps", eps},
                             {"unit", ref.unit == Unit::bits ? "bits" : "nats"},
                             {"h", est.value},
                             {"h_ref", ref.h[k]},
                             {"loops", est.loops},
                             {"n_ref", ref.n[k]},
                             {"converged", est.converged},
                             {"elapsed_ms", est.elapsed_ms}});
        }
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + json_path);
        out << cells.dump(2) << '\n';
    }
    return 0;
}

int cmd_oracle_check(const MapArgs& margs, int n, long long grid,
                     const std::string& method) {
    MapModel map = build_map(margs);
    MapModel checked = is_anchored(map) ? map : anchor(map);
    if (!is_anchored(checked))
        throw std::logic_error("anchoring failed");

    const int l = checked.modality();
    auto orbits = start_orbits(checked);
    std::vector<MinMaxSymbol> level;
    for (const auto& orb : orbits) level.push_back(orb.symbols.back());
    EntropyState st = init_state(orbits, l);
    st = step(std::move(st), level);
    for (long nu = 2; nu <= n; ++nu) {
        level.clear();
        for (auto& orb : orbits) {
            orb = extend_orbit(checked, std::move(orb), 1);
            level.push_back(orb.symbols.back());
        }
        st = step(std::move(st), level);
    }

    bool exact = method == "exact" ||
                 (method == "auto" && checked.exact_table() != nullptr);
    std::vector<LapProfile> profiles;
    if (exact) {
        profiles = lap_profiles_exact(checked, n);
    } else {
        for (int k = 1; k <= n; ++k)
            profiles.push_back(lap_count_grid(checked, k, grid));
    }

    bool ok = true;
    std::printf("map %s, %s oracle, n = 1..%d\n", checked.name().c_str(),
                exact ? "exact" : "grid", n);
    for (int nu = 1; nu <= n; ++nu) {
        const LapProfile& p = profiles[static_cast<std::size_t>(nu) - 1];
        big_int lap_rec = st.laps[static_cast<std::size_t>(nu)];
        bool row_ok = lap_rec == p.laps;
        auto rec_cross = nlohmann::json::array();
        for (int i = 0; i < l; ++i) {
            const big_int& s_rec =
                st.s_line[static_cast<std::size_t>(i)][static_cast<std::size_t>(nu)];
            if (s_rec != p.crossings[static_cast<std::size_t>(i)]) row_ok = false;
            rec_cross.push_back(s_rec.str());
        }
        nlohmann::json row{{"n", nu},
                           {"laps", p.laps},
                           {"crossings", p.crossings},
                           {"method", p.method},
                           {"grid", p.grid},
                           {"recursion_laps", lap_rec.str()},
                           {"recursion_crossings", rec_cross},
                           {"match", row_ok}};
        std::printf("%s\n", row.dump().c_str());
        ok = ok && row_ok;
        if (p.plateau_warning)
            std::fprintf(stderr,
                         "n=%d grid warning: plateau or critical hit, refine the grid\n",
                         nu);
    }
    std::printf("%s\n", ok ? "OK" : "MISMATCH");
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological entropy of continuous multimodal interval maps"};
    app.require_subcommand(1);

    MapArgs margs;
    double eps = 1e-4;
    long nmax = 10000;
    std::string unit = "nats", halt = "h1", out_path;
    bool anchor = false, trace = false;

    auto* ent = app.add_subcommand("entropy", "estimate the entropy of one map");
    add_map_options(ent, margs);
    ent->add_option("--eps", eps, "halt tolerance")->check(CLI::PositiveNumber);
    ent->add_option("--nmax", nmax, "step budget")->check(CLI::PositiveNumber);
    ent->add_option("--unit", unit)->check(CLI::IsMember({"nats", "bits"}));
    ent->add_option("--halt", halt)->check(CLI::IsMember({"h1", "h2"}));
    ent->add_flag("--anchor", anchor, "anchor the boundary before computing");
    ent->add_flag("--trace", trace, "print symbols to stderr as they appear");
    ent->add_option("--out", out_path, "write the per-step history CSV here");

    MapArgs sweep_args;
    std::vector<std::string> axis_specs;
    double sw_eps = 1e-4;
    long sw_nmax = 10000;
    std::string sw_unit = "nats", sw_halt = "h1", sw_out;
    bool sw_anchor = false;
    int sw_threads = 0;

    auto* sw = app.add_subcommand("sweep", "entropy over a parameter grid, CSV out");
    add_map_options(sw, sweep_args);
    sw->add_option("--sweep", axis_specs, "axis as name=start:stop:step (max 2)")
        ->required()
        ->expected(1, 2);
    sw->add_option("--eps", sw_eps)->check(CLI::PositiveNumber);
    sw->add_option("--nmax", sw_nmax)->check(CLI::PositiveNumber);
    sw->add_option("--unit", sw_unit)->check(CLI::IsMember({"nats", "bits"}));
    sw->add_option("--halt", sw_halt)->check(CLI::IsMember({"h1", "h2"}));
    sw->add_flag("--anchor", sw_anchor);
    sw->add_option("--threads", sw_threads, "worker threads (also capped by MMENTROPY_THREADS)");
    sw->add_option("--out", sw_out, "output CSV path (default stdout)");

    std::vector<int> bench_tables;
    int bench_depth = 7;
    std::string bench_halt = "h1", bench_json;
    auto* be = app.add_subcommand("bench", "compare against the published reference tables");
    be->add_option("--table", bench_tables, "tables to run (default all)")
        ->check(CLI::Range(1, 5));
    be->add_option("--depth", bench_depth, "smallest eps as 10^-depth")
        ->check(CLI::Range(4, 7));
    be->add_option("--halt", bench_halt)->check(CLI::IsMember({"h1", "h2"}));
    be->add_option("--json", bench_json, "also write the cells as JSON here");

    MapArgs or_args;
    int or_n = 12;
    long long or_grid = 1 << 20;
    std::string or_method = "auto";
    auto* oc = app.add_subcommand("oracle-check",
                                  "compare the recursion against direct lap counting");
    add_map_options(oc, or_args);
    oc->add_option("--n", or_n, "highest iterate to check")->check(CLI::Range(1, 64));
    oc->add_option("--grid", or_grid, "grid size for smooth maps")
        ->check(CLI::PositiveNumber);
    oc->add_option("--method", or_method)
        ->check(CLI::IsMember({"auto", "exact", "grid"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ent->parsed())
            return cmd_entropy(margs, eps, nmax, unit, halt, anchor, trace, out_path);
        if (sw->parsed())
            return cmd_sweep(sweep_args, axis_specs, sw_eps, sw_nmax, sw_unit,
                             sw_halt, sw_anchor, sw_threads, sw_out);
        if (be->parsed())
            return cmd_bench(bench_tables, bench_depth, bench_halt, bench_json);
        if (oc->parsed()) return cmd_oracle_check(or_args, or_n, or_grid, or_method);
    } catch (const consistency_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#include "mmentropy/entropy.hpp"

#include "mmentropy/map_model.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mme {

namespace {

void check_symbols(const std::vector<MinMaxSymbol>& sym, int l) {
    if (static_cast<int>(sym.size()) != l)
        throw std::invalid_argument("expected one symbol per line");
    for (const auto& w : sym)
        if (w.address.code < 0 || w.address.code > 2 * l)
            throw std::invalid_argument("symbol address out of range");
}

void register_bad_times(EntropyState& st, const std::vector<MinMaxSymbol>& sym,
                        long level) {
    int l = st.modality;
    for (int i = 1; i <= l; ++i)
        for (int k = 1; k <= l; ++k)
            if (is_bad(sym[static_cast<std::size_t>(k) - 1], i, l))
                st.bad_times[static_cast<std::size_t>(i - 1) * l + (k - 1)]
                    .push_back(level);
}

}  // namespace

EntropyState init_state(const std::vector<MinMaxSymbol>& omega1, int modality) {
    if (modality < 1) throw std::invalid_argument("modality must be positive");
    check_symbols(omega1, modality);
    EntropyState st;
    st.modality = modality;
    st.nu = 0;
    st.s_line.assign(static_cast<std::size_t>(modality), {big_int(1)});
    st.s_total = {big_int(modality)};
    st.S_total = {big_int(0)};
    st.laps = {big_int(1)};
    st.cum = 1 + modality;
    st.bad_times.assign(static_cast<std::size_t>(modality) * modality, {});
    st.first_symbols = omega1;
    register_bad_times(st, omega1, 1);
    return st;
}

EntropyState init_state(const std::vector<CriticalOrbit>& orbits, int modality) {
    if (static_cast<int>(orbits.size()) != modality)
        throw std::invalid_argument("expected one orbit per line");
    std::vector<MinMaxSymbol> omega1;
    for (const auto& orb : orbits) {
        if (orb.symbols.empty())
            throw std::invalid_argument("orbit has no symbols");
        omega1.push_back(orb.symbols.front());
    }
    return init_state(omega1, modality);
}

EntropyState step(EntropyState st, const std::vector<MinMaxSymbol>& symbols) {
    const int l = st.modality;
    if (l == 0) throw std::invalid_argument("state is not initialized");
    check_symbols(symbols, l);
    const long nu = st.nu + 1;

    if (nu == 1) {
        if (symbols != st.first_symbols)
            throw std::invalid_argument(
                "first step must replay the symbols given at initialization");
    } else {
        register_bad_times(st, symbols, nu);
    }

    big_int s_sum = 0, S_sum = 0;
    for (int i = 1; i <= l; ++i) {
        big_int S_i = 0;
        for (int k = 1; k <= l; ++k) {
            const auto& times =
                st.bad_times[static_cast<std::size_t>(i - 1) * l + (k - 1)];
            const auto& sk = st.s_line[static_cast<std::size_t>(k) - 1];
            for (long kappa : times)
                S_i += sk[static_cast<std::size_t>(nu - kappa)];
        }
        S_i <<= 1;
        big_int s_i = st.cum - S_i;
        if (s_i < 0)
            throw consistency_error("negative crossing count at step " +
                                    std::to_string(nu) + " line " +
                                    std::to_string(i));
        s_sum += s_i;
        S_sum += S_i;
        st.s_line[static_cast<std::size_t>(i) - 1].push_back(std::move(s_i));
    }

    if (s_sum != l * st.cum - S_sum)
        throw consistency_error("crossing totals disagree at step " +
                                std::to_string(nu));
    big_int lap_num = s_sum + S_sum;
    if (lap_num % l != 0)
        throw consistency_error("lap total not divisible by modality at step " +
                                std::to_string(nu));
    big_int lap = lap_num / l;
    if (lap != st.cum)
        throw consistency_error("lap formulas disagree at step " +
                                std::to_string(nu));

    st.laps.push_back(std::move(lap));
    st.cum += s_sum;
    st.s_total.push_back(std::move(s_sum));
    st.S_total.push_back(std::move(S_sum));
    st.nu = nu;
    return st;
}

double estimate_at(const EntropyState& st, Unit unit) {
    if (st.nu < 1) throw std::logic_error("estimate needs at least one step");
    double h = ln_big(st.laps[static_cast<std::size_t>(st.nu)]) / st.nu;
    return unit == Unit::bits ? h / std::numbers::ln2 : h;
}

std::vector<big_int> lap_sequence(const EntropyState& st) { return st.laps; }

std::vector<std::pair<int, long>> bad_pairs(const EntropyState& st, int line) {
    if (line < 1 || line > st.modality)
        throw std::invalid_argument("bad_pairs: line out of range");
    std::vector<std::pair<int, long>> out;
    for (int k = 1; k <= st.modality; ++k)
        for (long kappa :
             st.bad_times[static_cast<std::size_t>(line - 1) * st.modality +
                          (k - 1)])
            out.emplace_back(k, kappa);
    return out;
}

EntropyEstimate run(const MapModel& map_in, const RunOptions& opts) {
    if (!(opts.eps > 0)) throw std::invalid_argument("eps must be positive");
    if (opts.n_max < 1) throw std::invalid_argument("n_max must be positive");

    auto t0 = std::chrono::steady_clock::now();
    const MapModel map = opts.anchor_first ? anchor(map_in) : map_in;
    const int l = map.modality();
    const double tol =
        opts.snap_tol > 0 ? opts.snap_tol : default_snap_tol(map);
    const bool exact = opts.exact_orbits && map.exact_table() != nullptr;
    const double unit_scale =
        opts.unit == Unit::bits ? std::numbers::ln2 : 1.0;

    auto orbits = start_orbits(map, tol, exact);
    std::vector<MinMaxSymbol> level;
    for (const auto& orb : orbits) {
        level.push_back(orb.symbols.back());
        if (opts.trace) opts.trace(1, orb.line, orb.symbols.back(), orb.points.back());
    }

    EntropyState st = init_state(orbits, l);
    st = step(std::move(st), level);

    EntropyEstimate out;
    out.unit = opts.unit;
    out.history.push_back(estimate_at(st, opts.unit));
    out.loops = opts.n_max + 1;

    for (long nu = 2; nu <= opts.n_max; ++nu) {
        level.clear();
        for (auto& orb : orbits) {
            orb = extend_orbit(map, std::move(orb), 1, tol);
            level.push_back(orb.symbols.back());
            if (opts.trace)
                opts.trace(nu, orb.line, orb.symbols.back(), orb.points.back());
        }
        st = step(std::move(st), level);
        double h = estimate_at(st, opts.unit);
        out.history.push_back(h);

        bool halt = false;
        if (opts.halt == HaltVariant::consecutive) {
            halt = nu >= halt_warmup &&
                   std::abs(h - out.history[out.history.size() - 2]) <= opts.eps;
        } else {
            double lg = ln_big(st.laps[static_cast<std::size_t>(nu)]) / unit_scale;
            halt = lg * (1.0 / (nu - 1) - 1.0 / nu) <= opts.eps;
        }
        if (halt) {
            out.converged = true;
            out.loops = nu;
            break;
        }
    }

    out.value = out.history.back();
    out.state = std::move(st);
    auto t1 = std::chrono::steady_clock::now();
    out.elapsed_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return out;
}

}  // namespace mme
